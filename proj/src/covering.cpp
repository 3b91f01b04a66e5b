#include "pgeneo/covering.hpp"

#include "pgeneo/metrics.hpp"
#include "pgeneo/operations.hpp"

#include <algorithm>
#include <cmath>

namespace pgeneo {

namespace {

constexpr double kSpotCheckSlack = 1e-12;

void spot_check_metric(std::size_t count, const DistanceOracle &distance) {
  const std::size_t probe = std::min<std::size_t>(count, 8);
  for (std::size_t i = 0; i < probe; ++i) {
    if (distance(i, i) != 0.0)
      throw InvalidArgument("greedy_net: distance oracle gives d(x, x) != 0");
    for (std::size_t j = i + 1; j < probe; ++j) {
      const double a = distance(i, j);
      const double b = distance(j, i);
      if (!(a >= 0.0) || std::abs(a - b) > kSpotCheckSlack)
        throw InvalidArgument("greedy_net: distance oracle is not a symmetric nonnegative map");
    }
  }
}

std::vector<double> distance_matrix(std::size_t count, const DistanceOracle &distance) {
  std::vector<double> d(count * count, 0.0);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      d[i * count + j] = d[j * count + i] = distance(i, j);
  return d;
}

} // namespace

EpsilonNet greedy_net(std::size_t count, const DistanceOracle &distance, double epsilon) {
  if (count == 0)
    throw InvalidArgument("greedy_net: empty collection");
  if (!(epsilon > 0.0))
    throw InvalidArgument("greedy_net: epsilon must be positive");
  spot_check_metric(count, distance);

  EpsilonNet net;
  net.epsilon = epsilon;
  net.centers.push_back(0);
  net.assignment.assign(count, 0);
  std::vector<double> nearest(count);
  for (std::size_t i = 0; i < count; ++i)
    nearest[i] = distance(i, 0);

  for (;;) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < count; ++i)
      if (nearest[i] > nearest[far])
        far = i;
    if (nearest[far] <= epsilon) {
      net.covering_radius = nearest[far];
      break;
    }
    const std::size_t slot = net.centers.size();
    net.centers.push_back(far);
    for (std::size_t i = 0; i < count; ++i) {
      const double d = distance(i, far);
      if (d < nearest[i]) {
        nearest[i] = d;
        net.assignment[i] = slot;
      }
    }
  }
  return net;
}

double coverage_radius(const EpsilonNet &net, std::size_t count,
                       const DistanceOracle &distance) {
  double radius = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double best = distance(i, net.centers.front());
    for (std::size_t c : net.centers)
      best = std::min(best, distance(i, c));
    radius = std::max(radius, best);
  }
  return radius;
}

DomainCover cover_domain(const MeasurementSpace &omega, double epsilon, const Tolerances &tol) {
  if (omega.empty())
    throw EmptySpace("cover_domain: measurement space '" + omega.label() + "' is empty");
  const std::size_t n = omega.domain()->size();
  DomainCover out;

  const auto d_full = distance_matrix(
      n, [&](std::size_t a, std::size_t b) { return domain_pseudometric(omega, a, b).value; });
  out.net = greedy_net(n, [&](std::size_t a, std::size_t b) { return d_full[a * n + b]; },
                       epsilon);

  const auto &members = omega.members();
  out.member_net = greedy_net(std::span<const Measurement>(members), uniform_distance, epsilon);
  std::vector<Measurement> kept;
  for (std::size_t c : out.member_net.centers)
    kept.push_back(members[c]);
  MeasurementSpace thinned(omega.domain(), std::move(kept), omega.label() + "_eps",
                           omega.membership_tolerance());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.stability_gap = std::max(
          out.stability_gap, std::abs(d_full[a * n + b] - domain_pseudometric(thinned, a, b).value));
  out.stability_ok = out.stability_gap <= 2.0 * epsilon + tol.numeric;
  return out;
}

EpsilonNet cover_operations(std::span<const DomainMap> ops, const MeasurementSpace &phi,
                            double epsilon) {
  if (ops.empty())
    throw InvalidArgument("greedy_net: empty collection");
  const std::size_t k = ops.size();
  const auto d = distance_matrix(k, [&](std::size_t a, std::size_t b) {
    return aut_pseudometric(phi, ops[a], ops[b]).value;
  });
  return greedy_net(k, [&](std::size_t a, std::size_t b) { return d[a * k + b]; }, epsilon);
}

EpsilonNet cover_operations(const PerceptionTriple &triple, double epsilon) {
  if (!validate_perception_triple(triple).admissible)
    throw PreconditionError("cover_operations: triple contains non-admissible operations");
  return cover_operations(triple.ops(), triple.phi(), epsilon);
}

EpsilonNet cover_operator_family(std::span<const OperatorPair> family, double epsilon,
                                 const Tolerances &tol) {
  if (family.empty())
    throw InvalidArgument("greedy_net: empty collection");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i > 0)
      require_compatible(family[0], family[i], "cover_operator_family");
    if (!certify(family[i], tol).certified)
      throw PreconditionError("cover_operator_family: member " + std::to_string(i) +
                              " is not a certified P-GENEO");
  }
  const std::size_t k = family.size();
  const auto d = distance_matrix(k, [&](std::size_t a, std::size_t b) {
    return pgeneo_distance(family[a], family[b]);
  });
  return greedy_net(k, [&](std::size_t a, std::size_t b) { return d[a * k + b]; }, epsilon);
}

} // namespace pgeneo
