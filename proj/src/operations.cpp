#include "pgeneo/operations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgeneo {

namespace {

void record(ViolationReport &r, double violation, std::vector<std::size_t> where) {
  ++r.checked;
  if (r.witness.empty() || violation > r.max_violation) {
    r.max_violation = violation;
    r.witness = std::move(where);
  }
}

void require_admissible(const DomainMap &s, const MeasurementSpace &phi,
                        const MeasurementSpace &phi_prime, const char *what) {
  if (!is_operation(s, phi, phi_prime).admissible)
    throw PreconditionError(std::string(what) + ": map is not a (" + phi.label() + "," +
                            phi_prime.label() + ")-operation");
}

} // namespace

AdmissibilityReport is_operation(const DomainMap &s, const MeasurementSpace &phi,
                                 const MeasurementSpace &phi_prime) {
  require_same_domain(phi.domain(), phi_prime.domain(), "is_operation");
  require_same_domain(phi.domain(), s.domain(), "is_operation");
  AdmissibilityReport report;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    Measurement moved = right_action(phi.member(k), s);
    if (space_membership(moved, phi_prime))
      continue;
    AdmissibilityFailure f{0, k, moved, std::nullopt, std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < phi_prime.size(); ++j) {
      const double d = sup_distance(moved.values(), phi_prime.member(j).values());
      if (!f.nearest || d < f.gap) {
        f.nearest = j;
        f.gap = d;
      }
    }
    report.failures.push_back(std::move(f));
  }
  report.admissible = report.failures.empty();
  return report;
}

AdmissibilityReport validate_perception_triple(const PerceptionTriple &triple) {
  AdmissibilityReport report;
  for (std::size_t i = 0; i < triple.ops().size(); ++i) {
    auto r = is_operation(triple.ops()[i], triple.phi(), triple.phi_prime());
    for (auto &f : r.failures) {
      f.op = i;
      report.failures.push_back(std::move(f));
    }
  }
  report.admissible = report.failures.empty();
  return report;
}

CompositionRoutes composition_routes(const DomainMap &s, const DomainMap &t,
                                     const MeasurementSpace &phi,
                                     const MeasurementSpace &phi_prime) {
  require_admissible(s, phi, phi_prime, "compose_admissible");
  require_admissible(t, phi, phi_prime, "compose_admissible");
  CompositionRoutes routes;
  routes.direct = is_operation(compose(s, t), phi, phi_prime).admissible;
  routes.translated = is_operation(t, translate_space(phi, s), phi_prime).admissible;
  return routes;
}

bool compose_admissible(const DomainMap &s, const DomainMap &t, const MeasurementSpace &phi,
                        const MeasurementSpace &phi_prime) {
  const auto routes = composition_routes(s, t, phi, phi_prime);
  if (!routes.agree())
    throw std::logic_error("compose_admissible: st and Phi s routes disagree");
  return routes.direct;
}

PiSet build_pi(std::span<const DomainMap> candidates, const MeasurementSpace &phi,
               const MeasurementSpace &phi_prime) {
  for (const auto &c : candidates)
    require_admissible(c, phi, phi_prime, "build_pi");
  PiSet pi;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if (is_operation(compose(candidates[i], candidates[j]), phi, phi_prime).admissible)
        pi.pairs.emplace_back(i, j);
  return pi;
}

UpsilonSet build_upsilon(std::span<const DomainMap> candidates, const MeasurementSpace &phi,
                         const MeasurementSpace &phi_prime) {
  for (const auto &c : candidates)
    require_admissible(c, phi, phi_prime, "build_upsilon");
  UpsilonSet upsilon;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (is_operation(candidates[i].inverse(), phi, phi_prime).admissible)
      upsilon.maps.push_back(i);
  return upsilon;
}

NonExpansiveReport check_operation_nonexpansive(const DomainMap &s,
                                                const MeasurementSpace &phi,
                                                const MeasurementSpace &phi_prime) {
  NonExpansiveReport out;
  out.admissible = is_operation(s, phi, phi_prime).admissible;
  const std::size_t n = phi.domain()->size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double lhs = domain_pseudometric(phi, s(a), s(b)).value;
      const double rhs = domain_pseudometric(phi_prime, a, b).value;
      record(out.scan, lhs - rhs, {a, b});
    }
  }
  return out;
}

ViolationReport check_action_continuity(const MeasurementSpace &phi,
                                        const MeasurementSpace &phi_prime,
                                        std::span<const DomainMap> ops) {
  for (const auto &s : ops)
    require_admissible(s, phi, phi_prime, "check_action_continuity");
  const std::size_t m = phi.size();
  const std::size_t k = ops.size();
  std::vector<double> aut(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      aut[i * k + j] = aut_pseudometric(phi, ops[i], ops[j]).value;
  std::vector<double> gap(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      gap[i * m + j] = uniform_distance(phi.member(i), phi.member(j));
  std::vector<Measurement> moved;
  moved.reserve(m * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < k; ++t)
      moved.push_back(right_action(phi.member(i), ops[t]));

  ViolationReport r;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t s = 0; s < k; ++s) {
          const double lhs = sup_distance(moved[a * k + t].values(), moved[b * k + s].values());
          record(r, lhs - (aut[t * k + s] + gap[a * m + b]), {a, b, t, s});
        }
  return r;
}

ViolationReport check_composition_nonexpansive(const PiSet &pi,
                                               std::span<const DomainMap> candidates,
                                               const MeasurementSpace &phi,
                                               const MeasurementSpace &phi_prime) {
  ViolationReport r;
  const std::size_t n = pi.pairs.size();
  std::vector<DomainMap> products;
  products.reserve(n);
  for (const auto &[s, t] : pi.pairs)
    products.push_back(compose(candidates[s], candidates[t]));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto &[s1, t1] = pi.pairs[i];
      const auto &[s2, t2] = pi.pairs[j];
      const double lhs = aut_pseudometric(phi, products[i], products[j]).value;
      const double rhs = pi_distance({candidates[s1], candidates[t1]},
                                     {candidates[s2], candidates[t2]}, phi, phi_prime);
      record(r, lhs - rhs, {i, j});
    }
  }
  return r;
}

ViolationReport check_inversion_nonexpansive(const UpsilonSet &upsilon,
                                             std::span<const DomainMap> candidates,
                                             const MeasurementSpace &phi,
                                             const MeasurementSpace &phi_prime) {
  ViolationReport r;
  const std::size_t n = upsilon.maps.size();
  std::vector<DomainMap> inverses;
  inverses.reserve(n);
  for (std::size_t idx : upsilon.maps)
    inverses.push_back(candidates[idx].inverse());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double lhs = aut_pseudometric(phi, inverses[i], inverses[j]).value;
      const double rhs = aut_pseudometric(phi_prime, candidates[upsilon.maps[i]],
                                          candidates[upsilon.maps[j]])
                             .value;
      record(r, lhs - rhs, {i, j});
    }
  }
  return r;
}

} // namespace pgeneo
