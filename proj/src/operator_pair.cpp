#include "pgeneo/operator_pair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace pgeneo {

namespace {

std::optional<std::size_t> find_op(const std::vector<DomainMap> &ops, const DomainMap &s) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].perm() == s.perm())
      return i;
  return std::nullopt;
}

void check_weights(std::span<const double> weights, const char *what) {
  if (weights.empty())
    throw InvalidArgument(std::string(what) + ": no weights given");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidArgument(std::string(what) + ": weights must be finite and nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kDefaultNumericTolerance)
    throw InvalidArgument(std::string(what) + ": weights must sum to 1");
}

double lipschitz_excess(const MeasurementSpace &domain_space, const Tabulation &images) {
  double excess = 0.0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const double out = sup_distance(images[i].values(), images[j].values());
      const double in =
          sup_distance(domain_space.member(i).values(), domain_space.member(j).values());
      excess = std::max(excess, out - in);
    }
  return excess;
}

void check_codomain(const Tabulation &images, const MeasurementSpace &space, bool primed,
                    std::vector<CodomainFailure> &out) {
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (space_membership(images[k], space))
      continue;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto &m : space.members())
      gap = std::min(gap, sup_distance(images[k].values(), m.values()));
    out.push_back({primed, k, gap});
  }
}

void require_parts(std::span<const OperatorPair> parts, const Tolerances &tol,
                   const char *what) {
  if (parts.empty())
    throw InvalidArgument(std::string(what) + ": no operators given");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      require_compatible(parts[0], parts[i], what);
    if (!certify(parts[i], tol).certified)
      throw PreconditionError(std::string(what) + ": operator " + std::to_string(i) +
                              " is not a certified P-GENEO");
  }
}

} // namespace

TransformationMap::TransformationMap(std::vector<DomainMap> source_ops,
                                     std::vector<DomainMap> target_ops,
                                     std::vector<std::size_t> assignment)
    : source_ops_(std::move(source_ops)), target_ops_(std::move(target_ops)),
      assignment_(std::move(assignment)) {
  if (assignment_.size() != source_ops_.size())
    throw InvalidArgument("transformation map must assign an image to every source op");
  for (std::size_t a : assignment_)
    if (a >= target_ops_.size())
      throw InvalidArgument("transformation map assigns a target op out of range");
  for (std::size_t i = 1; i < source_ops_.size(); ++i)
    require_same_domain(source_ops_[0].domain(), source_ops_[i].domain(),
                        "transformation map source");
  for (std::size_t i = 1; i < target_ops_.size(); ++i)
    require_same_domain(target_ops_[0].domain(), target_ops_[i].domain(),
                        "transformation map target");
}

TransformationMap TransformationMap::identity(std::vector<DomainMap> ops) {
  std::vector<std::size_t> assignment(ops.size());
  std::iota(assignment.begin(), assignment.end(), std::size_t{0});
  auto target = ops;
  return TransformationMap(std::move(ops), std::move(target), std::move(assignment));
}

bool TransformationMap::operator==(const TransformationMap &other) const {
  return source_ops_ == other.source_ops_ && target_ops_ == other.target_ops_ &&
         assignment_ == other.assignment_;
}

TransformationReport check_transformation_map(const TransformationMap &T) {
  TransformationReport report;
  const auto &S = T.source_ops();
  for (std::size_t s = 0; s < S.size(); ++s) {
    for (std::size_t t = 0; t < S.size(); ++t) {
      auto st = find_op(S, compose(S[s], S[t]));
      if (!st)
        continue;
      ++report.composable_pairs;
      if (T.image(*st).perm() != compose(T.image(s), T.image(t)).perm())
        report.violations.push_back({HomomorphismViolation::Kind::product, s, t});
    }
    auto inv = find_op(S, S[s].inverse());
    if (inv) {
      ++report.inverse_pairs;
      if (T.image(*inv).perm() != T.image(s).inverse().perm())
        report.violations.push_back({HomomorphismViolation::Kind::inverse, s, *inv});
    }
    if (S[s].is_identity())
      report.identity_preserved = T.image(s).is_identity();
  }
  report.ok = report.violations.empty();
  return report;
}

OperatorPair::OperatorPair(TriplePtr source, TriplePtr target, TransformationPtr T,
                           Tabulation F, Tabulation F_prime)
    : source_(std::move(source)), target_(std::move(target)), T_(std::move(T)),
      F_(std::move(F)), F_prime_(std::move(F_prime)) {
  if (!source_ || !target_ || !T_)
    throw InvalidArgument("operator pair requires source, target and T");
  if (F_.size() != source_->phi().size())
    throw InvalidArgument("F must tabulate an image for every member of " +
                          source_->phi().label());
  if (F_prime_.size() != source_->phi_prime().size())
    throw InvalidArgument("F' must tabulate an image for every member of " +
                          source_->phi_prime().label());
  for (const auto &img : F_)
    require_same_domain(img.domain(), target_->domain(), "image of F");
  for (const auto &img : F_prime_)
    require_same_domain(img.domain(), target_->domain(), "image of F'");
  if (T_->source_ops() != source_->ops())
    throw InvalidArgument("T must be defined on exactly the ops of the source triple");
  if (T_->target_ops() != target_->ops())
    throw InvalidArgument("T must take values in the ops of the target triple");
}

bool same_triple(const TriplePtr &a, const TriplePtr &b) {
  return a == b || (a && b && *a == *b);
}

bool same_transformation(const TransformationPtr &a, const TransformationPtr &b) {
  return a == b || (a && b && *a == *b);
}

void require_compatible(const OperatorPair &a, const OperatorPair &b, const char *what) {
  if (!same_triple(a.source_ptr(), b.source_ptr()) ||
      !same_triple(a.target_ptr(), b.target_ptr()))
    throw InvalidArgument(std::string(what) + ": operators act between different triples");
  if (!same_transformation(a.T_ptr(), b.T_ptr()))
    throw InvalidArgument(std::string(what) + ": operators are associated with different T");
}

Certificate certify(const OperatorPair &P, const Tolerances &tol) {
  Certificate c;
  c.numeric_tolerance = tol.numeric;
  const auto &phi = P.source().phi();
  const auto &phi_prime = P.source().phi_prime();
  const auto &S = P.source().ops();

  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t k = 0; k < S.size(); ++k) {
      auto j = space_membership(right_action(phi.member(i), S[k]), phi_prime);
      if (!j) {
        c.missing_translates.emplace_back(i, k);
        continue;
      }
      const auto expected = right_action(P.F()[i], P.T().image(k));
      const double r = sup_distance(P.F_prime()[*j].values(), expected.values());
      if (r > c.equivariance_residual) {
        c.equivariance_residual = r;
        c.residual_member = i;
        c.residual_op = k;
      }
    }
  }

  c.lipschitz_excess_F = lipschitz_excess(phi, P.F());
  c.lipschitz_excess_F_prime = lipschitz_excess(phi_prime, P.F_prime());

  check_codomain(P.F(), P.target().phi(), false, c.codomain_failures);
  check_codomain(P.F_prime(), P.target().phi_prime(), true, c.codomain_failures);
  c.codomain_ok = c.codomain_failures.empty();

  c.transformation = check_transformation_map(P.T());
  c.homomorphism_ok = c.transformation.ok;

  c.triples_ok = validate_perception_triple(P.source()).admissible &&
                 validate_perception_triple(P.target()).admissible;

  c.certified = c.missing_translates.empty() && c.equivariance_residual <= tol.numeric &&
                c.lipschitz_excess_F <= tol.numeric &&
                c.lipschitz_excess_F_prime <= tol.numeric && c.codomain_ok &&
                c.homomorphism_ok && c.triples_ok;
  return c;
}

Construction compose(const OperatorPair &P1, const OperatorPair &P2, const Tolerances &tol) {
  if (!same_triple(P1.target_ptr(), P2.source_ptr()))
    throw InvalidArgument("compose: target triple of the first operator is not the source "
                          "triple of the second");
  if (!certify(P1, tol).certified || !certify(P2, tol).certified)
    throw PreconditionError("compose: both operators must be certified P-GENEOs");

  auto through = [](const Tabulation &first, const MeasurementSpace &middle,
                    const Tabulation &second) {
    Tabulation out;
    out.reserve(first.size());
    for (const auto &img : first) {
      auto k = space_membership(img, middle);
      if (!k)
        throw std::logic_error("compose: certified image missing from intermediate space");
      out.push_back(second[*k]);
    }
    return out;
  };

  const auto &T1 = P1.T();
  const auto &T2 = P2.T();
  std::vector<std::size_t> assignment(T1.assignment().size());
  for (std::size_t k = 0; k < assignment.size(); ++k)
    assignment[k] = T2.assignment()[T1.assignment()[k]];
  auto T = std::make_shared<const TransformationMap>(T1.source_ops(), T2.target_ops(),
                                                     std::move(assignment));

  OperatorPair out(P1.source_ptr(), P2.target_ptr(), std::move(T),
                   through(P1.F(), P2.source().phi(), P2.F()),
                   through(P1.F_prime(), P2.source().phi_prime(), P2.F_prime()));
  auto cert = certify(out, tol);
  return {std::move(out), std::move(cert)};
}

Aggregator::Aggregator(Kind kind, std::size_t arity, std::vector<double> weights,
                       double exponent)
    : kind_(kind), arity_(arity), weights_(std::move(weights)), exponent_(exponent) {
  if (arity_ == 0)
    throw InvalidArgument("aggregator arity must be positive");
}

Aggregator Aggregator::maximum(std::size_t arity) { return {Kind::max, arity, {}, 1.0}; }

Aggregator Aggregator::minimum(std::size_t arity) { return {Kind::min, arity, {}, 1.0}; }

Aggregator Aggregator::convex(std::vector<double> weights) {
  check_weights(weights, "convex aggregator");
  const std::size_t n = weights.size();
  return {Kind::convex_combination, n, std::move(weights), 1.0};
}

Aggregator Aggregator::power_mean(double p, std::vector<double> weights) {
  if (!std::isfinite(p) || p < 1.0)
    throw InvalidArgument("power mean exponent must be a finite p >= 1");
  check_weights(weights, "power mean aggregator");
  const std::size_t n = weights.size();
  return {Kind::power_mean, n, std::move(weights), p};
}

std::string Aggregator::describe() const {
  std::ostringstream os;
  switch (kind_) {
  case Kind::max:
    os << "max";
    break;
  case Kind::min:
    os << "min";
    break;
  case Kind::convex_combination:
    os << "convex";
    break;
  case Kind::power_mean:
    os << "power_mean(p=" << exponent_ << ")";
    break;
  }
  os << "/" << arity_;
  return os.str();
}

double Aggregator::operator()(std::span<const double> u) const {
  if (u.size() != arity_)
    throw InvalidArgument("aggregator expects " + std::to_string(arity_) + " inputs");
  switch (kind_) {
  case Kind::max:
    return *std::max_element(u.begin(), u.end());
  case Kind::min:
    return *std::min_element(u.begin(), u.end());
  case Kind::convex_combination: {
    double acc = 0.0;
    for (std::size_t i = 0; i < arity_; ++i)
      acc += weights_[i] * u[i];
    return acc;
  }
  case Kind::power_mean: {
    double acc = 0.0;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (u[i] < 0.0)
        throw InvalidArgument("power mean is defined on nonnegative inputs only");
      acc += weights_[i] * std::pow(u[i], exponent_);
    }
    return std::pow(acc, 1.0 / exponent_);
  }
  }
  return 0.0;
}

AuditReport check_aggregator_nonexpansive(const Aggregator &L, std::size_t trials,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double lo = L.requires_nonnegative() ? 0.0 : -10.0;
  std::uniform_real_distribution<double> value(lo, 10.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> scale_exp(-6.0, 0.0);

  AuditReport report;
  report.trials = trials;
  report.max_excess = trials == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  std::vector<double> u(L.arity()), v(L.arity());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (auto &x : u)
      x = value(rng);
    if (trial % 2 == 0) {
      for (auto &x : v)
        x = value(rng);
    } else {
      // local perturbation around u
      const double scale = std::pow(10.0, scale_exp(rng));
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::max(lo, u[i] + scale * unit(rng));
    }
    const double excess = std::abs(L(u) - L(v)) - sup_distance(u, v);
    report.max_excess = std::max(report.max_excess, excess);
  }
  return report;
}

Construction combine(const Aggregator &L, std::span<const OperatorPair> parts,
                     const CombineOptions &options) {
  require_parts(parts, options.tol, "combine");
  if (parts.size() != L.arity())
    throw InvalidArgument("combine: aggregator arity does not match the number of operators");
  const auto audit = check_aggregator_nonexpansive(L, options.audit_trials, options.seed);
  if (audit.max_excess > options.tol.numeric)
    throw PreconditionError("combine: aggregator " + L.describe() +
                            " failed the non-expansiveness audit");

  auto fuse = [&](auto select) {
    const Tabulation &first = select(parts[0]);
    Tabulation out;
    out.reserve(first.size());
    std::vector<double> column(parts.size());
    for (std::size_t k = 0; k < first.size(); ++k) {
      std::vector<double> values(first[k].size());
      for (std::size_t y = 0; y < values.size(); ++y) {
        for (std::size_t i = 0; i < parts.size(); ++i)
          column[i] = select(parts[i])[k][y];
        values[y] = L(column);
      }
      out.emplace_back(first[k].domain(), std::move(values));
    }
    return out;
  };

  OperatorPair out(parts[0].source_ptr(), parts[0].target_ptr(), parts[0].T_ptr(),
                   fuse([](const OperatorPair &p) -> const Tabulation & { return p.F(); }),
                   fuse([](const OperatorPair &p) -> const Tabulation & { return p.F_prime(); }));
  auto cert = certify(out, options.tol);
  return {std::move(out), std::move(cert)};
}

Construction convex_combine(std::span<const OperatorPair> parts,
                            std::span<const double> weights, const Tolerances &tol) {
  check_weights(weights, "convex_combine");
  if (weights.size() != parts.size())
    throw InvalidArgument("convex_combine: one weight per operator is required");
  require_parts(parts, tol, "convex_combine");

  auto sum = [&](auto select) {
    const Tabulation &first = select(parts[0]);
    Tabulation out;
    out.reserve(first.size());
    for (std::size_t k = 0; k < first.size(); ++k) {
      std::vector<double> values(first[k].size(), 0.0);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto src = select(parts[i])[k].values();
        for (std::size_t y = 0; y < values.size(); ++y)
          values[y] += weights[i] * src[y];
      }
      out.emplace_back(first[k].domain(), std::move(values));
    }
    return out;
  };

  auto F = sum([](const OperatorPair &p) -> const Tabulation & { return p.F(); });
  auto F_prime = sum([](const OperatorPair &p) -> const Tabulation & { return p.F_prime(); });

  std::vector<CodomainFailure> missing;
  check_codomain(F, parts[0].target().phi(), false, missing);
  check_codomain(F_prime, parts[0].target().phi_prime(), true, missing);
  if (!missing.empty()) {
    const auto &f = missing.front();
    throw PreconditionError("convex_combine: weighted image of member " +
                            std::to_string(f.member) + " is not in " +
                            (f.primed ? parts[0].target().phi_prime().label()
                                      : parts[0].target().phi().label()) +
                            " (" + std::to_string(missing.size()) + " missing in total)");
  }

  OperatorPair out(parts[0].source_ptr(), parts[0].target_ptr(), parts[0].T_ptr(),
                   std::move(F), std::move(F_prime));
  auto cert = certify(out, tol);
  return {std::move(out), std::move(cert)};
}

RestrictionReport check_restriction(const OperatorPair &P) {
  RestrictionReport r;
  const auto &phi = P.source().phi();
  const auto &phi_prime = P.source().phi_prime();
  const auto &S = P.source().ops();
  if (std::none_of(S.begin(), S.end(), [](const DomainMap &s) { return s.is_identity(); })) {
    r.reason = "identity is not in S";
    return r;
  }
  std::vector<std::size_t> index(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    auto j = space_membership(phi.member(i), phi_prime);
    if (!j) {
      r.reason = "member " + std::to_string(i) + " of " + phi.label() + " is not in " +
                 phi_prime.label();
      return r;
    }
    index[i] = *j;
  }
  r.applicable = true;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double gap = sup_distance(P.F_prime()[index[i]].values(), P.F()[i].values());
    if (gap > r.max_gap) {
      r.max_gap = gap;
      r.witness = i;
    }
  }
  return r;
}

} // namespace pgeneo
