#ifndef PGENEO_OPERATOR_PAIR_HPP
#define PGENEO_OPERATOR_PAIR_HPP

#include "pgeneo/core.hpp"
#include "pgeneo/metrics.hpp"
#include "pgeneo/operations.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pgeneo {

/**
 * T: S → Q stored extensionally. assignment[k] is the index in target_ops of
 * the image of source_ops[k].
 */
class TransformationMap {
public:
  TransformationMap(std::vector<DomainMap> source_ops, std::vector<DomainMap> target_ops,
                    std::vector<std::size_t> assignment);

  /// T = id_S.
  static TransformationMap identity(std::vector<DomainMap> ops);

  const std::vector<DomainMap> &source_ops() const { return source_ops_; }
  const std::vector<DomainMap> &target_ops() const { return target_ops_; }
  const std::vector<std::size_t> &assignment() const { return assignment_; }
  const DomainMap &image(std::size_t k) const { return target_ops_[assignment_.at(k)]; }

  bool operator==(const TransformationMap &other) const;

private:
  std::vector<DomainMap> source_ops_;
  std::vector<DomainMap> target_ops_;
  std::vector<std::size_t> assignment_;
};

struct HomomorphismViolation {
  enum class Kind { product, inverse };
  Kind kind = Kind::product;
  std::size_t s = 0;
  std::size_t t = 0; ///< second factor, or the index of s⁻¹ in S for inverse violations
};

struct TransformationReport {
  bool ok = true;
  std::vector<HomomorphismViolation> violations;
  std::size_t composable_pairs = 0;
  std::size_t inverse_pairs = 0;
  /// Set when id_X ∈ S: whether T(id_X) = id_Y.
  std::optional<bool> identity_preserved;
};

/// Exhaustive scan of T(st) = T(s)T(t) for st ∈ S and T(s⁻¹) = T(s)⁻¹ for s⁻¹ ∈ S.
TransformationReport check_transformation_map(const TransformationMap &T);

using TriplePtr = std::shared_ptr<const PerceptionTriple>;
using TransformationPtr = std::shared_ptr<const TransformationMap>;

/**
 * A candidate P-GENEO (F, F′, T) from (Φ,Φ′,S) to (Ψ,Ψ′,Q). F and F′ are
 * tabulated over the members of Φ and Φ′; images live on the domain of the
 * target triple but need not belong to Ψ, Ψ′ (certify decides that).
 */
class OperatorPair {
public:
  OperatorPair(TriplePtr source, TriplePtr target, TransformationPtr T, Tabulation F,
               Tabulation F_prime);

  const PerceptionTriple &source() const { return *source_; }
  const PerceptionTriple &target() const { return *target_; }
  const TriplePtr &source_ptr() const { return source_; }
  const TriplePtr &target_ptr() const { return target_; }
  const TransformationMap &T() const { return *T_; }
  const TransformationPtr &T_ptr() const { return T_; }
  const Tabulation &F() const { return F_; }
  const Tabulation &F_prime() const { return F_prime_; }

private:
  TriplePtr source_;
  TriplePtr target_;
  TransformationPtr T_;
  Tabulation F_;
  Tabulation F_prime_;
};

bool same_triple(const TriplePtr &a, const TriplePtr &b);
bool same_transformation(const TransformationPtr &a, const TransformationPtr &b);
/// Throws InvalidArgument unless both pairs share source, target and T.
void require_compatible(const OperatorPair &a, const OperatorPair &b, const char *what);

struct CodomainFailure {
  bool primed = false; ///< false: F(φ) ∉ Ψ; true: F′(φ′) ∉ Ψ′
  std::size_t member = 0;
  double gap = 0.0; ///< sup distance to the nearest member (infinite if the space is empty)
};

/// Machine-checkable verdict on whether one OperatorPair is a P-GEO / P-GENEO.
struct Certificate {
  double equivariance_residual = 0.0;
  std::size_t residual_member = 0;
  std::size_t residual_op = 0;
  /// (member, op) with φs ∉ Φ′, where F′(φs) is undefined.
  std::vector<std::pair<std::size_t, std::size_t>> missing_translates;

  double lipschitz_excess_F = 0.0;
  double lipschitz_excess_F_prime = 0.0;

  bool codomain_ok = true;
  std::vector<CodomainFailure> codomain_failures;

  bool homomorphism_ok = true;
  TransformationReport transformation;

  bool triples_ok = true; ///< both S and Q are admissible for their triples

  double numeric_tolerance = kDefaultNumericTolerance;
  bool certified = false;
};

Certificate certify(const OperatorPair &P, const Tolerances &tol = {});

/// A constructed pair together with its re-verification.
struct Construction {
  OperatorPair pair;
  Certificate certificate;
};

/// (F2∘F1, F2′∘F1′, T2∘T1). Requires P1's target triple to be P2's source and both certified.
Construction compose(const OperatorPair &P1, const OperatorPair &P2, const Tolerances &tol = {});

/**
 * A map L: Rⁿ → R used pointwise to fuse n operators. Every kind is 1-Lipschitz
 * for the max norm; the audit below checks that on samples.
 */
class Aggregator {
public:
  enum class Kind { max, min, convex_combination, power_mean };

  static Aggregator maximum(std::size_t arity);
  static Aggregator minimum(std::size_t arity);
  static Aggregator convex(std::vector<double> weights);
  /// (Σ wᵢ uᵢᵖ)^(1/p), p ≥ 1, for nonnegative inputs.
  static Aggregator power_mean(double p, std::vector<double> weights);

  Kind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  const std::vector<double> &weights() const { return weights_; }
  double exponent() const { return exponent_; }
  bool requires_nonnegative() const { return kind_ == Kind::power_mean; }
  std::string describe() const;

  double operator()(std::span<const double> u) const;

private:
  Aggregator(Kind kind, std::size_t arity, std::vector<double> weights, double exponent);

  Kind kind_;
  std::size_t arity_;
  std::vector<double> weights_;
  double exponent_ = 1.0;
};

struct AuditReport {
  double max_excess = 0.0; ///< max of |L(u) − L(v)| − ‖u − v‖∞
  std::size_t trials = 0;
};

AuditReport check_aggregator_nonexpansive(const Aggregator &L, std::size_t trials,
                                          std::uint64_t seed = 0);

struct CombineOptions {
  std::size_t audit_trials = 20000;
  std::uint64_t seed = 0;
  Tolerances tol;
};

/**
 * (L*(F1..Fn), L*(F1′..Fn′)). Parts must be certified and share triples and T.
 * When the images leave Ψ or Ψ′ the result comes back uncertified, with the
 * offending members listed in certificate.codomain_failures.
 */
Construction combine(const Aggregator &L, std::span<const OperatorPair> parts,
                     const CombineOptions &options = {});

/// Σ aᵢ(Fᵢ, Fᵢ′). Throws PreconditionError if any weighted image is missing from Ψ or Ψ′.
Construction convex_combine(std::span<const OperatorPair> parts,
                            std::span<const double> weights, const Tolerances &tol = {});

struct RestrictionReport {
  bool applicable = false;
  std::string reason; ///< why the check does not apply, when it does not
  double max_gap = 0.0;
  std::size_t witness = 0; ///< member of Φ attaining max_gap
};

/// max over φ ∈ Φ of ‖F′(φ) − F(φ)‖∞, defined when id_X ∈ S and Φ ⊆ Φ′.
RestrictionReport check_restriction(const OperatorPair &P);

} // namespace pgeneo

#endif
