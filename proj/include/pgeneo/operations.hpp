#ifndef PGENEO_OPERATIONS_HPP
#define PGENEO_OPERATIONS_HPP

#include "pgeneo/core.hpp"
#include "pgeneo/metrics.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pgeneo {

/// A member φ of Φ whose translate φs has no counterpart in Φ′.
struct AdmissibilityFailure {
  std::size_t op = 0; ///< index of s in the triple's op list (0 for single-map checks)
  std::size_t member = 0;
  Measurement composed;
  std::optional<std::size_t> nearest; ///< closest member of Φ′, if Φ′ is nonempty
  double gap = 0.0;                   ///< sup distance to `nearest`
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<AdmissibilityFailure> failures;
};

/// Is s a (Φ,Φ′)-operation, i.e. φs ∈ Φ′ for every φ ∈ Φ?
AdmissibilityReport is_operation(const DomainMap &s, const MeasurementSpace &phi,
                                 const MeasurementSpace &phi_prime);

/// Runs is_operation on every map of the triple; an empty op list is admissible.
AdmissibilityReport validate_perception_triple(const PerceptionTriple &triple);

/// The two routes for deciding whether st is a (Φ,Φ′)-operation.
struct CompositionRoutes {
  bool direct = false;     ///< st ∈ Aut_{Φ,Φ′}
  bool translated = false; ///< t ∈ Aut_{Φs,Φ′}
  bool agree() const { return direct == translated; }
};

/// Requires s and t to be admissible; computes both routes without comparing them.
CompositionRoutes composition_routes(const DomainMap &s, const DomainMap &t,
                                     const MeasurementSpace &phi,
                                     const MeasurementSpace &phi_prime);

/// Whether st is admissible. Throws std::logic_error if the two routes disagree.
bool compose_admissible(const DomainMap &s, const DomainMap &t, const MeasurementSpace &phi,
                        const MeasurementSpace &phi_prime);

/// Ordered pairs (s, t) of candidate indices with s, t and st admissible.
struct PiSet {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Candidate indices s with both s and s⁻¹ admissible.
struct UpsilonSet {
  std::vector<std::size_t> maps;
};

PiSet build_pi(std::span<const DomainMap> candidates, const MeasurementSpace &phi,
               const MeasurementSpace &phi_prime);
UpsilonSet build_upsilon(std::span<const DomainMap> candidates, const MeasurementSpace &phi,
                         const MeasurementSpace &phi_prime);

/// Largest value of lhs − rhs over a scanned inequality lhs ≤ rhs, with its location.
/// Indices are the free variables of the particular check, in declaration order.
struct ViolationReport {
  double max_violation = 0.0;
  std::size_t checked = 0;
  std::vector<std::size_t> witness;
};

/**
 * Scans D_X^Φ(s(x1), s(x2)) ≤ D_X^Φ′(x1, x2) over all point pairs. Admissible maps
 * must satisfy it; non-admissible maps are accepted so they can serve as
 * negative controls.
 */
struct NonExpansiveReport {
  bool admissible = false;
  ViolationReport scan;
};
NonExpansiveReport check_operation_nonexpansive(const DomainMap &s,
                                                const MeasurementSpace &phi,
                                                const MeasurementSpace &phi_prime);

/// ‖φt − φ̄s‖∞ ≤ D_Aut^Φ(t,s) + ‖φ − φ̄‖∞ over all (φ, φ̄, t, s). Witness is (φ, φ̄, t, s).
ViolationReport check_action_continuity(const MeasurementSpace &phi,
                                        const MeasurementSpace &phi_prime,
                                        std::span<const DomainMap> ops);

/// D_Aut^Φ(s1t1, s2t2) ≤ D_Π((s1,t1),(s2,t2)) over all pairs of Π. Witness is two Π indices.
ViolationReport check_composition_nonexpansive(const PiSet &pi,
                                               std::span<const DomainMap> candidates,
                                               const MeasurementSpace &phi,
                                               const MeasurementSpace &phi_prime);

/// D_Aut^Φ(s1⁻¹, s2⁻¹) ≤ D_Aut^Φ′(s1, s2) over all pairs of Υ. Witness is two Υ indices.
ViolationReport check_inversion_nonexpansive(const UpsilonSet &upsilon,
                                             std::span<const DomainMap> candidates,
                                             const MeasurementSpace &phi,
                                             const MeasurementSpace &phi_prime);

} // namespace pgeneo

#endif
