#ifndef PGENEO_METRICS_HPP
#define PGENEO_METRICS_HPP

#include "pgeneo/core.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace pgeneo {

class OperatorPair;

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/**
 * Value of a sup-type pseudo-metric together with the place where the max is
 * attained: the first (member, point) in member-major order. `point` is
 * kNoIndex for metrics that do not range over points.
 */
struct MetricReport {
  double value = 0.0;
  std::size_t member = 0;
  std::size_t point = kNoIndex;
};

/// Tabulated operator: entry k is the image of member k of its source space.
using Tabulation = std::vector<Measurement>;

/// D_X^Ω(x1, x2) = max over ω of |ω(x1) − ω(x2)|.
MetricReport domain_pseudometric(const MeasurementSpace &omega, std::size_t x1,
                                 std::size_t x2);

/// D_Aut^Ω(s1, s2) = max over ω of ‖ωs1 − ωs2‖∞.
MetricReport aut_pseudometric(const MeasurementSpace &omega, const DomainMap &s1,
                              const DomainMap &s2);

/// D_Π((s1,t1),(s2,t2)) = D_Aut^Φ(s1,s2) + D_Aut^Φ′(t1,t2).
double pi_distance(const std::pair<DomainMap, DomainMap> &p1,
                   const std::pair<DomainMap, DomainMap> &p2, const MeasurementSpace &phi,
                   const MeasurementSpace &phi_prime);

/// D_NE^Ω(F1, F2) = max over ω of ‖F1(ω) − F2(ω)‖∞.
MetricReport operator_distance(const MeasurementSpace &omega, const Tabulation &f1,
                               const Tabulation &f2);

/// max{D_NE^Φ(F1,F2), D_NE^Φ′(F1′,F2′)}; both pairs must share triples and T.
double pgeneo_distance(const OperatorPair &p1, const OperatorPair &p2);

} // namespace pgeneo

#endif
