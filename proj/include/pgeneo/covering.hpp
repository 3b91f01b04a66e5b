#ifndef PGENEO_COVERING_HPP
#define PGENEO_COVERING_HPP

#include "pgeneo/core.hpp"
#include "pgeneo/operator_pair.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pgeneo {

/// Internal ε-net: centers are elements of the covered collection.
struct EpsilonNet {
  double epsilon = 0.0;
  std::vector<std::size_t> centers;
  double covering_radius = 0.0;
  /// Per element, the position in `centers` of its nearest center (earliest on ties).
  std::vector<std::size_t> assignment;
};

using DistanceOracle = std::function<double(std::size_t, std::size_t)>;

/**
 * Farthest-point-first cover of {0..count-1}: start from element 0, then keep
 * adding the element farthest from the current centers (lowest index on ties)
 * until every element is within epsilon of a center.
 */
EpsilonNet greedy_net(std::size_t count, const DistanceOracle &distance, double epsilon);

template <typename T, typename Metric>
EpsilonNet greedy_net(std::span<const T> collection, Metric metric, double epsilon) {
  return greedy_net(
      collection.size(),
      [&](std::size_t i, std::size_t j) { return metric(collection[i], collection[j]); },
      epsilon);
}

/// Exhaustive max over elements of the distance to the nearest center.
double coverage_radius(const EpsilonNet &net, std::size_t count,
                       const DistanceOracle &distance);

/// Cover of X under D_X^Ω, plus a check that thinning Ω to an ε-net of itself
/// moves D_X^Ω by at most 2ε on every pair of points.
struct DomainCover {
  EpsilonNet net;
  EpsilonNet member_net; ///< ε-net of Ω under the uniform distance
  double stability_gap = 0.0;
  bool stability_ok = true;
};

DomainCover cover_domain(const MeasurementSpace &omega, double epsilon,
                         const Tolerances &tol = {});

/// Cover of a list of maps under D_Aut^Φ.
EpsilonNet cover_operations(std::span<const DomainMap> ops, const MeasurementSpace &phi,
                            double epsilon);

/// Same, after checking every map is a (Φ,Φ′)-operation of the triple.
EpsilonNet cover_operations(const PerceptionTriple &triple, double epsilon);

/// Cover of a finite family of certified P-GENEOs (shared triples and T) under D_P-GENEO.
EpsilonNet cover_operator_family(std::span<const OperatorPair> family, double epsilon,
                                 const Tolerances &tol = {});

} // namespace pgeneo

#endif
