#include "pgeneo/metrics.hpp"

#include "pgeneo/operator_pair.hpp"

#include <algorithm>
#include <cmath>

namespace pgeneo {

namespace {

void require_nonempty(const MeasurementSpace &omega, const char *what) {
  if (omega.empty())
    throw EmptySpace(std::string(what) + ": measurement space '" + omega.label() +
                     "' is empty");
}

} // namespace

MetricReport domain_pseudometric(const MeasurementSpace &omega, std::size_t x1,
                                 std::size_t x2) {
  require_nonempty(omega, "domain_pseudometric");
  const std::size_t n = omega.domain()->size();
  if (x1 >= n || x2 >= n)
    throw InvalidArgument("domain_pseudometric: point index out of range");
  MetricReport r;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const auto &w = omega.member(k);
    const double d = std::abs(w[x1] - w[x2]);
    if (d > r.value) {
      r.value = d;
      r.member = k;
    }
  }
  return r;
}

MetricReport aut_pseudometric(const MeasurementSpace &omega, const DomainMap &s1,
                              const DomainMap &s2) {
  require_nonempty(omega, "aut_pseudometric");
  require_same_domain(omega.domain(), s1.domain(), "aut_pseudometric");
  require_same_domain(omega.domain(), s2.domain(), "aut_pseudometric");
  MetricReport r;
  r.point = 0;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const auto &w = omega.member(k);
    for (std::size_t x = 0; x < w.size(); ++x) {
      const double d = std::abs(w[s1(x)] - w[s2(x)]);
      if (d > r.value) {
        r.value = d;
        r.member = k;
        r.point = x;
      }
    }
  }
  return r;
}

double pi_distance(const std::pair<DomainMap, DomainMap> &p1,
                   const std::pair<DomainMap, DomainMap> &p2, const MeasurementSpace &phi,
                   const MeasurementSpace &phi_prime) {
  require_same_domain(phi.domain(), phi_prime.domain(), "pi_distance");
  return aut_pseudometric(phi, p1.first, p2.first).value +
         aut_pseudometric(phi_prime, p1.second, p2.second).value;
}

MetricReport operator_distance(const MeasurementSpace &omega, const Tabulation &f1,
                               const Tabulation &f2) {
  require_nonempty(omega, "operator_distance");
  if (f1.size() != omega.size() || f2.size() != omega.size())
    throw InvalidArgument("operator_distance: tabulation does not cover every member of '" +
                          omega.label() + "'");
  MetricReport r;
  r.point = 0;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    require_same_domain(f1[k].domain(), f2[k].domain(), "operator_distance");
    const auto a = f1[k].values();
    const auto b = f2[k].values();
    for (std::size_t y = 0; y < a.size(); ++y) {
      const double d = std::abs(a[y] - b[y]);
      if (d > r.value) {
        r.value = d;
        r.member = k;
        r.point = y;
      }
    }
  }
  return r;
}

double pgeneo_distance(const OperatorPair &p1, const OperatorPair &p2) {
  require_compatible(p1, p2, "pgeneo_distance");
  const auto &source = p1.source();
  return std::max(operator_distance(source.phi(), p1.F(), p2.F()).value,
                  operator_distance(source.phi_prime(), p1.F_prime(), p2.F_prime()).value);
}

} // namespace pgeneo
