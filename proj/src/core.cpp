#include "pgeneo/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace pgeneo {

FiniteDomain::FiniteDomain(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty())
    throw InvalidArgument("finite domain must contain at least one point");
  std::unordered_set<std::string> seen;
  for (const auto &l : labels_)
    if (!seen.insert(l).second)
      throw InvalidArgument("duplicate point label '" + l + "'");
}

std::shared_ptr<const FiniteDomain> FiniteDomain::indexed(std::size_t n,
                                                          const std::string &prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(prefix + std::to_string(i));
  return make(std::move(labels));
}

std::shared_ptr<const FiniteDomain> FiniteDomain::make(std::vector<std::string> labels) {
  return std::make_shared<const FiniteDomain>(std::move(labels));
}

std::optional<std::size_t> FiniteDomain::index_of(const std::string &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

bool same_domain(const DomainPtr &a, const DomainPtr &b) {
  if (a == b)
    return true;
  if (!a || !b)
    return false;
  return *a == *b;
}

void require_same_domain(const DomainPtr &a, const DomainPtr &b, const char *what) {
  if (!same_domain(a, b))
    throw DomainMismatch(std::string(what) + ": operands live on different domains");
}

Measurement::Measurement(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_)
    throw InvalidArgument("measurement without a domain");
  if (values_.size() != domain_->size())
    throw InvalidArgument("measurement has " + std::to_string(values_.size()) +
                          " values, domain has " + std::to_string(domain_->size()) +
                          " points");
  for (double v : values_)
    if (!std::isfinite(v))
      throw InvalidArgument("measurement values must be finite");
}

Measurement Measurement::constant(DomainPtr domain, double value) {
  const std::size_t n = domain ? domain->size() : 0;
  return Measurement(std::move(domain), std::vector<double>(n, value));
}

bool Measurement::operator==(const Measurement &other) const {
  return same_domain(domain_, other.domain_) && values_ == other.values_;
}

MeasurementSpace::MeasurementSpace(DomainPtr domain, std::vector<Measurement> members,
                                   std::string label, double membership_tolerance)
    : domain_(std::move(domain)), label_(std::move(label)), tolerance_(membership_tolerance) {
  if (!domain_)
    throw InvalidArgument("measurement space without a domain");
  if (!(tolerance_ >= 0.0))
    throw InvalidArgument("membership tolerance must be nonnegative");
  members_.reserve(members.size());
  for (auto &m : members) {
    require_same_domain(domain_, m.domain(), "measurement space member");
    bool duplicate = false;
    for (const auto &kept : members_) {
      if (sup_distance(kept.values(), m.values()) <= tolerance_) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate)
      members_.push_back(std::move(m));
  }
}

bool MeasurementSpace::operator==(const MeasurementSpace &other) const {
  return same_domain(domain_, other.domain_) && tolerance_ == other.tolerance_ &&
         members_ == other.members_;
}

DomainMap::DomainMap(DomainPtr domain, std::vector<std::size_t> perm)
    : domain_(std::move(domain)), perm_(std::move(perm)) {
  if (!domain_)
    throw InvalidArgument("domain map without a domain");
  const std::size_t n = domain_->size();
  if (perm_.size() != n)
    throw InvalidArgument("permutation has length " + std::to_string(perm_.size()) +
                          ", domain has " + std::to_string(n) + " points");
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = perm_[i];
    if (j >= n)
      throw InvalidArgument("permutation entry " + std::to_string(i) + " is out of range");
    if (hit[j])
      throw InvalidArgument("permutation repeats index " + std::to_string(j));
    hit[j] = true;
  }
}

DomainMap DomainMap::identity(DomainPtr domain) {
  std::vector<std::size_t> perm(domain ? domain->size() : 0);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return DomainMap(std::move(domain), std::move(perm));
}

bool DomainMap::is_identity() const {
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if (perm_[i] != i)
      return false;
  return true;
}

DomainMap DomainMap::inverse() const {
  std::vector<std::size_t> inv(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i)
    inv[perm_[i]] = i;
  return DomainMap(domain_, std::move(inv));
}

bool DomainMap::operator==(const DomainMap &other) const {
  return same_domain(domain_, other.domain_) && perm_ == other.perm_;
}

DomainMap compose(const DomainMap &s, const DomainMap &t) {
  require_same_domain(s.domain(), t.domain(), "compose");
  std::vector<std::size_t> perm(s.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = s(t(i));
  return DomainMap(s.domain(), std::move(perm));
}

std::vector<DomainMap> all_permutations(const DomainPtr &domain) {
  if (!domain)
    throw InvalidArgument("all_permutations: null domain");
  if (domain->size() > 7)
    throw InvalidArgument("all_permutations is limited to domains of at most 7 points");
  std::vector<std::size_t> perm(domain->size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<DomainMap> out;
  do {
    out.emplace_back(domain, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

PerceptionTriple::PerceptionTriple(MeasurementSpace phi, MeasurementSpace phi_prime,
                                   std::vector<DomainMap> ops)
    : phi_(std::move(phi)), phi_prime_(std::move(phi_prime)), ops_(std::move(ops)) {
  require_same_domain(phi_.domain(), phi_prime_.domain(), "perception triple");
  for (const auto &s : ops_)
    require_same_domain(phi_.domain(), s.domain(), "perception triple operation");
}

bool PerceptionTriple::operator==(const PerceptionTriple &other) const {
  return phi_ == other.phi_ && phi_prime_ == other.phi_prime_ && ops_ == other.ops_;
}

double uniform_norm(const Measurement &f) {
  double best = 0.0;
  for (double v : f.values())
    best = std::max(best, std::abs(v));
  return best;
}

double sup_distance(std::span<const double> f, std::span<const double> g) {
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    best = std::max(best, std::abs(f[i] - g[i]));
  return best;
}

double uniform_distance(const Measurement &f, const Measurement &g) {
  require_same_domain(f.domain(), g.domain(), "uniform_distance");
  return sup_distance(f.values(), g.values());
}

Measurement right_action(const Measurement &phi, const DomainMap &s) {
  require_same_domain(phi.domain(), s.domain(), "right_action");
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = phi[s(i)];
  return Measurement(phi.domain(), std::move(out));
}

std::optional<std::size_t> space_membership(const Measurement &f,
                                            const MeasurementSpace &omega) {
  require_same_domain(f.domain(), omega.domain(), "space_membership");
  const double tol = omega.membership_tolerance();
  for (std::size_t k = 0; k < omega.size(); ++k)
    if (sup_distance(f.values(), omega.member(k).values()) <= tol)
      return k;
  return std::nullopt;
}

MeasurementSpace translate_space(const MeasurementSpace &phi, const DomainMap &s) {
  std::vector<Measurement> moved;
  moved.reserve(phi.size());
  for (const auto &m : phi.members())
    moved.push_back(right_action(m, s));
  return MeasurementSpace(phi.domain(), std::move(moved), phi.label() + "s",
                          phi.membership_tolerance());
}

} // namespace pgeneo
