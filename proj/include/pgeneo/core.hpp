#ifndef PGENEO_CORE_HPP
#define PGENEO_CORE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgeneo {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must live on one domain do not.
class DomainMismatch : public Error {
public:
  using Error::Error;
};

/// A supremum over an empty measurement space was requested.
class EmptySpace : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An operation was invoked outside its documented preconditions.
class PreconditionError : public Error {
public:
  using Error::Error;
};

inline constexpr double kDefaultMembershipTolerance = 1e-9;
inline constexpr double kDefaultNumericTolerance = 1e-12;

struct Tolerances {
  /// Sup-norm radius under which two measurements count as the same element.
  double membership = kDefaultMembershipTolerance;
  /// Absolute slack for inequality checks (triangle, Lipschitz, residuals).
  double numeric = kDefaultNumericTolerance;
};

/**
 * A finite set X of opaque, pairwise distinct point labels.
 */
class FiniteDomain {
public:
  explicit FiniteDomain(std::vector<std::string> labels);

  /// Domain with labels prefix0, prefix1, ...
  static std::shared_ptr<const FiniteDomain> indexed(std::size_t n,
                                                     const std::string &prefix = "x");
  static std::shared_ptr<const FiniteDomain> make(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string &label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string> &labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string &label) const;

  bool operator==(const FiniteDomain &other) const { return labels_ == other.labels_; }

private:
  std::vector<std::string> labels_;
};

using DomainPtr = std::shared_ptr<const FiniteDomain>;

/// Pointer identity, or else identical label lists.
bool same_domain(const DomainPtr &a, const DomainPtr &b);
void require_same_domain(const DomainPtr &a, const DomainPtr &b, const char *what);

/**
 * A real-valued function on a finite domain, stored by value at each point.
 */
class Measurement {
public:
  Measurement(DomainPtr domain, std::vector<double> values);

  static Measurement constant(DomainPtr domain, double value);

  const DomainPtr &domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Exact value equality on the same domain.
  bool operator==(const Measurement &other) const;

private:
  DomainPtr domain_;
  std::vector<double> values_;
};

/**
 * A finite set of measurements on one domain. Members are deduplicated on
 * construction: a candidate within the membership tolerance of an earlier
 * member is dropped.
 */
class MeasurementSpace {
public:
  MeasurementSpace(DomainPtr domain, std::vector<Measurement> members,
                   std::string label = "Omega",
                   double membership_tolerance = kDefaultMembershipTolerance);

  const DomainPtr &domain() const { return domain_; }
  const std::vector<Measurement> &members() const { return members_; }
  const Measurement &member(std::size_t i) const { return members_.at(i); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::string &label() const { return label_; }
  double membership_tolerance() const { return tolerance_; }

  /// Same domain, same tolerance, exactly equal member lists.
  bool operator==(const MeasurementSpace &other) const;

private:
  DomainPtr domain_;
  std::vector<Measurement> members_;
  std::string label_;
  double tolerance_;
};

/**
 * A bijection s of X stored as a permutation: the image of x_i is x_perm[i].
 */
class DomainMap {
public:
  DomainMap(DomainPtr domain, std::vector<std::size_t> perm);

  static DomainMap identity(DomainPtr domain);

  const DomainPtr &domain() const { return domain_; }
  const std::vector<std::size_t> &perm() const { return perm_; }
  std::size_t operator()(std::size_t i) const { return perm_[i]; }
  std::size_t size() const { return perm_.size(); }

  bool is_identity() const;
  DomainMap inverse() const;

  bool operator==(const DomainMap &other) const;

private:
  DomainPtr domain_;
  std::vector<std::size_t> perm_;
};

/// The product st = s ∘ t (t is applied first), so that φ(st) = (φs)t.
DomainMap compose(const DomainMap &s, const DomainMap &t);
inline DomainMap operator*(const DomainMap &s, const DomainMap &t) { return compose(s, t); }

/// Every bijection of X. Opt-in, and only for |X| <= 7.
std::vector<DomainMap> all_permutations(const DomainPtr &domain);

/**
 * (Φ, Φ′, S): measurements, their admissible variants and a list of maps of X.
 * Construction checks only that everything shares one domain; admissibility
 * of S is checked by validate_perception_triple.
 */
class PerceptionTriple {
public:
  PerceptionTriple(MeasurementSpace phi, MeasurementSpace phi_prime,
                   std::vector<DomainMap> ops);

  const MeasurementSpace &phi() const { return phi_; }
  const MeasurementSpace &phi_prime() const { return phi_prime_; }
  const std::vector<DomainMap> &ops() const { return ops_; }
  const DomainPtr &domain() const { return phi_.domain(); }

  bool operator==(const PerceptionTriple &other) const;

private:
  MeasurementSpace phi_;
  MeasurementSpace phi_prime_;
  std::vector<DomainMap> ops_;
};

double uniform_norm(const Measurement &f);
double uniform_distance(const Measurement &f, const Measurement &g);

/// Sup-norm distance on raw value arrays of equal length.
double sup_distance(std::span<const double> f, std::span<const double> g);

/// φs, i.e. result[i] = φ[perm[i]].
Measurement right_action(const Measurement &phi, const DomainMap &s);

/// Index of the first member within the space's membership tolerance.
std::optional<std::size_t> space_membership(const Measurement &f,
                                            const MeasurementSpace &omega);

/// Φs = {φs : φ ∈ Φ}, deduplicated.
MeasurementSpace translate_space(const MeasurementSpace &phi, const DomainMap &s);

} // namespace pgeneo

#endif
