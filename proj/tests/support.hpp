#ifndef PGENEO_TESTS_SUPPORT_HPP
#define PGENEO_TESTS_SUPPORT_HPP

#include "pgeneo/core.hpp"
#include "pgeneo/operator_pair.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

namespace pgeneo::testing {

using Rng = std::mt19937_64;
using Rows = std::vector<std::vector<double>>;

inline std::vector<double> random_values(std::size_t n, Rng &rng, double lo = -5.0,
                                         double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto &x : v)
    x = u(rng);
  return v;
}

/// Values on the 1/16 lattice of [0, 1]; sums and dyadic-weight products stay exact.
inline std::vector<double> lattice_values(std::size_t n, Rng &rng) {
  std::uniform_int_distribution<int> u(0, 16);
  std::vector<double> v(n);
  for (auto &x : v)
    x = u(rng) / 16.0;
  return v;
}

inline Measurement random_measurement(const DomainPtr &d, Rng &rng) {
  return Measurement(d, random_values(d->size(), rng));
}

inline MeasurementSpace random_space(const DomainPtr &d, std::size_t members, Rng &rng,
                                     const std::string &label = "Omega") {
  std::vector<Measurement> ms;
  for (std::size_t i = 0; i < members; ++i)
    ms.push_back(random_measurement(d, rng));
  return MeasurementSpace(d, std::move(ms), label);
}

inline DomainMap random_map(const DomainPtr &d, Rng &rng) {
  std::vector<std::size_t> perm(d->size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return DomainMap(d, std::move(perm));
}

inline DomainMap shift_map(const DomainPtr &d, std::size_t k) {
  std::vector<std::size_t> perm(d->size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = (i + k) % perm.size();
  return DomainMap(d, std::move(perm));
}

/// Φ′ = Φ t ∪ {extra random members}, so that t is admissible by construction.
inline MeasurementSpace admissible_target(const MeasurementSpace &phi, const DomainMap &t,
                                          std::size_t extra, Rng &rng) {
  std::vector<Measurement> ms;
  for (const auto &m : phi.members()) {
    std::vector<double> v(m.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = m[t(i)];
    ms.emplace_back(m.domain(), std::move(v));
  }
  for (std::size_t i = 0; i < extra; ++i)
    ms.push_back(random_measurement(phi.domain(), rng));
  return MeasurementSpace(phi.domain(), std::move(ms), "PhiPrime");
}

/// Direct loop version of (w ⋆ φ)(i) = Σ_k w_k φ((i + k) mod n).
inline std::vector<double> convolve(const std::vector<double> &phi,
                                    const std::vector<double> &w) {
  std::vector<double> out(phi.size(), 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
      acc += w[k] * phi[(i + k) % phi.size()];
    out[i] = acc;
  }
  return out;
}

inline Rows unique(Rows rows) {
  Rows out;
  for (auto &r : rows)
    if (std::find(out.begin(), out.end(), r) == out.end())
      out.push_back(std::move(r));
  return out;
}

inline Rows translate_rows(const Rows &rows, const DomainMap &s) {
  Rows out;
  for (const auto &r : rows) {
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = r[s(i)];
    out.push_back(std::move(v));
  }
  return out;
}

inline Tabulation to_tab(const DomainPtr &d, const Rows &rows) {
  Tabulation t;
  for (const auto &r : rows)
    t.emplace_back(d, r);
  return t;
}

inline MeasurementSpace to_space(const DomainPtr &d, const Rows &rows, const std::string &label) {
  std::vector<Measurement> ms;
  for (const auto &r : rows)
    ms.emplace_back(d, r);
  return MeasurementSpace(d, std::move(ms), label);
}

/**
 * Convolution P-GENEOs on Z_n between (Φ, Φ′, S) and (Ψ, Ψ′, S) with T = id.
 * Φ′ = Φ ∪ ΦS. Ψ and Ψ′ collect the images of every kernel plus the rows
 * returned by `extra`, which receives the per-kernel images of Φ and Φ′.
 */
struct ConvSetup {
  DomainPtr domain;
  Rows phi, phi_prime;
  std::vector<DomainMap> ops;
  std::vector<Rows> F, F_prime; // per kernel
  TriplePtr source, target;
  TransformationPtr T;
  std::vector<OperatorPair> parts;
};

using ExtraImages =
    std::function<std::pair<Rows, Rows>(const std::vector<Rows> &, const std::vector<Rows> &)>;

inline ConvSetup conv_setup(std::size_t n, std::size_t members, std::vector<std::size_t> shifts,
                            const Rows &kernels, Rng &rng, const ExtraImages &extra = {}) {
  ConvSetup c;
  c.domain = FiniteDomain::indexed(n, "z");
  for (std::size_t i = 0; i < members; ++i)
    c.phi.push_back(lattice_values(n, rng));
  c.phi = unique(c.phi);
  for (std::size_t k : shifts)
    c.ops.push_back(shift_map(c.domain, k % n));
  c.phi_prime = c.phi;
  for (const auto &s : c.ops) {
    auto moved = translate_rows(c.phi, s);
    c.phi_prime.insert(c.phi_prime.end(), moved.begin(), moved.end());
  }
  c.phi_prime = unique(c.phi_prime);

  Rows psi, psi_prime;
  for (const auto &w : kernels) {
    Rows f, fp;
    for (const auto &r : c.phi)
      f.push_back(convolve(r, w));
    for (const auto &r : c.phi_prime)
      fp.push_back(convolve(r, w));
    psi.insert(psi.end(), f.begin(), f.end());
    psi_prime.insert(psi_prime.end(), fp.begin(), fp.end());
    c.F.push_back(std::move(f));
    c.F_prime.push_back(std::move(fp));
  }
  if (extra) {
    auto [a, b] = extra(c.F, c.F_prime);
    psi.insert(psi.end(), a.begin(), a.end());
    psi_prime.insert(psi_prime.end(), b.begin(), b.end());
  }
  c.source = std::make_shared<const PerceptionTriple>(to_space(c.domain, c.phi, "Phi"),
                                                      to_space(c.domain, c.phi_prime, "PhiPrime"),
                                                      c.ops);
  c.target = std::make_shared<const PerceptionTriple>(to_space(c.domain, unique(psi), "Psi"),
                                                      to_space(c.domain, unique(psi_prime), "PsiPrime"),
                                                      c.ops);
  c.T = std::make_shared<const TransformationMap>(TransformationMap::identity(c.ops));
  for (std::size_t j = 0; j < kernels.size(); ++j)
    c.parts.emplace_back(c.source, c.target, c.T, to_tab(c.domain, c.F[j]),
                         to_tab(c.domain, c.F_prime[j]));
  return c;
}

/// Random nonnegative kernel with total mass at most 1, on the 1/16 lattice.
inline std::vector<double> random_kernel(std::size_t width, Rng &rng) {
  std::uniform_int_distribution<int> u(0, 16);
  std::vector<int> w(width);
  int total = 0;
  for (auto &x : w) {
    x = u(rng);
    total += x;
  }
  std::vector<double> out(width);
  const int denom = std::max(total, 16);
  for (std::size_t i = 0; i < width; ++i)
    out[i] = static_cast<double>(w[i]) / denom;
  return out;
}

/// Pointwise fusion of per-kernel images with a plain callable (test-side L*).
template <typename Fn> Rows fuse(const std::vector<Rows> &images, Fn &&L) {
  Rows out(images[0].size(), std::vector<double>(images[0][0].size()));
  std::vector<double> column(images.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t y = 0; y < out[k].size(); ++y) {
      for (std::size_t i = 0; i < images.size(); ++i)
        column[i] = images[i][k][y];
      out[k][y] = L(column);
    }
  return out;
}

/// A second convolution stage (Ψ, Ψ′, S) → (Ω, Ω′, S) that accepts c.target as its source.
inline OperatorPair second_stage(const ConvSetup &c, const std::vector<double> &kernel) {
  Rows psi, psi_prime, f, fp;
  for (const auto &m : c.target->phi().members())
    psi.emplace_back(m.values().begin(), m.values().end());
  for (const auto &m : c.target->phi_prime().members())
    psi_prime.emplace_back(m.values().begin(), m.values().end());
  for (const auto &r : psi)
    f.push_back(convolve(r, kernel));
  for (const auto &r : psi_prime)
    fp.push_back(convolve(r, kernel));
  auto out = std::make_shared<const PerceptionTriple>(to_space(c.domain, unique(f), "Omega"),
                                                      to_space(c.domain, unique(fp), "OmegaPrime"),
                                                      c.ops);
  return OperatorPair(c.target, out, c.T, to_tab(c.domain, f), to_tab(c.domain, fp));
}

/// Weighted sums Σ aᵢ Fᵢ accumulated in the same order as convex_combine.
inline Rows weighted_sum(const std::vector<Rows> &images, const std::vector<double> &weights) {
  Rows out(images[0].size(), std::vector<double>(images[0][0].size(), 0.0));
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t y = 0; y < out[k].size(); ++y)
        out[k][y] += weights[i] * images[i][k][y];
  return out;
}

} // namespace pgeneo::testing

#endif
