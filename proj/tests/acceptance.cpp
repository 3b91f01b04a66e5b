// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "pgeneo/builders.hpp"
#include "pgeneo/commands.hpp"
#include "pgeneo/covering.hpp"
#include "pgeneo/instance.hpp"
#include "pgeneo/metrics.hpp"
#include "pgeneo/operations.hpp"
#include "pgeneo/operator_pair.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#ifndef PGENEO_DATA_DIR
#define PGENEO_DATA_DIR "data"
#endif

using namespace pgeneo;
using namespace pgeneo::testing;

namespace {

constexpr double kNum = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Shipped {
  std::string name;
  Instance instance;
};

std::vector<Shipped> shipped_instances() {
  std::vector<Shipped> out;
  for (const char *name : {"squares", "digit_six", "cyclic_partial", "cyclic_group"}) {
    const auto path = std::filesystem::path(PGENEO_DATA_DIR) / (std::string(name) + ".json");
    out.push_back({name, load_instance(path.string())});
  }
  return out;
}

std::vector<DomainMap> admissible_ops(const PerceptionTriple &t) {
  std::vector<DomainMap> ops;
  for (const auto &s : t.ops())
    if (is_operation(s, t.phi(), t.phi_prime()).admissible)
      ops.push_back(s);
  return ops;
}

// Binary images on five points with Φ′ = Φ ∪ Φr₁ ∪ Φr₂; many of the 120 maps are admissible.
PerceptionTriple binary_triple(Rng &rng) {
  auto d = FiniteDomain::indexed(5);
  std::bernoulli_distribution coin(0.5);
  Rows rows;
  for (int k = 0; k < 2; ++k) {
    std::vector<double> v(5);
    for (auto &x : v)
      x = coin(rng) ? 1.0 : 0.0;
    rows.push_back(v);
  }
  Rows prime = rows;
  for (int k = 0; k < 2; ++k) {
    auto moved = translate_rows(rows, random_map(d, rng));
    prime.insert(prime.end(), moved.begin(), moved.end());
  }
  auto phi = to_space(d, unique(rows), "Phi");
  auto phi_prime = to_space(d, unique(prime), "PhiPrime");
  std::vector<DomainMap> ops;
  for (const auto &s : all_permutations(d))
    if (is_operation(s, phi, phi_prime).admissible)
      ops.push_back(s);
  return PerceptionTriple(phi, phi_prime, ops);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------

Outcome isometry_exactness() {
  Rng rng(101);
  std::size_t exact = 0;
  const std::size_t cases = 200;
  for (std::size_t i = 0; i < cases; ++i) {
    auto d = FiniteDomain::indexed(2 + i % 30);
    auto omega = random_space(d, 1 + i % 8, rng);
    auto r = random_map(d, rng), s = random_map(d, rng), t = random_map(d, rng);
    if (aut_pseudometric(omega, compose(r, t), compose(s, t)).value ==
        aut_pseudometric(omega, r, s).value)
      ++exact;
  }
  return {exact == cases, std::to_string(exact) + "/" + std::to_string(cases) +
                              " cases with bitwise-equal D_Aut(rt,st) and D_Aut(r,s)"};
}

Outcome left_composition_bound() {
  Rng rng(102);
  double worst = -std::numeric_limits<double>::infinity();
  const std::size_t cases = 200;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < cases; ++i) {
    auto d = FiniteDomain::indexed(3 + i % 20);
    auto phi = random_space(d, 1 + i % 6, rng, "Phi");
    auto t = random_map(d, rng);
    auto phi_prime = admissible_target(phi, t, i % 3, rng);
    if (!is_operation(t, phi, phi_prime).admissible)
      return {false, "generator produced a non-admissible t"};
    auto r = random_map(d, rng), s = random_map(d, rng);
    const double excess = aut_pseudometric(phi, compose(t, r), compose(t, s)).value -
                          aut_pseudometric(phi_prime, r, s).value;
    worst = std::max(worst, excess);
    if (excess <= kNum)
      ++ok;
  }
  return {ok == cases, std::to_string(ok) + "/" + std::to_string(cases) +
                           " within 1e-12, max of lhs - rhs = " + fmt(worst)};
}

Outcome composition_equivalence(const std::vector<Shipped> &shipped) {
  std::size_t cases = 0, agree = 0, direct_true = 0;
  auto scan = [&](const PerceptionTriple &t) {
    const auto ops = admissible_ops(t);
    for (const auto &s : ops)
      for (const auto &u : ops) {
        const auto routes = composition_routes(s, u, t.phi(), t.phi_prime());
        ++cases;
        agree += routes.agree();
        direct_true += routes.direct;
      }
  };
  for (const auto &sh : shipped)
    for (const auto &[name, entry] : sh.instance.triples)
      scan(*entry.triple);
  Rng rng(103);
  for (int k = 0; k < 8; ++k)
    scan(binary_triple(rng));
  return {cases > 0 && agree == cases,
          std::to_string(agree) + "/" + std::to_string(cases) + " (s,t) pairs agree (" +
              std::to_string(direct_true) + " admissible products, " +
              std::to_string(cases - direct_true) + " rejected)"};
}

Outcome measurement_nonexpansive(const std::vector<Shipped> &shipped) {
  std::size_t terms = 0, violations = 0, spaces = 0;
  for (const auto &sh : shipped)
    for (const auto &[name, entry] : sh.instance.spaces) {
      const auto &omega = entry.space;
      if (omega.empty())
        continue;
      ++spaces;
      const std::size_t n = omega.domain()->size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const double D = domain_pseudometric(omega, a, b).value;
          for (const auto &w : omega.members()) {
            ++terms;
            if (!(std::abs(w[a] - w[b]) <= D))
              ++violations;
          }
        }
    }
  return {violations == 0 && terms > 0,
          std::to_string(violations) + " violations in " + std::to_string(terms) +
              " terms over " + std::to_string(spaces) + " spaces (exact comparison)"};
}

Outcome operation_nonexpansive(const std::vector<Shipped> &shipped) {
  std::size_t ops_checked = 0, violating = 0;
  double worst = 0.0;
  for (const auto &sh : shipped)
    for (const auto &[name, entry] : sh.instance.triples) {
      const auto &t = *entry.triple;
      for (const auto &s : admissible_ops(t)) {
        const auto r = check_operation_nonexpansive(s, t.phi(), t.phi_prime());
        ++ops_checked;
        worst = std::max(worst, r.scan.max_violation);
        if (r.scan.max_violation > kNum)
          ++violating;
      }
    }

  // negative controls: maps that are not operations and break the bound
  std::size_t controls = 0;
  std::string control_names;
  for (const auto &sh : shipped)
    for (const auto &[name, entry] : sh.instance.triples) {
      const auto &t = *entry.triple;
      for (std::size_t k = 0; k < t.ops().size(); ++k) {
        const auto r = check_operation_nonexpansive(t.ops()[k], t.phi(), t.phi_prime());
        if (!r.admissible && r.scan.max_violation > kNum) {
          ++controls;
          control_names += " " + sh.name + "/" + name + "/" + entry.ops[k];
        }
      }
    }
  {
    auto d = FiniteDomain::indexed(3);
    MeasurementSpace phi(d, {Measurement(d, {0, 0, 4})}, "Phi");
    MeasurementSpace phi_prime(d, {Measurement(d, {1, 1, 1})}, "PhiPrime");
    const auto r = check_operation_nonexpansive(DomainMap::identity(d), phi, phi_prime);
    if (!r.admissible && r.scan.max_violation > kNum) {
      ++controls;
      control_names += " flat-vs-spike/id";
    }
  }
  return {ops_checked > 0 && violating == 0 && controls >= 1,
          std::to_string(ops_checked) + " admissible ops, max violation " + fmt(worst) + "; " +
              std::to_string(controls) + " negative controls violate:" + control_names};
}

Outcome pi_upsilon_continuity(const std::vector<Shipped> &shipped) {
  double worst_pi = 0.0, worst_up = 0.0;
  std::size_t pi_checked = 0, up_checked = 0;
  auto scan = [&](const PerceptionTriple &t) {
    const auto ops = admissible_ops(t);
    if (ops.empty())
      return;
    const auto pi = build_pi(ops, t.phi(), t.phi_prime());
    const auto up = build_upsilon(ops, t.phi(), t.phi_prime());
    const auto a = check_composition_nonexpansive(pi, ops, t.phi(), t.phi_prime());
    const auto b = check_inversion_nonexpansive(up, ops, t.phi(), t.phi_prime());
    worst_pi = std::max(worst_pi, a.max_violation);
    worst_up = std::max(worst_up, b.max_violation);
    pi_checked += a.checked;
    up_checked += b.checked;
  };
  for (const auto &sh : shipped)
    for (const auto &[name, entry] : sh.instance.triples)
      scan(*entry.triple);
  Rng rng(106);
  for (int k = 0; k < 4; ++k)
    scan(binary_triple(rng));
  return {pi_checked > 0 && up_checked > 0 && worst_pi <= kNum && worst_up <= kNum,
          "composition: " + std::to_string(pi_checked) + " pairs of Pi, max violation " +
              fmt(worst_pi) + "; inversion: " + std::to_string(up_checked) +
              " pairs of Upsilon, max violation " + fmt(worst_up)};
}

Outcome action_continuity(const std::vector<Shipped> &shipped) {
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto &sh : shipped)
    for (const auto &[name, entry] : sh.instance.triples) {
      const auto &t = *entry.triple;
      const auto ops = admissible_ops(t);
      if (ops.empty())
        continue;
      const auto r = check_action_continuity(t.phi(), t.phi_prime(), ops);
      worst = std::max(worst, r.max_violation);
      checked += r.checked;
    }
  return {checked > 0 && worst <= kNum,
          std::to_string(checked) + " quadruples, max violation " + fmt(worst)};
}

// Test-side aggregators, written independently of the library.
struct OracleL {
  std::string name;
  std::function<Aggregator(std::size_t)> make;
  std::function<double(const std::vector<double> &)> eval;
};

std::vector<OracleL> oracle_aggregators() {
  std::vector<OracleL> out;
  out.push_back({"max", [](std::size_t n) { return Aggregator::maximum(n); },
                 [](const std::vector<double> &u) { return *std::max_element(u.begin(), u.end()); }});
  out.push_back({"min", [](std::size_t n) { return Aggregator::minimum(n); },
                 [](const std::vector<double> &u) { return *std::min_element(u.begin(), u.end()); }});
  out.push_back({"convex", [](std::size_t) { return Aggregator::convex({0.25, 0.75}); },
                 [](const std::vector<double> &u) { return 0.25 * u[0] + 0.75 * u[1]; }});
  for (double p : {1.0, 2.0, 3.0})
    out.push_back({"power p=" + fmt(p),
                   [p](std::size_t) { return Aggregator::power_mean(p, {0.5, 0.5}); },
                   [p](const std::vector<double> &u) {
                     return std::pow(0.5 * std::pow(u[0], p) + 0.5 * std::pow(u[1], p), 1.0 / p);
                   }});
  return out;
}

bool images_match(const Tabulation &got, const Rows &want) {
  if (got.size() != want.size())
    return false;
  for (std::size_t k = 0; k < want.size(); ++k)
    if (sup_distance(got[k].values(), want[k]) > kNum)
      return false;
  return true;
}

bool any_missing(const Rows &images, const MeasurementSpace &space) {
  for (const auto &r : images)
    if (!space_membership(Measurement(space.domain(), r), space))
      return true;
  return false;
}

Outcome algebra_closure() {
  constexpr int kCases = 20;
  std::vector<std::pair<std::string, int>> tally;
  std::string failures;

  { // compose
    int ok = 0;
    for (int seed = 0; seed < kCases; ++seed) {
      Rng rng(800 + seed);
      const std::size_t n = 5 + seed % 5;
      const auto k1 = random_kernel(3, rng), k2 = random_kernel(2, rng);
      auto c = conv_setup(n, 3, {1, 2}, {k1}, rng);
      auto P2 = second_stage(c, k2);
      const auto out = compose(c.parts[0], P2);
      Rows want;
      for (const auto &r : c.phi)
        want.push_back(convolve(convolve(r, k1), k2));
      if (out.certificate.certified && images_match(out.pair.F(), want))
        ++ok;
    }
    tally.emplace_back("compose", ok);
  }

  for (const auto &L : oracle_aggregators()) {
    int ok = 0;
    for (int seed = 0; seed < kCases; ++seed) {
      Rng rng(900 + seed);
      const std::size_t n = 5 + seed % 5;
      Rows kernels{random_kernel(2, rng), random_kernel(3, rng)};
      auto closure = [&](const std::vector<Rows> &F, const std::vector<Rows> &Fp) {
        return std::make_pair(fuse(F, L.eval), fuse(Fp, L.eval));
      };
      auto c = conv_setup(n, 3, {1, 3}, kernels, rng, closure);
      CombineOptions opts;
      opts.seed = static_cast<std::uint64_t>(seed);
      const auto out = combine(L.make(2), c.parts, opts);
      if (out.certificate.certified && images_match(out.pair.F(), fuse(c.F, L.eval)) &&
          images_match(out.pair.F_prime(), fuse(c.F_prime, L.eval)))
        ++ok;
    }
    tally.emplace_back("combine " + L.name, ok);
  }

  { // convex_combine
    int ok = 0;
    for (int seed = 0; seed < kCases; ++seed) {
      Rng rng(1000 + seed);
      const std::size_t n = 5 + seed % 5;
      const double a = static_cast<double>(1 + seed % 7) / 8.0;
      const std::vector<double> w{a, 1.0 - a};
      Rows kernels{random_kernel(3, rng), random_kernel(3, rng)};
      auto c = conv_setup(n, 3, {2, 3}, kernels, rng,
                          [&](const std::vector<Rows> &F, const std::vector<Rows> &Fp) {
                            return std::make_pair(weighted_sum(F, w), weighted_sum(Fp, w));
                          });
      const auto out = convex_combine(c.parts, w);
      Rows want;
      for (std::size_t k = 0; k < c.phi.size(); ++k) {
        std::vector<double> v(n);
        for (std::size_t y = 0; y < n; ++y)
          v[y] = a * c.F[0][k][y] + (1.0 - a) * c.F[1][k][y];
        want.push_back(v);
      }
      if (out.certificate.certified && images_match(out.pair.F(), want))
        ++ok;
    }
    tally.emplace_back("convex_combine", ok);
  }

  // negative controls: the codomain hypothesis is broken on purpose
  int controls = 0, controls_ok = 0;
  const Rows fixed{{0.5, 0.5}, {0.25, 0.5, 0.25}};
  for (int seed = 0; seed < 3; ++seed) {
    Rng rng(1100 + seed);
    auto c = conv_setup(7, 3, {1, 2}, fixed, rng);
    for (const auto &L : oracle_aggregators()) {
      if (L.name != "max" && L.name != "power p=2")
        continue;
      ++controls;
      const auto out = combine(L.make(2), c.parts);
      if (any_missing(fuse(c.F, L.eval), c.target->phi()) && !out.certificate.certified &&
          !out.certificate.codomain_failures.empty())
        ++controls_ok;
    }
    ++controls;
    const std::vector<double> w{0.5, 0.5};
    if (any_missing(weighted_sum(c.F, w), c.target->phi())) {
      try {
        convex_combine(c.parts, w);
      } catch (const PreconditionError &) {
        ++controls_ok;
      }
    }
  }

  bool pass = controls >= 3 && controls_ok == controls;
  std::string detail;
  for (const auto &[name, ok] : tally) {
    pass = pass && ok == kCases;
    detail += name + " " + std::to_string(ok) + "/" + std::to_string(kCases) + ", ";
  }
  detail += "negative controls rejected " + std::to_string(controls_ok) + "/" +
            std::to_string(controls);
  return {pass, detail};
}

// F′ is rebuilt from F by propagating along orbits, F′(φs) = F(φ)T(s), then compared to F.
double degeneration_gap(const OperatorPair &P) {
  const auto &phi = P.source().phi();
  const auto &phi_prime = P.source().phi_prime();
  const auto &S = P.source().ops();
  Tabulation Fp;
  for (const auto &target : phi_prime.members()) {
    std::optional<Measurement> image;
    for (std::size_t i = 0; i < phi.size() && !image; ++i)
      for (std::size_t k = 0; k < S.size() && !image; ++k)
        if (sup_distance(right_action(phi.member(i), S[k]).values(), target.values()) == 0.0)
          image = right_action(P.F()[i], P.T().image(k));
    if (!image)
      throw std::runtime_error("member of Phi' outside the orbit of Phi");
    Fp.push_back(*image);
  }
  OperatorPair propagated(P.source_ptr(), P.target_ptr(), P.T_ptr(), P.F(), Fp);
  if (!certify(propagated).certified)
    return std::numeric_limits<double>::infinity();
  double gap = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const auto j = space_membership(phi.member(i), phi_prime);
    if (!j)
      return std::numeric_limits<double>::infinity();
    gap = std::max(gap, uniform_distance(Fp[*j], P.F()[i]));
  }
  const auto r = check_restriction(propagated);
  if (!r.applicable)
    return std::numeric_limits<double>::infinity();
  return std::max(gap, r.max_gap);
}

// Full symmetric group on five points acting on an orbit-closed Φ; F(φ) = max(φ)·1.
OperatorPair symmetric_group_pair(Rng &rng) {
  auto d = FiniteDomain::indexed(5, "p");
  const auto S = all_permutations(d);
  Rows seeds{lattice_values(5, rng), lattice_values(5, rng)};
  Rows orbit;
  for (const auto &s : S) {
    auto moved = translate_rows(seeds, s);
    orbit.insert(orbit.end(), moved.begin(), moved.end());
  }
  orbit = unique(orbit);
  Rows images;
  for (const auto &r : orbit)
    images.push_back(std::vector<double>(5, *std::max_element(r.begin(), r.end())));
  auto phi = to_space(d, orbit, "Phi");
  auto psi = to_space(d, unique(images), "Psi");
  auto source = std::make_shared<const PerceptionTriple>(phi, phi, S);
  auto target = std::make_shared<const PerceptionTriple>(psi, psi, S);
  auto T = std::make_shared<const TransformationMap>(TransformationMap::identity(S));
  return OperatorPair(source, target, T, to_tab(d, images), to_tab(d, images));
}

Outcome geneo_degeneration() {
  std::size_t instances = 0, pairs = 0, ok = 0;
  double worst = 0.0;
  for (std::size_t n = 5; n <= 9; ++n) {
    CyclicParams p;
    p.n = n;
    p.group = true;
    p.seed = 40 + n;
    p.members = 2;
    p.kernels = {{0.5, 0.5}, {0.25, 0.5, 0.25}, {0.125, 0.375, 0.25, 0.25}};
    const auto inst = cyclic_instance(p);
    ++instances;
    for (const auto &[name, e] : inst.operators) {
      const auto P = inst.operator_pair(name);
      if (!certify(P).certified)
        return {false, "builder pair " + name + " failed certification for n = " +
                           std::to_string(n)};
      const double gap = degeneration_gap(P);
      worst = std::max(worst, gap);
      ++pairs;
      ok += gap <= kNum;
    }
  }
  Rng rng(107);
  const auto sym = symmetric_group_pair(rng);
  ++instances;
  ++pairs;
  const double gap = degeneration_gap(sym);
  worst = std::max(worst, gap);
  ok += gap <= kNum;
  return {instances >= 5 && ok == pairs,
          std::to_string(instances) + " group instances (Z_5..Z_9, S_5), " + std::to_string(ok) +
              "/" + std::to_string(pairs) + " propagated pairs certified with max ||F'-F|| = " +
              fmt(worst)};
}

Outcome squares_example() {
  const auto dir = std::filesystem::temp_directory_path() / "pgeneo_acceptance";
  std::filesystem::create_directories(dir);
  std::ostringstream sink;

  const auto path = (dir / "squares.json").string();
  cli::cmd_demo_squares({}, path, sink);
  const auto inst = load_instance(path);
  const int validated = cli::cmd_validate(inst, "source", false, sink);
  const int certified = cli::cmd_certify(inst, "cut", false, sink);
  const double residual = certify(inst.operator_pair("cut"), inst.tolerances).equivariance_residual;

  SquaresParams variant;
  variant.overlap_equal = true;
  const auto vpath = (dir / "squares_overlap.json").string();
  cli::cmd_demo_squares(variant, vpath, sink);
  const auto vinst = load_instance(vpath);
  const int vcertified = cli::cmd_certify(vinst, "cut", false, sink);
  const double vresidual =
      certify(vinst.operator_pair("cut"), vinst.tolerances).equivariance_residual;

  const bool pass = validated == cli::kExitOk && certified == cli::kExitOk && residual <= kNum &&
                    vcertified == cli::kExitCheckFailed;
  return {pass, "default: validate exit " + std::to_string(validated) + ", certify exit " +
                    std::to_string(certified) + ", residual " + fmt(residual) +
                    "; F' = F on the overlap: certify exit " + std::to_string(vcertified) +
                    ", residual " + fmt(vresidual)};
}

struct NetCheck {
  std::size_t nets = 0;
  std::size_t failures = 0;
  std::size_t collections = 0;
  std::string sizes;
};

// Nets at D/8, D/4, D/2 with an exhaustive coverage check against the raw metric.
void check_nets(NetCheck &out, std::size_t count,
                const std::function<double(std::size_t, std::size_t)> &metric,
                const std::function<EpsilonNet(double)> &build, const std::string &label) {
  double diameter = 0.0;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      diameter = std::max(diameter, metric(a, b));
  if (diameter == 0.0)
    return;
  ++out.collections;
  std::size_t previous = std::numeric_limits<std::size_t>::max();
  std::string sizes;
  for (double eps : {diameter / 8, diameter / 4, diameter / 2}) {
    const auto net = build(eps);
    ++out.nets;
    double radius = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c : net.centers)
        best = std::min(best, metric(i, c));
      radius = std::max(radius, best);
    }
    if (radius > eps || net.centers.size() > previous)
      ++out.failures;
    previous = net.centers.size();
    sizes += (sizes.empty() ? "" : "/") + std::to_string(net.centers.size());
  }
  if (out.sizes.size() < 160)
    out.sizes += " " + label + "=" + sizes;
}

Outcome covering_contracts(const std::vector<Shipped> &shipped) {
  NetCheck domain, ops, family;
  for (const auto &sh : shipped) {
    for (const auto &[name, entry] : sh.instance.spaces) {
      const auto &omega = entry.space;
      if (omega.empty())
        continue;
      check_nets(
          domain, omega.domain()->size(),
          [&](std::size_t a, std::size_t b) { return domain_pseudometric(omega, a, b).value; },
          [&](double eps) { return cover_domain(omega, eps).net; }, sh.name + "/" + name);
    }
    for (const auto &[name, entry] : sh.instance.triples) {
      const auto &t = *entry.triple;
      const auto maps = admissible_ops(t);
      if (maps.size() < 2)
        continue;
      check_nets(
          ops, maps.size(),
          [&](std::size_t a, std::size_t b) {
            return aut_pseudometric(t.phi(), maps[a], maps[b]).value;
          },
          [&](double eps) { return cover_operations(maps, t.phi(), eps); },
          sh.name + "/" + name);
    }
  }
  Rng rng(108);
  const auto rich = binary_triple(rng);
  check_nets(
      ops, rich.ops().size(),
      [&](std::size_t a, std::size_t b) {
        return aut_pseudometric(rich.phi(), rich.ops()[a], rich.ops()[b]).value;
      },
      [&](double eps) { return cover_operations(rich, eps); }, "binary");

  Rows kernels;
  for (int k = 0; k < 50; ++k)
    kernels.push_back(random_kernel(1 + k % 4, rng));
  auto fam = conv_setup(8, 4, {1, 2, 5}, kernels, rng);
  check_nets(
      family, fam.parts.size(),
      [&](std::size_t a, std::size_t b) { return pgeneo_distance(fam.parts[a], fam.parts[b]); },
      [&](double eps) { return cover_operator_family(fam.parts, eps); }, "conv50");

  // convex path between two certified pairs
  const Rows ends{random_kernel(3, rng), random_kernel(3, rng)};
  std::vector<std::vector<double>> path_weights;
  for (int k = 0; k <= 10; ++k)
    path_weights.push_back({1.0 - k / 10.0, k / 10.0});
  auto path = conv_setup(8, 3, {1, 2}, ends, rng,
                         [&](const std::vector<Rows> &F, const std::vector<Rows> &Fp) {
                           Rows a, b;
                           for (const auto &w : path_weights) {
                             auto x = weighted_sum(F, w), y = weighted_sum(Fp, w);
                             a.insert(a.end(), x.begin(), x.end());
                             b.insert(b.end(), y.begin(), y.end());
                           }
                           return std::make_pair(unique(a), unique(b));
                         });
  std::vector<OperatorPair> members;
  for (const auto &w : path_weights) {
    auto built = convex_combine(path.parts, w);
    if (!built.certificate.certified)
      return {false, "convex path member failed certification"};
    members.push_back(std::move(built.pair));
  }
  const double D12 = pgeneo_distance(path.parts[0], path.parts[1]);
  const auto path_net = cover_operator_family(members, D12 / 4);
  double path_radius = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c : path_net.centers)
      best = std::min(best, pgeneo_distance(members[i], members[c]));
    path_radius = std::max(path_radius, best);
  }

  const bool pass = domain.failures == 0 && ops.failures == 0 && family.failures == 0 &&
                    domain.nets > 0 && ops.nets > 0 && family.nets == 3 &&
                    path_net.centers.size() <= 5 && path_radius <= D12 / 4;
  return {pass, std::to_string(domain.nets) + " domain nets, " + std::to_string(ops.nets) +
                    " op nets, " + std::to_string(family.nets) +
                    " nets of a 50-member family, " +
                    std::to_string(domain.failures + ops.failures + family.failures) +
                    " failures; convex path: " + std::to_string(path_net.centers.size()) +
                    " centers at eps = D/4 (radius " + fmt(path_radius) + ", D " + fmt(D12) +
                    "); sizes D/8,D/4,D/2:" + ops.sizes + family.sizes};
}

Outcome pseudometric_axioms() {
  constexpr int kTriples = 500;
  Rng rng(109);
  std::vector<std::pair<std::string, int>> tally;

  auto axioms = [](double ab, double ba, double ac, double bc, double aa) {
    return ab >= 0.0 && ab == ba && aa == 0.0 && ac <= ab + bc + kNum;
  };

  {
    int ok = 0;
    for (int i = 0; i < kTriples; ++i) {
      auto d = FiniteDomain::indexed(2 + i % 40);
      auto omega = random_space(d, 1 + i % 10, rng);
      std::uniform_int_distribution<std::size_t> pick(0, d->size() - 1);
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      auto D = [&](std::size_t x, std::size_t y) { return domain_pseudometric(omega, x, y).value; };
      ok += axioms(D(a, b), D(b, a), D(a, c), D(b, c), D(a, a));
    }
    tally.emplace_back("D_X", ok);
  }
  {
    int ok = 0;
    for (int i = 0; i < kTriples; ++i) {
      auto d = FiniteDomain::indexed(2 + i % 30);
      auto omega = random_space(d, 1 + i % 6, rng);
      auto a = random_map(d, rng), b = random_map(d, rng), c = random_map(d, rng);
      auto D = [&](const DomainMap &x, const DomainMap &y) {
        return aut_pseudometric(omega, x, y).value;
      };
      ok += axioms(D(a, b), D(b, a), D(a, c), D(b, c), D(a, a));
    }
    tally.emplace_back("D_Aut", ok);
  }
  {
    int ok = 0;
    for (int i = 0; i < kTriples; ++i) {
      auto d = FiniteDomain::indexed(2 + i % 20);
      auto phi = random_space(d, 1 + i % 5, rng);
      auto phi_prime = random_space(d, 1 + i % 4, rng);
      std::pair<DomainMap, DomainMap> a{random_map(d, rng), random_map(d, rng)},
          b{random_map(d, rng), random_map(d, rng)}, c{random_map(d, rng), random_map(d, rng)};
      auto D = [&](const auto &x, const auto &y) { return pi_distance(x, y, phi, phi_prime); };
      ok += axioms(D(a, b), D(b, a), D(a, c), D(b, c), D(a, a));
    }
    tally.emplace_back("D_Pi", ok);
  }
  {
    int ok = 0;
    for (int i = 0; i < kTriples; ++i) {
      auto x = FiniteDomain::indexed(2 + i % 10);
      auto y = FiniteDomain::indexed(1 + i % 12, "y");
      auto omega = random_space(x, 1 + i % 7, rng);
      auto tab = [&] {
        Tabulation t;
        for (std::size_t k = 0; k < omega.size(); ++k)
          t.push_back(random_measurement(y, rng));
        return t;
      };
      const auto a = tab(), b = tab(), c = tab();
      auto D = [&](const Tabulation &f, const Tabulation &g) {
        return operator_distance(omega, f, g).value;
      };
      ok += axioms(D(a, b), D(b, a), D(a, c), D(b, c), D(a, a));
    }
    tally.emplace_back("D_NE", ok);
  }
  {
    int ok = 0;
    for (int i = 0; i < kTriples; ++i) {
      auto x = FiniteDomain::indexed(2 + i % 10);
      auto y = FiniteDomain::indexed(1 + i % 8, "y");
      auto source = std::make_shared<const PerceptionTriple>(
          random_space(x, 1 + i % 5, rng, "Phi"), random_space(x, 1 + i % 3, rng, "PhiPrime"),
          std::vector<DomainMap>{});
      auto target = std::make_shared<const PerceptionTriple>(
          random_space(y, 2, rng, "Psi"), random_space(y, 2, rng, "PsiPrime"),
          std::vector<DomainMap>{});
      auto T = std::make_shared<const TransformationMap>(TransformationMap::identity({}));
      auto pair = [&] {
        Tabulation F, Fp;
        for (std::size_t k = 0; k < source->phi().size(); ++k)
          F.push_back(random_measurement(y, rng));
        for (std::size_t k = 0; k < source->phi_prime().size(); ++k)
          Fp.push_back(random_measurement(y, rng));
        return OperatorPair(source, target, T, F, Fp);
      };
      const auto a = pair(), b = pair(), c = pair();
      ok += axioms(pgeneo_distance(a, b), pgeneo_distance(b, a), pgeneo_distance(a, c),
                   pgeneo_distance(b, c), pgeneo_distance(a, a));
    }
    tally.emplace_back("D_P-GENEO", ok);
  }

  bool pass = true;
  std::string detail;
  for (const auto &[name, ok] : tally) {
    pass = pass && ok == kTriples;
    detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(ok) + "/" +
              std::to_string(kTriples);
  }
  return {pass, detail};
}

} // namespace

int main() {
  std::vector<Shipped> shipped;
  try {
    shipped = shipped_instances();
  } catch (const std::exception &e) {
    std::cerr << "cannot load shipped instances: " << e.what() << "\n";
    return 2;
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"isometry exactness", isometry_exactness},
      {"left-composition bound", left_composition_bound},
      {"composition admissibility equivalence",
       [&] { return composition_equivalence(shipped); }},
      {"measurement non-expansiveness", [&] { return measurement_nonexpansive(shipped); }},
      {"operation non-expansiveness", [&] { return operation_nonexpansive(shipped); }},
      {"Pi/Upsilon continuity", [&] { return pi_upsilon_continuity(shipped); }},
      {"action continuity bound", [&] { return action_continuity(shipped); }},
      {"P-GENEO algebra closure", algebra_closure},
      {"GENEO degeneration", geneo_degeneration},
      {"nested-squares example", squares_example},
      {"covering contracts", [&] { return covering_contracts(shipped); }},
      {"pseudo-metric axioms", pseudometric_axioms},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s  C%02zu %-40s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
