#include "pgeneo/builders.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace pgeneo {

namespace {

using Rows = std::vector<std::vector<double>>;

int wrap(int v, int m) { return ((v % m) + m) % m; }

/// Random value on the 1/16 lattice of [0, 1]; exact in binary.
double lattice_value(std::mt19937_64 &rng) {
  return static_cast<double>(std::uniform_int_distribution<int>(0, 16)(rng)) / 16.0;
}

struct Block {
  int row0, row1, col0, col1; // half-open
  bool contains(int r, int c) const { return r >= row0 && r < row1 && c >= col0 && c < col1; }
  bool empty() const { return row0 >= row1 || col0 >= col1; }
};

Block intersect(const Block &a, const Block &b) {
  return {std::max(a.row0, b.row0), std::min(a.row1, b.row1), std::max(a.col0, b.col0),
          std::min(a.col1, b.col1)};
}

std::vector<double> random_on(const Block &block, int grid, std::mt19937_64 &rng) {
  std::vector<double> v(static_cast<std::size_t>(grid * grid), 0.0);
  for (int r = block.row0; r < block.row1; ++r)
    for (int c = block.col0; c < block.col1; ++c)
      v[static_cast<std::size_t>(r * grid + c)] = lattice_value(rng);
  return v;
}

std::vector<double> cut(std::span<const double> phi, const Block &keep, int grid) {
  std::vector<double> out(phi.size(), 0.0);
  for (int r = 0; r < grid; ++r)
    for (int c = 0; c < grid; ++c)
      if (keep.contains(r, c))
        out[static_cast<std::size_t>(r * grid + c)] = phi[static_cast<std::size_t>(r * grid + c)];
  return out;
}

std::vector<double> act(std::span<const double> phi, const std::vector<std::size_t> &perm) {
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = phi[perm[i]];
  return out;
}

/// Drops rows equal (exactly) to an earlier row.
Rows unique_rows(Rows rows) {
  Rows out;
  for (auto &r : rows)
    if (std::find(out.begin(), out.end(), r) == out.end())
      out.push_back(std::move(r));
  return out;
}

Tabulation tabulate(const DomainPtr &domain, const Rows &rows) {
  Tabulation t;
  for (const auto &r : rows)
    t.emplace_back(domain, r);
  return t;
}

void add_pair(Instance &inst, const std::string &name, const std::string &source,
              const std::string &target, std::vector<std::string> T_names, const Rows &F,
              const Rows &F_prime) {
  const auto &src = inst.triple(source);
  const auto &dst = inst.triple(target);
  std::vector<std::size_t> assignment;
  for (const auto &n : T_names)
    assignment.push_back(static_cast<std::size_t>(
        std::find(dst.ops.begin(), dst.ops.end(), n) - dst.ops.begin()));
  auto T = std::make_shared<const TransformationMap>(src.triple->ops(), dst.triple->ops(),
                                                     std::move(assignment));
  const auto &y = dst.triple->domain();
  OperatorPair P(src.triple, dst.triple, std::move(T), tabulate(y, F), tabulate(y, F_prime));
  inst.add_operator(name, source, target, P);
}

std::vector<std::string> grid_labels(int grid) {
  std::vector<std::string> labels;
  for (int r = 0; r < grid; ++r)
    for (int c = 0; c < grid; ++c)
      labels.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
  return labels;
}

} // namespace

std::vector<std::size_t> grid_translation(int grid, GridOffset shift) {
  std::vector<std::size_t> perm(static_cast<std::size_t>(grid * grid));
  for (int r = 0; r < grid; ++r)
    for (int c = 0; c < grid; ++c)
      perm[static_cast<std::size_t>(r * grid + c)] = static_cast<std::size_t>(
          wrap(r - shift.row, grid) * grid + wrap(c - shift.col, grid));
  return perm;
}

std::vector<std::size_t> grid_quarter_turn(int m) {
  std::vector<std::size_t> perm(static_cast<std::size_t>(m * m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      perm[static_cast<std::size_t>(r * m + c)] = static_cast<std::size_t>(c * m + (m - 1 - r));
  return perm;
}

Instance squares_instance(const SquaresParams &p) {
  if (p.grid < 1 || p.side < 1 || p.members < 1)
    throw InvalidArgument("squares: grid, side and members must be positive");
  if (p.margin <= 0 || p.margin >= p.side)
    throw InvalidArgument("squares: margin must satisfy 0 < margin < side");
  auto fits = [&](int start) { return start >= 0 && start + p.side <= p.grid; };
  if (!fits(p.origin.row) || !fits(p.origin.col))
    throw InvalidArgument("squares: Q1 does not fit inside the grid");
  if (!fits(p.origin.row + p.shift.row) || !fits(p.origin.col + p.shift.col))
    throw InvalidArgument("squares: translated square does not fit inside the grid");

  const int g = p.grid;
  const Block q1{p.origin.row, p.origin.row + p.side, p.origin.col, p.origin.col + p.side};
  const Block q1p{q1.row0 + p.shift.row, q1.row1 + p.shift.row, q1.col0 + p.shift.col,
                  q1.col1 + p.shift.col};
  const Block q2{q1.row0 + p.margin, q1.row1 - p.margin, q1.col0 + p.margin, q1.col1 - p.margin};
  const Block q2p{q1p.row0 + p.margin, q1p.row1 - p.margin, q1p.col0 + p.margin,
                  q1p.col1 - p.margin};
  const auto translate = grid_translation(g, p.shift);
  const auto untranslate = grid_translation(g, {-p.shift.row, -p.shift.col});

  std::mt19937_64 rng(p.seed);
  Rows phi;
  for (int k = 0; k < p.members; ++k)
    phi.push_back(random_on(q1, g, rng));
  const Block overlap = intersect(q1, q1p);
  if (!overlap.empty()) {
    // chi lies in Q1 ∩ Q1′ and is itself the translate of a member of Φ
    auto chi = random_on(overlap, g, rng);
    phi.push_back(act(chi, untranslate));
    phi.push_back(chi);
  }
  phi = unique_rows(std::move(phi));

  Rows phi_prime;
  for (const auto &f : phi)
    phi_prime.push_back(act(f, translate));
  phi_prime.push_back(random_on(q1p, g, rng));
  phi_prime = unique_rows(std::move(phi_prime));

  Rows F, F_prime;
  for (const auto &f : phi)
    F.push_back(cut(f, q2, g));
  for (const auto &f : phi_prime)
    F_prime.push_back(cut(f, q2p, g));

  Instance inst;
  inst.add_domain("X", FiniteDomain::make(grid_labels(g)));
  inst.add_space("Phi", "X", phi);
  inst.add_space("PhiPrime", "X", phi_prime);
  inst.add_space("Psi", "X", unique_rows(F));
  inst.add_space("PsiPrime", "X", unique_rows(F_prime));
  inst.add_op("translate", "X", translate);
  inst.add_triple("source", "Phi", "PhiPrime", {"translate"});
  inst.add_triple("target", "Psi", "PsiPrime", {"translate"});

  if (p.overlap_equal) {
    const auto &phi_space = inst.spaces.at("Phi").space;
    const auto &domain = inst.domains.at("X");
    for (std::size_t j = 0; j < phi_prime.size(); ++j)
      if (auto i = space_membership(Measurement(domain, phi_prime[j]), phi_space))
        F_prime[j] = F[*i];
  }
  add_pair(inst, "cut", "source", "target", {"translate"}, F, F_prime);
  return inst;
}

Instance digit_instance() {
  constexpr int m = 7;
  static const char *const raster[m] = {"..###..", ".#.....", ".#.....", ".####..",
                                        ".#...#.", ".#...#.", "..###.."};
  std::vector<double> six;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      six.push_back(raster[r][c] == '#' ? 1.0 : 0.0);

  const auto r90 = grid_quarter_turn(m);
  std::vector<std::size_t> r180(r90.size()), r270(r90.size()), id(r90.size());
  for (std::size_t i = 0; i < r90.size(); ++i) {
    id[i] = i;
    r180[i] = r90[r90[i]];
  }
  for (std::size_t i = 0; i < r90.size(); ++i)
    r270[i] = r90[r180[i]];

  auto dilate = [&](std::span<const double> f) {
    std::vector<double> out(f.size());
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        double best = f[static_cast<std::size_t>(r * m + c)];
        const int dr[4] = {-1, 1, 0, 0};
        const int dc[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int rr = r + dr[k], cc = c + dc[k];
          if (rr >= 0 && rr < m && cc >= 0 && cc < m)
            best = std::max(best, f[static_cast<std::size_t>(rr * m + cc)]);
        }
        out[static_cast<std::size_t>(r * m + c)] = best;
      }
    return out;
  };

  const Rows phi{six};
  const Rows phi_prime{six, act(six, r90), act(six, r270)};
  Rows F{dilate(six)}, F_prime;
  for (const auto &f : phi_prime)
    F_prime.push_back(dilate(f));

  Instance inst;
  inst.add_domain("X", FiniteDomain::make(grid_labels(m)));
  inst.add_space("Phi", "X", phi);
  inst.add_space("PhiPrime", "X", phi_prime);
  inst.add_space("Psi", "X", F);
  inst.add_space("PsiPrime", "X", F_prime);
  inst.add_op("id", "X", id);
  inst.add_op("r090", "X", r90);
  inst.add_op("r180", "X", r180);
  inst.add_op("r270", "X", r270);
  inst.add_triple("source", "Phi", "PhiPrime", {"id", "r090", "r270"});
  inst.add_triple("all_turns", "Phi", "PhiPrime", {"id", "r090", "r180", "r270"});
  inst.add_triple("target", "Psi", "PsiPrime", {"id", "r090", "r270"});
  add_pair(inst, "dilate", "source", "target", {"id", "r090", "r270"}, F, F_prime);
  return inst;
}

std::vector<double> circular_convolution(std::span<const double> phi,
                                         std::span<const double> kernel) {
  const std::size_t n = phi.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < kernel.size(); ++k)
      acc += kernel[k] * phi[(i + k) % n];
    out[i] = acc;
  }
  return out;
}

Instance cyclic_instance(const CyclicParams &p) {
  if (p.n == 0 || p.members == 0)
    throw InvalidArgument("cyclic: n and members must be positive");
  auto shift_perm = [&](std::size_t k) {
    std::vector<std::size_t> perm(p.n);
    for (std::size_t i = 0; i < p.n; ++i)
      perm[i] = (i + k) % p.n;
    return perm;
  };

  std::vector<std::size_t> shifts;
  if (p.group) {
    for (std::size_t k = 0; k < p.n; ++k)
      shifts.push_back(k);
  } else {
    if (p.include_identity)
      shifts.push_back(0);
    for (std::size_t k : p.shifts)
      if (std::find(shifts.begin(), shifts.end(), k % p.n) == shifts.end())
        shifts.push_back(k % p.n);
  }

  std::mt19937_64 rng(p.seed);
  Rows seeds;
  for (std::size_t k = 0; k < p.members; ++k) {
    std::vector<double> v(p.n);
    for (auto &x : v)
      x = lattice_value(rng);
    seeds.push_back(std::move(v));
  }

  Rows phi, phi_prime;
  if (p.group) {
    for (const auto &s : seeds)
      for (std::size_t k = 0; k < p.n; ++k)
        phi.push_back(act(s, shift_perm(k)));
    phi = unique_rows(std::move(phi));
    phi_prime = phi;
  } else {
    phi = unique_rows(seeds);
    phi_prime = phi;
    for (const auto &f : phi)
      for (std::size_t k : shifts)
        phi_prime.push_back(act(f, shift_perm(k)));
    phi_prime = unique_rows(std::move(phi_prime));
  }

  std::vector<Rows> F(p.kernels.size()), F_prime(p.kernels.size());
  Rows psi, psi_prime;
  for (std::size_t j = 0; j < p.kernels.size(); ++j) {
    for (const auto &f : phi)
      F[j].push_back(circular_convolution(f, p.kernels[j]));
    for (const auto &f : phi_prime)
      F_prime[j].push_back(circular_convolution(f, p.kernels[j]));
    psi.insert(psi.end(), F[j].begin(), F[j].end());
    psi_prime.insert(psi_prime.end(), F_prime[j].begin(), F_prime[j].end());
  }

  Instance inst;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < p.n; ++i)
    labels.push_back("c" + std::to_string(i));
  inst.add_domain("Z", FiniteDomain::make(std::move(labels)));
  std::vector<std::string> op_names;
  for (std::size_t k : shifts) {
    op_names.push_back("shift" + std::to_string(k));
    inst.add_op(op_names.back(), "Z", shift_perm(k));
  }
  inst.add_space("Phi", "Z", phi);
  if (p.group) {
    inst.add_space("Psi", "Z", unique_rows(psi));
    inst.add_triple("source", "Phi", "Phi", op_names);
    inst.add_triple("target", "Psi", "Psi", op_names);
  } else {
    inst.add_space("PhiPrime", "Z", phi_prime);
    inst.add_space("Psi", "Z", unique_rows(psi));
    inst.add_space("PsiPrime", "Z", unique_rows(psi_prime));
    inst.add_triple("source", "Phi", "PhiPrime", op_names);
    inst.add_triple("target", "Psi", "PsiPrime", op_names);
  }
  for (std::size_t j = 0; j < p.kernels.size(); ++j)
    add_pair(inst, "conv" + std::to_string(j), "source", "target", op_names, F[j], F_prime[j]);
  return inst;
}

} // namespace pgeneo
