#ifndef PGENEO_BUILDERS_HPP
#define PGENEO_BUILDERS_HPP

#include "pgeneo/instance.hpp"

#include <cstdint>
#include <vector>

namespace pgeneo {

/// Integer cell offset (row, column) on a square grid.
struct GridOffset {
  int row = 0;
  int col = 0;
};

/**
 * Nested squares on a grid × grid raster, indexed row-major. Q1 is the
 * side × side block at `origin`, Q1′ its translate by `shift`; Q2 and Q2′ are
 * the blocks obtained by removing `margin` cells on every side. Φ holds
 * images supported in Q1 and Φ′ their translates plus one extra image in Q1′.
 * The operator "cut" keeps values on Q2 (resp. Q2′) and zeroes the rest.
 */
struct SquaresParams {
  int grid = 16;
  int side = 8;
  int margin = 2;
  GridOffset shift{4, 4};
  GridOffset origin{1, 1};
  int members = 4;
  std::uint64_t seed = 7;
  /// Replace F′ by F on members of Φ ∩ Φ′ (breaks equivariance on purpose).
  bool overlap_equal = false;
};

Instance squares_instance(const SquaresParams &params);

/// Grid row-major permutation realizing φ ↦ φ(· − shift) with wrap-around.
std::vector<std::size_t> grid_translation(int grid, GridOffset shift);

/// Quarter-turn rotation of an m × m raster about its center.
std::vector<std::size_t> grid_quarter_turn(int m);

/**
 * A 7 × 7 raster "6" where quarter turns are admissible and the half turn
 * (which reads as "9") is not. Triple "source" uses {id, r90, r270};
 * triple "all_turns" adds r180 and fails validation.
 */
Instance digit_instance();

/**
 * Cyclic domain Z_n with circular-convolution operators.
 * group = true: S is every shift and Φ = Φ′ is the orbit of random seeds.
 * group = false: S is `shifts` and Φ′ = Φ ∪ ΦS.
 */
struct CyclicParams {
  std::size_t n = 8;
  std::size_t members = 3;
  std::uint64_t seed = 1;
  bool group = false;
  std::vector<std::size_t> shifts{1, 2};
  bool include_identity = true;
  std::vector<std::vector<double>> kernels{{0.5, 0.5}, {0.25, 0.5, 0.25}};
};

Instance cyclic_instance(const CyclicParams &params);

/// Circular convolution (w ⋆ φ)(i) = Σ_k w_k φ((i + k) mod n).
std::vector<double> circular_convolution(std::span<const double> phi,
                                         std::span<const double> kernel);

} // namespace pgeneo

#endif
