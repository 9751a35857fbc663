#pragma once

#include "czd/badset.hpp"

namespace czd {

/// Dyadic cube of the root box: level k and integer multi-index in [0, 2^k)^n.
struct DyadicCube {
  int level = 0;
  std::array<int, 3> index{0, 0, 0};

  /// Cells per axis covered by this cube.
  int block(const GridSpec& g) const { return g.cells >> level; }
  double side(const GridSpec& g) const { return g.side / (1 << level); }

  /// Lowest cell index per axis.
  int cell_lo(const GridSpec& g, int d) const { return index[d] * block(g); }

  /// Geometry in half-cell units (u = h/2). The cube spans [w_lo, w_hi],
  /// the dilate Q = 2W spans [q_lo, q_hi]. All integers, so membership and
  /// intersection tests are exact.
  long long w_lo(const GridSpec& g, int d) const {
    return 2LL * cell_lo(g, d);
  }
  long long w_hi(const GridSpec& g, int d) const {
    return 2LL * cell_lo(g, d) + 2LL * block(g);
  }
  long long q_lo(const GridSpec& g, int d) const {
    return 2LL * cell_lo(g, d) - block(g);
  }
  long long q_hi(const GridSpec& g, int d) const {
    return 2LL * cell_lo(g, d) + 3LL * block(g);
  }

  bool operator==(const DyadicCube& o) const {
    return level == o.level && index == o.index;
  }
};

struct WhitneyDecomposition {
  GridSpec spec;
  RegionMask omega;
  std::vector<DyadicCube> cubes;            // sorted by (level, multi-index)
  std::vector<std::vector<int>> neighbors;  // I_m: indices i with closed Q_i meeting closed Q_m
  int overlap = 0;                          // N = max cells covered by dilates
};

/// Whitney decomposition of Omega: maximal dyadic cubes W contained in Omega
/// with box distance to F (max-metric, cell granularity, adjacent boxes at
/// distance h) at least the side length of W. Guarantees exact coverage of
/// Omega's cells and containment of the dilates' cell masks in Omega.
/// Throws if Omega is the whole box.
WhitneyDecomposition whitney_decompose(const RegionMask& omega);

std::vector<std::vector<int>> neighbor_sets(const WhitneyDecomposition& w);
int overlap_constant(const WhitneyDecomposition& w);

/// Sum of dilate measures, sum_i (2 l_i)^n.
double cube_sum_measure(const WhitneyDecomposition& w);

/// Cells whose centers lie strictly inside the dilate Q_i (the support cells
/// of b_i and of the normalized bump chi_i).
std::vector<std::size_t> dilate_cells(const WhitneyDecomposition& w, int i);

/// Exact Chebyshev distance (in cells) from every cell to the nearest F cell;
/// 0 on F itself, 1 for cells adjacent to F.
std::vector<int> chebyshev_distance_to_complement(const RegionMask& omega);

}  // namespace czd
