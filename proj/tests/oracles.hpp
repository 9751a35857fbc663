#pragma once

// Brute-force reference implementations used only by the test suite. They
// enumerate instead of aggregating and sum in reverse order, so they share no
// code path with the library.

#include <algorithm>
#include <cmath>
#include <vector>

#include "czd/badset.hpp"
#include "czd/whitney.hpp"

namespace czd::oracle {

// Dyadic maximal function by exhaustive enumeration of every dyadic cube.
inline ScalarField maximal_function_bruteforce(const ScalarField& u) {
  const GridSpec& g = u.spec;
  ScalarField out(g);
  const int K = g.max_level();
  const std::size_t total = g.cell_count();
  for (std::size_t c = 0; c < total; ++c) {
    const auto idx = g.unflat(c);
    double best = 0.0;
    for (int k = 0; k <= K; ++k) {
      const int block = g.cells >> k;
      // the level-k dyadic cube containing this cell
      std::array<int, 3> lo{0, 0, 0};
      for (int d = 0; d < g.dim; ++d) lo[d] = (idx[d] / block) * block;
      double sum = 0;
      std::size_t count = 0;
      std::array<int, 3> ci = lo;
      while (true) {
        sum += u[g.flat(ci)];
        ++count;
        int d = g.dim - 1;
        while (d >= 0) {
          if (++ci[d] < lo[d] + block) break;
          ci[d] = lo[d];
          --d;
        }
        if (d < 0) break;
      }
      best = std::max(best, sum / static_cast<double>(count));
    }
    out[c] = best;
  }
  return out;
}

// Chebyshev box distance from a dyadic cube to the complement of omega,
// adjacent cells at distance 1, by direct minimisation over all F cells.
inline int cube_distance_bruteforce(const RegionMask& omega, int level,
                                    const std::array<int, 3>& index) {
  const GridSpec& g = omega.spec;
  const int block = g.cells >> level;
  int best = 1 << 28;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    if (omega.in_omega[c]) continue;
    const auto idx = g.unflat(c);
    int cheb = 0;
    for (int d = 0; d < g.dim; ++d) {
      const int lo = index[d] * block, hi = lo + block - 1;
      int gap = 0;
      if (idx[d] < lo) gap = lo - idx[d];
      else if (idx[d] > hi) gap = idx[d] - hi;
      cheb = std::max(cheb, gap);
    }
    best = std::min(best, cheb);
  }
  return best;
}

// Whitney selection by exhaustive enumeration of every dyadic cube: a cube is
// selected iff it passes the rule and its parent fails.
inline std::vector<DyadicCube> whitney_bruteforce(const RegionMask& omega) {
  const GridSpec& g = omega.spec;
  const int K = g.max_level();
  auto passes = [&](int level, const std::array<int, 3>& index) {
    const int block = g.cells >> level;
    std::array<int, 3> ci{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) ci[d] = index[d] * block;
    std::array<int, 3> lo = ci;
    while (true) {
      if (!omega.in_omega[g.flat(ci)]) return false;
      int d = g.dim - 1;
      while (d >= 0) {
        if (++ci[d] < lo[d] + block) break;
        ci[d] = lo[d];
        --d;
      }
      if (d < 0) break;
    }
    return cube_distance_bruteforce(omega, level, index) >= block;
  };

  std::vector<DyadicCube> out;
  for (int k = 0; k <= K; ++k) {
    const int per_axis = 1 << k;
    std::array<int, 3> idx{0, 0, 0};
    const int dims = g.dim;
    while (true) {
      if (passes(k, idx)) {
        bool parent_ok = false;
        if (k > 0) {
          std::array<int, 3> p{0, 0, 0};
          for (int d = 0; d < dims; ++d) p[d] = idx[d] >> 1;
          parent_ok = passes(k - 1, p);
        }
        if (!parent_ok) out.push_back(DyadicCube{k, idx});
      }
      int d = dims - 1;
      while (d >= 0) {
        if (++idx[d] < per_axis) break;
        idx[d] = 0;
        --d;
      }
      if (d < 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const DyadicCube& a, const DyadicCube& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.index < b.index;
  });
  return out;
}

// All-pairs closed-dilate intersection test in floating point geometry
// (independent of the integer-unit route in the library).
inline std::vector<std::vector<int>> neighbor_sets_bruteforce(const WhitneyDecomposition& w) {
  const GridSpec& g = w.spec;
  const int n = static_cast<int>(w.cubes.size());
  std::vector<std::vector<int>> sets(n);
  for (int m = n - 1; m >= 0; --m) {
    for (int i = n - 1; i >= 0; --i) {
      bool meet = true;
      for (int d = 0; d < g.dim; ++d) {
        const double h = g.spacing();
        const double li = w.cubes[i].side(g), lm = w.cubes[m].side(g);
        const double ci = g.origin[d] + (w.cubes[i].cell_lo(g, d)) * h + 0.5 * li;
        const double cm = g.origin[d] + (w.cubes[m].cell_lo(g, d)) * h + 0.5 * lm;
        if (std::abs(ci - cm) > li + lm + 1e-12) {
          meet = false;
          break;
        }
      }
      if (meet) sets[m].insert(sets[m].begin(), i);
    }
  }
  return sets;
}

}  // namespace czd::oracle
