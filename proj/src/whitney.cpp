#include "czd/whitney.hpp"

#include <algorithm>

namespace czd {

namespace {

constexpr int kInfDist = 1 << 28;

std::size_t pow_int(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::size_t cube_flat(const std::array<int, 3>& idx, int per_axis, int dim) {
  std::size_t f = 0;
  for (int d = 0; d < dim; ++d)
    f = f * static_cast<std::size_t>(per_axis) + static_cast<std::size_t>(idx[d]);
  return f;
}

// Half-neighborhood offsets (lexicographically negative) for the chamfer passes.
std::vector<std::array<int, 3>> half_neighborhood(int dim) {
  std::vector<std::array<int, 3>> offs;
  const int lo = -1, hi = 1;
  std::array<int, 3> o{0, 0, 0};
  for (int a = (dim >= 1 ? lo : 0); a <= (dim >= 1 ? hi : 0); ++a)
    for (int b = (dim >= 2 ? lo : 0); b <= (dim >= 2 ? hi : 0); ++b)
      for (int c = (dim >= 3 ? lo : 0); c <= (dim >= 3 ? hi : 0); ++c) {
        o = {a, b, c};
        // keep strictly "before" offsets in raster order
        bool before = false;
        for (int d = 0; d < dim; ++d) {
          if (o[d] < 0) { before = true; break; }
          if (o[d] > 0) { before = false; break; }
        }
        if (before) offs.push_back(o);
      }
  return offs;
}

}  // namespace

std::vector<int> chebyshev_distance_to_complement(const RegionMask& omega) {
  const GridSpec& g = omega.spec;
  const std::size_t total = g.cell_count();
  std::vector<int> dist(total);
  for (std::size_t c = 0; c < total; ++c) dist[c] = omega.in_omega[c] ? kInfDist : 0;

  const auto offs = half_neighborhood(g.dim);
  auto relax = [&](std::size_t c, const std::array<int, 3>& idx, int sign) {
    int best = dist[c];
    for (const auto& o : offs) {
      std::array<int, 3> q{0, 0, 0};
      bool ok = true;
      for (int d = 0; d < g.dim; ++d) {
        q[d] = idx[d] + sign * o[d];
        if (q[d] < 0 || q[d] >= g.cells) { ok = false; break; }
      }
      if (!ok) continue;
      best = std::min(best, dist[g.flat(q)] + 1);
    }
    dist[c] = best;
  };

  // two raster passes; exact for the Chebyshev metric (unit king moves)
  for (std::size_t c = 0; c < total; ++c) relax(c, g.unflat(c), +1);
  for (std::size_t c = total; c-- > 0;) relax(c, g.unflat(c), -1);
  return dist;
}

WhitneyDecomposition whitney_decompose(const RegionMask& omega) {
  const GridSpec& g = omega.spec;
  WhitneyDecomposition w;
  w.spec = g;
  w.omega = omega;
  if (omega.empty()) return w;
  if (omega.full())
    throw std::runtime_error(
        "whitney_decompose: bad set is the whole box (good set empty); "
        "increase alpha");

  const int K = g.max_level();
  const int dim = g.dim;
  const std::vector<int> dt = chebyshev_distance_to_complement(omega);

  // bottom-up aggregates per dyadic level
  std::vector<std::vector<int>> min_dt(K + 1);
  std::vector<std::vector<std::uint8_t>> any_in(K + 1), all_in(K + 1);
  min_dt[K] = dt;
  any_in[K].resize(dt.size());
  all_in[K].resize(dt.size());
  for (std::size_t c = 0; c < dt.size(); ++c)
    any_in[K][c] = all_in[K][c] = omega.in_omega[c];

  for (int k = K - 1; k >= 0; --k) {
    const int per_axis = 1 << k;
    const std::size_t count = pow_int(static_cast<std::size_t>(per_axis), dim);
    min_dt[k].assign(count, kInfDist);
    any_in[k].assign(count, 0);
    all_in[k].assign(count, 1);
    const int child_axis = per_axis << 1;
    const std::size_t nchild = min_dt[k + 1].size();
    for (std::size_t cf = 0; cf < nchild; ++cf) {
      std::array<int, 3> p{0, 0, 0};
      std::size_t rem = cf;
      for (int d = dim - 1; d >= 0; --d) {
        p[d] = static_cast<int>(rem % child_axis) >> 1;
        rem /= child_axis;
      }
      const std::size_t pf = cube_flat(p, per_axis, dim);
      min_dt[k][pf] = std::min(min_dt[k][pf], min_dt[k + 1][cf]);
      any_in[k][pf] |= any_in[k + 1][cf];
      all_in[k][pf] &= all_in[k + 1][cf];
    }
  }

  // selection: a cube passes iff fully inside Omega and its box distance to F
  // (adjacent cells at distance 1) is at least its side in cells; select the
  // maximal passing cubes by stopping the descent at the first pass
  auto passes = [&](int k, std::size_t f) {
    return all_in[k][f] && min_dt[k][f] >= (g.cells >> k);
  };
  struct Item { int level; std::array<int, 3> idx; };
  std::vector<Item> stack{{0, {0, 0, 0}}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const std::size_t f = cube_flat(it.idx, 1 << it.level, dim);
    if (!any_in[it.level][f]) continue;
    if (passes(it.level, f)) {
      w.cubes.push_back(DyadicCube{it.level, it.idx});
      continue;
    }
    if (it.level == K) continue;  // cannot happen for Omega cells: unit cubes always pass
    const int nchildren = 1 << dim;
    for (int ch = 0; ch < nchildren; ++ch) {
      Item c{it.level + 1, it.idx};
      for (int d = 0; d < dim; ++d)
        c.idx[d] = (it.idx[d] << 1) | ((ch >> (dim - 1 - d)) & 1);
      stack.push_back(c);
    }
  }

  std::sort(w.cubes.begin(), w.cubes.end(), [](const DyadicCube& a, const DyadicCube& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.index < b.index;
  });

  w.neighbors = neighbor_sets(w);
  w.overlap = overlap_constant(w);
  return w;
}

std::vector<std::vector<int>> neighbor_sets(const WhitneyDecomposition& w) {
  const GridSpec& g = w.spec;
  const int n = static_cast<int>(w.cubes.size());
  std::vector<std::vector<int>> sets(n);
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      bool meet = true;
      for (int d = 0; d < g.dim; ++d) {
        if (w.cubes[i].q_lo(g, d) > w.cubes[m].q_hi(g, d) ||
            w.cubes[m].q_lo(g, d) > w.cubes[i].q_hi(g, d)) {
          meet = false;
          break;
        }
      }
      if (meet) sets[m].push_back(i);
    }
  }
  return sets;
}

std::vector<std::size_t> dilate_cells(const WhitneyDecomposition& w, int i) {
  const GridSpec& g = w.spec;
  const DyadicCube& c = w.cubes[i];
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int d = 0; d < g.dim; ++d) {
    // cell centers at (2c+1) half-cells; strict interior of [q_lo, q_hi]
    const long long ql = c.q_lo(g, d), qh = c.q_hi(g, d);
    long long first = ql / 2;          // smallest c with 2c+1 > ql
    while (2 * first + 1 <= ql) ++first;
    long long last = qh / 2;           // largest c with 2c+1 < qh
    while (2 * last + 1 >= qh) --last;
    lo[d] = static_cast<int>(std::max(0LL, first));
    hi[d] = static_cast<int>(std::min(static_cast<long long>(g.cells - 1), last));
    if (lo[d] > hi[d]) return {};
  }
  std::vector<std::size_t> out;
  std::array<int, 3> idx = lo;
  while (true) {
    out.push_back(w.spec.flat(idx));
    int d = g.dim - 1;
    while (d >= 0) {
      if (++idx[d] <= hi[d]) break;
      idx[d] = lo[d];
      --d;
    }
    if (d < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int overlap_constant(const WhitneyDecomposition& w) {
  if (w.cubes.empty()) return 0;
  std::vector<int> count(w.spec.cell_count(), 0);
  for (int i = 0; i < static_cast<int>(w.cubes.size()); ++i)
    for (std::size_t c : dilate_cells(w, i)) ++count[c];
  return *std::max_element(count.begin(), count.end());
}

double cube_sum_measure(const WhitneyDecomposition& w) {
  double total = 0;
  for (const DyadicCube& c : w.cubes) {
    double m = 1;
    for (int d = 0; d < w.spec.dim; ++d) m *= 2.0 * c.side(w.spec);
    total += m;
  }
  return total;
}

}  // namespace czd
