#include "czd/decomposition.hpp"

#include <algorithm>
#include <unordered_map>

namespace czd {

std::vector<double> cube_means(const ScalarField& f, const WhitneyDecomposition& w) {
  std::vector<double> means(w.cubes.size(), 0.0);
  for (int i = 0; i < static_cast<int>(w.cubes.size()); ++i) {
    const auto cells = dilate_cells(w, i);
    double acc = 0.0;
    for (std::size_t c : cells) acc += f[c];
    means[i] = cells.empty() ? 0.0 : acc / static_cast<double>(cells.size());
  }
  return means;
}

namespace {

struct CellEval {
  std::vector<int> idx;
  std::vector<double> chi;
  std::vector<std::array<double, 3>> grad;
};

// evaluation of every active bump at the center of each cell in the union of
// the dilate supports, cells in ascending order for a fixed accumulation order
struct EvalCache {
  std::vector<std::size_t> cells;
  std::vector<CellEval> evals;
  std::unordered_map<std::size_t, std::size_t> pos;
};

EvalCache eval_union(const WhitneyDecomposition& w, const PartitionOfUnity& pu) {
  EvalCache cache;
  std::vector<std::uint8_t> seen(w.spec.cell_count(), 0);
  for (int i = 0; i < static_cast<int>(w.cubes.size()); ++i)
    for (std::size_t c : pu.support_cells(i)) seen[c] = 1;
  for (std::size_t c = 0; c < seen.size(); ++c)
    if (seen[c]) cache.cells.push_back(c);
  cache.evals.resize(cache.cells.size());
  for (std::size_t k = 0; k < cache.cells.size(); ++k) {
    pu.eval_at_cell(cache.cells[k], cache.evals[k].idx, cache.evals[k].chi,
                    cache.evals[k].grad);
    cache.pos.emplace(cache.cells[k], k);
  }
  return cache;
}

}  // namespace

std::vector<SparseField> bad_parts(const ScalarField& f, const WhitneyDecomposition& w,
                                   const PartitionOfUnity& pu,
                                   const std::vector<double>& means) {
  std::vector<SparseField> bad(w.cubes.size());
  std::vector<int> idx;
  std::vector<double> chi;
  std::vector<std::array<double, 3>> grad;
  // ascending cell order so each sparse field comes out sorted
  std::vector<std::size_t> cells;
  {
    std::vector<std::uint8_t> seen(f.spec.cell_count(), 0);
    for (int i = 0; i < static_cast<int>(w.cubes.size()); ++i)
      for (std::size_t c : pu.support_cells(i)) seen[c] = 1;
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (seen[c]) cells.push_back(c);
  }
  for (std::size_t c : cells) {
    pu.eval_at_cell(c, idx, chi, grad);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      bad[idx[k]].cells.push_back(c);
      bad[idx[k]].values.push_back((f[c] - means[idx[k]]) * chi[k]);
    }
  }
  return bad;
}

ScalarField good_part(const ScalarField& f, const GridSpec& spec,
                      const std::vector<SparseField>& bad) {
  ScalarField g = f;
  (void)spec;
  for (const SparseField& b : bad)
    for (std::size_t k = 0; k < b.cells.size(); ++k) g[b.cells[k]] -= b.values[k];
  return g;
}

VectorField h_direct_field(const ScalarField& f, const PartitionOfUnity& pu,
                           const std::vector<double>& means) {
  const GridSpec& g = f.spec;
  VectorField h(g);
  std::vector<int> idx;
  std::vector<double> chi;
  std::vector<std::array<double, 3>> grad;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    pu.eval_at_cell(c, idx, chi, grad);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (int d = 0; d < g.dim; ++d)
        h.at(c, d) -= (f[c] - means[idx[k]]) * grad[k][d];
  }
  return h;
}

VectorField h_renorm_field(const WhitneyDecomposition& w, const PartitionOfUnity& pu,
                           const std::vector<double>& means) {
  const GridSpec& g = w.spec;
  VectorField h(g);
  std::vector<int> idx;
  std::vector<double> chi;
  std::vector<std::array<double, 3>> grad;
  std::vector<int> pos;  // cube index -> position in idx, or -1
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    pu.eval_at_cell(c, idx, chi, grad);
    if (idx.empty()) continue;
    pos.assign(w.cubes.size(), -1);
    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const int m = idx[k];
      std::array<double, 3> inner{0, 0, 0};
      for (int i : w.neighbors[m]) {
        const int q = pos[i];
        if (q < 0) continue;  // grad chi_i vanishes at this cell
        for (int d = 0; d < g.dim; ++d)
          inner[d] += (means[m] - means[i]) * grad[q][d];
      }
      for (int d = 0; d < g.dim; ++d) h.at(c, d) -= inner[d] * chi[k];
    }
  }
  return h;
}

CZDecomposition decompose_with_mask(const ScalarField& f, const RegionMask& omega,
                                    double alpha, double p) {
  CZDecomposition out;
  out.f = f;
  out.alpha = alpha;
  out.p = p;
  out.omega = omega;
  out.whitney = whitney_decompose(omega);
  out.pu = PartitionOfUnity(out.whitney);
  out.means = cube_means(f, out.whitney);
  out.bad = bad_parts(f, out.whitney, out.pu, out.means);
  out.good = good_part(f, f.spec, out.bad);
  out.h_direct = h_direct_field(f, out.pu, out.means);
  out.h_renorm = h_renorm_field(out.whitney, out.pu, out.means);
  return out;
}

CZDecomposition decompose(const ScalarField& f, double alpha, double p) {
  return decompose_with_mask(f, bad_set(f, alpha, p), alpha, p);
}

GradientIdentityResidual gradient_identity_residual(const CZDecomposition& czd,
                                                    int collar_cells) {
  const GridSpec& g = czd.f.spec;
  const VectorField gg = gradient(czd.good);
  const VectorField gf = gradient(czd.f);

  // Chebyshev distance to the Omega/F interface: distance to F inside Omega,
  // distance to Omega inside F
  std::vector<int> dist_to_f = chebyshev_distance_to_complement(czd.omega);
  RegionMask flipped = czd.omega;
  for (auto& b : flipped.in_omega) b = b ? 0 : 1;
  std::vector<int> dist_to_omega = chebyshev_distance_to_complement(flipped);

  GradientIdentityResidual r;
  r.collar_cells = collar_cells;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    double mag = 0;
    for (int d = 0; d < g.dim; ++d) {
      double v = gg.at(c, d) - czd.h_renorm.at(c, d);
      if (!czd.omega.in_omega[c]) v -= gf.at(c, d);
      mag += v * v;
    }
    mag = std::sqrt(mag);
    r.overall = std::max(r.overall, mag);
    const int dist = czd.omega.in_omega[c] ? dist_to_f[c] : dist_to_omega[c];
    if (dist <= collar_cells)
      r.near_boundary = std::max(r.near_boundary, mag);
    else
      r.away = std::max(r.away, mag);
  }
  return r;
}

std::vector<int> truncation_ordering(const WhitneyDecomposition& w, TruncationOrder kind,
                                     std::uint64_t seed) {
  std::vector<int> order(w.cubes.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) order[i] = i;
  if (kind == TruncationOrder::SeededPermutation) {
    // explicit Fisher-Yates so the permutation is identical on every platform
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng() % i]);
  }
  // cubes are stored by ascending level, i.e. size-descending, so the identity
  // permutation is the largest-first ordering
  return order;
}

TruncationStudy truncation_study(const CZDecomposition& czd, const TestFunction& phi,
                                 const std::vector<int>& ordering) {
  const GridSpec& g = czd.f.spec;
  phi.require_inside(g);
  const WhitneyDecomposition& w = czd.whitney;
  const int ncubes = static_cast<int>(w.cubes.size());
  if (static_cast<int>(ordering.size()) != ncubes)
    throw std::invalid_argument("truncation_study: ordering size mismatch");

  TruncationStudy study;
  study.ordering = ordering;
  study.pairing_norms.assign(ncubes + 1, 0.0);
  if (ncubes == 0) return study;

  double cellvol = 1.0;
  for (int d = 0; d < g.dim; ++d) cellvol *= g.spacing();

  auto cache = eval_union(w, czd.pu);

  // incr[j] = sum_{m : j in I_m} int b_m grad chi_j phi; then
  // T(J) = sum_{j in J} incr[j]
  std::vector<std::array<double, 3>> incr(ncubes, {0, 0, 0});
  for (std::size_t kc = 0; kc < cache.cells.size(); ++kc) {
    const std::size_t cell = cache.cells[kc];
    const CellEval& ev = cache.evals[kc];
    const double phiv = phi(g.center(g.unflat(cell)), g.dim);
    if (phiv == 0.0) continue;
    for (std::size_t km = 0; km < ev.idx.size(); ++km) {
      const int m = ev.idx[km];
      const double bm = (czd.f[cell] - czd.means[m]) * ev.chi[km];
      const double s = bm * phiv * cellvol;
      if (s == 0.0) continue;
      for (std::size_t kj = 0; kj < ev.idx.size(); ++kj) {
        const int j = ev.idx[kj];
        if (!std::binary_search(w.neighbors[m].begin(), w.neighbors[m].end(), j)) continue;
        for (int d = 0; d < g.dim; ++d) incr[j][d] += s * ev.grad[kj][d];
      }
    }
  }

  std::array<double, 3> acc{0, 0, 0};
  for (int t = 0; t < ncubes; ++t) {
    for (int d = 0; d < g.dim; ++d) acc[d] += incr[ordering[t]][d];
    double mag = 0;
    for (int d = 0; d < g.dim; ++d) mag += acc[d] * acc[d];
    study.pairing_norms[t + 1] = std::sqrt(mag);
  }
  study.final_norm = study.pairing_norms.back();

  // bounded-residual track: for each m, grow R_{m,J} over its support cells
  // following the ordering and record the worst l_m * sup |R|
  for (int m = 0; m < ncubes; ++m) {
    const auto& cells = czd.pu.support_cells(m);
    std::vector<std::array<double, 3>> R(cells.size(), {0, 0, 0});
    const double lm = w.cubes[m].side(g);
    for (int j : ordering) {
      if (!std::binary_search(w.neighbors[m].begin(), w.neighbors[m].end(), j)) continue;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const CellEval& ev = cache.evals[cache.pos.at(cells[k])];
        for (std::size_t kj = 0; kj < ev.idx.size(); ++kj) {
          if (ev.idx[kj] != j) continue;
          for (int d = 0; d < g.dim; ++d) R[k][d] += ev.grad[kj][d];
        }
        double mag = 0;
        for (int d = 0; d < g.dim; ++d) mag += R[k][d] * R[k][d];
        study.max_scaled_residual = std::max(study.max_scaled_residual, lm * std::sqrt(mag));
      }
    }
  }
  return study;
}

CounterexampleRow counterexample_row(const CZDecomposition& czd) {
  const GridSpec& g = czd.f.spec;
  if (czd.omega.empty())
    throw std::runtime_error("counterexample demo requires a nonempty bad set");

  ScalarField s(g);
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    s[c] = czd.pu.sum_chi(g.center(g.unflat(c)));

  CounterexampleRow row;
  row.cells = g.cells;
  row.h_grid = g.spacing();
  row.indicator_gradient_sup = lp_norm(gradient(s), kInfinityP);
  row.h_renorm_sup = lp_norm(czd.h_renorm, kInfinityP);
  return row;
}

}  // namespace czd
