#include "czd/partition.hpp"

#include <algorithm>

namespace czd {

namespace {

// quintic smoothstep on [0,1]: C^2 joins, zero slope at both ends
inline void smoothstep(double t, double& s, double& ds) {
  s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  ds = 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

// one tensor factor of the bump and its derivative w.r.t. the coordinate
inline void axis_factor(double delta, double inner, double outer, double& f, double& df) {
  const double a = std::abs(delta);
  if (a >= outer) {
    f = 0.0;
    df = 0.0;
  } else if (a <= inner) {
    f = 1.0;
    df = 0.0;
  } else {
    double s, ds;
    smoothstep((outer - a) / (outer - inner), s, ds);
    f = s;
    df = -ds / (outer - inner) * (delta > 0 ? 1.0 : -1.0);
  }
}

}  // namespace

double BumpDescriptor::value(const std::array<double, 3>& x_cells, int dim) const {
  double v = 1.0;
  for (int d = 0; d < dim; ++d) {
    double f, df;
    axis_factor(x_cells[d] - center_cells[d], inner_cells, outer_cells, f, df);
    if (f == 0.0) return 0.0;
    v *= f;
  }
  return v;
}

void BumpDescriptor::value_and_gradient(const std::array<double, 3>& x_cells, int dim,
                                        double& val, std::array<double, 3>& grad_cells) const {
  std::array<double, 3> f{1, 1, 1}, df{0, 0, 0};
  for (int d = 0; d < dim; ++d)
    axis_factor(x_cells[d] - center_cells[d], inner_cells, outer_cells, f[d], df[d]);
  val = 1.0;
  for (int d = 0; d < dim; ++d) val *= f[d];
  for (int d = 0; d < dim; ++d) {
    double g = df[d];
    for (int e = 0; e < dim; ++e)
      if (e != d) g *= f[e];
    grad_cells[d] = g;
  }
}

PartitionOfUnity::PartitionOfUnity(const WhitneyDecomposition& w) : spec_(w.spec) {
  const GridSpec& g = spec_;
  const int n = static_cast<int>(w.cubes.size());
  bumps_.resize(n);
  support_.resize(n);
  cell_cubes_.assign(g.cell_count(), {});

  for (int i = 0; i < n; ++i) {
    const DyadicCube& c = w.cubes[i];
    BumpDescriptor& b = bumps_[i];
    b.cube = i;
    const double block = static_cast<double>(c.block(g));
    for (int d = 0; d < g.dim; ++d)
      b.center_cells[d] = static_cast<double>(c.cell_lo(g, d)) + 0.5 * block;
    b.inner_cells = 0.5 * block;  // plateau covers W
    b.outer_cells = block;        // support is Q = 2W

    support_[i] = dilate_cells(w, i);

    // cells whose closed box meets the closed dilate: candidate cells for
    // point evaluation anywhere inside them
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    bool any = true;
    for (int d = 0; d < g.dim; ++d) {
      const long long ql = c.q_lo(g, d), qh = c.q_hi(g, d);
      long long first = ql / 2 - 2;
      while (2 * first + 2 < ql) ++first;
      long long last = qh / 2 + 2;
      while (2 * last > qh) --last;
      lo[d] = static_cast<int>(std::max(0LL, first));
      hi[d] = static_cast<int>(std::min(static_cast<long long>(g.cells - 1), last));
      if (lo[d] > hi[d]) any = false;
    }
    if (!any) continue;
    std::array<int, 3> idx = lo;
    while (true) {
      cell_cubes_[g.flat(idx)].push_back(i);
      int d = g.dim - 1;
      while (d >= 0) {
        if (++idx[d] <= hi[d]) break;
        idx[d] = lo[d];
        --d;
      }
      if (d < 0) break;
    }
  }
}

std::array<double, 3> PartitionOfUnity::to_cells(const std::array<double, 3>& x) const {
  std::array<double, 3> t{0, 0, 0};
  const double h = spec_.spacing();
  for (int d = 0; d < spec_.dim; ++d) t[d] = (x[d] - spec_.origin[d]) / h;
  return t;
}

std::size_t PartitionOfUnity::cell_of(const std::array<double, 3>& x_cells) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < spec_.dim; ++d) {
    int i = static_cast<int>(std::floor(x_cells[d]));
    idx[d] = std::clamp(i, 0, spec_.cells - 1);
  }
  return spec_.flat(idx);
}

double PartitionOfUnity::chi(int i, const std::array<double, 3>& x) const {
  const auto xc = to_cells(x);
  const double xi = bumps_[i].value(xc, spec_.dim);
  if (xi == 0.0) return 0.0;
  double denom = 0.0;
  for (int j : cell_cubes_[cell_of(xc)]) denom += bumps_[j].value(xc, spec_.dim);
  return xi / denom;
}

std::array<double, 3> PartitionOfUnity::chi_gradient(int i,
                                                     const std::array<double, 3>& x) const {
  const auto xc = to_cells(x);
  double xi;
  std::array<double, 3> dxi{0, 0, 0};
  bumps_[i].value_and_gradient(xc, spec_.dim, xi, dxi);
  std::array<double, 3> out{0, 0, 0};
  if (xi == 0.0) return out;  // xi = 0 implies grad xi = 0 (flat smoothstep ends)

  double denom = 0.0;
  std::array<double, 3> ddenom{0, 0, 0};
  for (int j : cell_cubes_[cell_of(xc)]) {
    double v;
    std::array<double, 3> dv{0, 0, 0};
    bumps_[j].value_and_gradient(xc, spec_.dim, v, dv);
    denom += v;
    for (int d = 0; d < spec_.dim; ++d) ddenom[d] += dv[d];
  }
  const double h = spec_.spacing();
  for (int d = 0; d < spec_.dim; ++d)
    out[d] = (dxi[d] * denom - xi * ddenom[d]) / (denom * denom) / h;
  return out;
}

double PartitionOfUnity::sum_chi(const std::array<double, 3>& x) const {
  const auto xc = to_cells(x);
  const auto& cand = cell_cubes_[cell_of(xc)];
  double denom = 0.0;
  std::vector<double> xi(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k) {
    xi[k] = bumps_[cand[k]].value(xc, spec_.dim);
    denom += xi[k];
  }
  if (denom == 0.0) return 0.0;
  double s = 0.0;
  for (double v : xi) s += v / denom;
  return s;
}

std::array<double, 3> PartitionOfUnity::sum_chi_gradient(const std::array<double, 3>& x) const {
  std::array<double, 3> out{0, 0, 0};
  const auto xc = to_cells(x);
  const auto& cand = cell_cubes_[cell_of(xc)];
  double denom = 0.0;
  std::vector<double> xi(cand.size());
  std::vector<std::array<double, 3>> dxi(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k) {
    bumps_[cand[k]].value_and_gradient(xc, spec_.dim, xi[k], dxi[k]);
    denom += xi[k];
  }
  if (denom == 0.0) return out;
  std::array<double, 3> ddenom{0, 0, 0};
  for (const auto& dv : dxi)
    for (int d = 0; d < spec_.dim; ++d) ddenom[d] += dv[d];
  const double h = spec_.spacing();
  for (std::size_t k = 0; k < cand.size(); ++k)
    for (int d = 0; d < spec_.dim; ++d)
      out[d] += (dxi[k][d] * denom - xi[k] * ddenom[d]) / (denom * denom) / h;
  return out;
}

void PartitionOfUnity::eval_at_cell(std::size_t cell, std::vector<int>& idx,
                                    std::vector<double>& chi_out,
                                    std::vector<std::array<double, 3>>& grad_out) const {
  idx.clear();
  chi_out.clear();
  grad_out.clear();
  const auto ci = spec_.unflat(cell);
  std::array<double, 3> xc{0, 0, 0};
  for (int d = 0; d < spec_.dim; ++d) xc[d] = ci[d] + 0.5;

  const auto& cand = cell_cubes_[cell];
  double denom = 0.0;
  std::vector<double> xi(cand.size());
  std::vector<std::array<double, 3>> dxi(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k) {
    bumps_[cand[k]].value_and_gradient(xc, spec_.dim, xi[k], dxi[k]);
    denom += xi[k];
  }
  if (denom == 0.0) return;
  std::array<double, 3> ddenom{0, 0, 0};
  for (const auto& dv : dxi)
    for (int d = 0; d < spec_.dim; ++d) ddenom[d] += dv[d];

  const double h = spec_.spacing();
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (xi[k] == 0.0) continue;
    idx.push_back(cand[k]);
    chi_out.push_back(xi[k] / denom);
    std::array<double, 3> gradv{0, 0, 0};
    for (int d = 0; d < spec_.dim; ++d)
      gradv[d] = (dxi[k][d] * denom - xi[k] * ddenom[d]) / (denom * denom) / h;
    grad_out.push_back(gradv);
  }
}

PartitionOfUnity build_partition(const WhitneyDecomposition& w) {
  return PartitionOfUnity(w);
}

double neighbor_gradient_bound(const PartitionOfUnity& pu, const WhitneyDecomposition& w,
                               int m) {
  const GridSpec& g = w.spec;
  double worst = 0.0;
  for (std::size_t cell : pu.support_cells(m)) {
    const auto x = g.center(g.unflat(cell));
    double s = 0.0;
    for (int i : w.neighbors[m]) {
      const auto grad = pu.chi_gradient(i, x);
      double mag = 0.0;
      for (int d = 0; d < g.dim; ++d) mag += grad[d] * grad[d];
      s += std::sqrt(mag);
    }
    worst = std::max(worst, s);
  }
  return worst * w.cubes[m].side(g);
}

}  // namespace czd
