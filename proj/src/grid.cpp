#include "czd/grid.hpp"

namespace czd {

VectorField gradient(const ScalarField& f) {
  f.check_finite("gradient input");
  const GridSpec& g = f.spec;
  VectorField out(g);
  const double h = g.spacing();
  const int n = g.cells;

  // stride of axis d in the flat index
  std::array<std::size_t, 3> stride{0, 0, 0};
  {
    std::size_t s = 1;
    for (int d = g.dim - 1; d >= 0; --d) {
      stride[d] = s;
      s *= static_cast<std::size_t>(n);
    }
  }

  const std::size_t total = g.cell_count();
  for (std::size_t c = 0; c < total; ++c) {
    const auto idx = g.unflat(c);
    for (int d = 0; d < g.dim; ++d) {
      const std::size_t s = stride[d];
      double v;
      if (idx[d] == 0) {
        v = (-3.0 * f[c] + 4.0 * f[c + s] - f[c + 2 * s]) / (2.0 * h);
      } else if (idx[d] == n - 1) {
        v = (3.0 * f[c] - 4.0 * f[c - s] + f[c - 2 * s]) / (2.0 * h);
      } else {
        v = (f[c + s] - f[c - s]) / (2.0 * h);
      }
      out.at(c, d) = v;
    }
  }
  return out;
}

namespace {

double lp_reduce(const GridSpec& g, const std::vector<double>& magnitudes, double p) {
  if (p == kInfinityP) {
    double m = 0;
    for (double v : magnitudes) m = std::max(m, v);
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double cellvol = 1.0;
  const double h = g.spacing();
  for (int d = 0; d < g.dim; ++d) cellvol *= h;
  // fixed ascending-cell accumulation order for reproducibility
  double acc = 0;
  for (double v : magnitudes) acc += std::pow(v, p) * cellvol;
  return std::pow(acc, 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p) {
  std::vector<double> mag(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mag[i] = std::abs(f[i]);
  return lp_reduce(f.spec, mag, p);
}

double lp_norm(const VectorField& v, double p) {
  const std::size_t total = v.spec.cell_count();
  std::vector<double> mag(total);
  for (std::size_t i = 0; i < total; ++i) mag[i] = v.magnitude(i);
  return lp_reduce(v.spec, mag, p);
}

}  // namespace czd
