#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace czd {

/// Uniform cell-centered grid over an axis-aligned cube [origin, origin + L]^n.
/// The per-axis cell count is a power of two so that every dyadic cube boundary
/// falls on a cell boundary.
struct GridSpec {
  int dim = 1;                          // 1, 2 or 3
  int cells = 4;                        // per axis, power of two, >= 4
  std::array<double, 3> origin{0, 0, 0};
  double side = 1.0;                    // L

  static bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

  GridSpec() = default;
  GridSpec(int n, int cells_per_axis, double box_side = 1.0,
           std::array<double, 3> box_origin = {0.0, 0.0, 0.0})
      : dim(n), cells(cells_per_axis), origin(box_origin), side(box_side) {
    if (dim < 1 || dim > 3)
      throw std::invalid_argument("GridSpec: dimension must be 1, 2 or 3");
    if (cells < 4 || !is_pow2(cells))
      throw std::invalid_argument("GridSpec: cells must be a power of two >= 4");
    if (!(side > 0.0) || !std::isfinite(side))
      throw std::invalid_argument("GridSpec: box side must be positive");
  }

  double spacing() const { return side / cells; }

  std::size_t cell_count() const {
    std::size_t c = 1;
    for (int d = 0; d < dim; ++d) c *= static_cast<std::size_t>(cells);
    return c;
  }

  /// Number of dyadic levels: level 0 is the root box, max_level() is single cells.
  int max_level() const {
    int k = 0;
    while ((1 << k) < cells) ++k;
    return k;
  }

  /// Row-major flat index, axis 0 slowest.
  std::size_t flat(const std::array<int, 3>& idx) const {
    std::size_t f = 0;
    for (int d = 0; d < dim; ++d)
      f = f * static_cast<std::size_t>(cells) + static_cast<std::size_t>(idx[d]);
    return f;
  }

  std::array<int, 3> unflat(std::size_t f) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(f % cells);
      f /= cells;
    }
    return idx;
  }

  /// Physical coordinates of a cell center.
  std::array<double, 3> center(const std::array<int, 3>& idx) const {
    std::array<double, 3> x{0, 0, 0};
    const double h = spacing();
    for (int d = 0; d < dim; ++d) x[d] = origin[d] + (idx[d] + 0.5) * h;
    return x;
  }

  bool operator==(const GridSpec& o) const {
    return dim == o.dim && cells == o.cells && origin == o.origin && side == o.side;
  }
};

struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& s, double fill = 0.0)
      : spec(s), values(s.cell_count(), fill) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  void check_finite(const char* what = "ScalarField") const {
    for (double v : values)
      if (!std::isfinite(v))
        throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
};

/// One n-vector per cell, components interleaved.
struct VectorField {
  GridSpec spec;
  std::vector<double> values;  // size = cell_count * dim

  VectorField() = default;
  explicit VectorField(const GridSpec& s)
      : spec(s), values(s.cell_count() * static_cast<std::size_t>(s.dim), 0.0) {}

  double& at(std::size_t cell, int comp) { return values[cell * spec.dim + comp]; }
  double at(std::size_t cell, int comp) const { return values[cell * spec.dim + comp]; }

  double magnitude(std::size_t cell) const {
    double s = 0;
    for (int d = 0; d < spec.dim; ++d) {
      const double v = at(cell, d);
      s += v * v;
    }
    return std::sqrt(s);
  }
};

/// Compactly supported radial bump (1 - (r/R)^2)^k, zero outside radius R.
/// Used as the test function phi in distributional pairings.
struct TestFunction {
  std::array<double, 3> center{0.5, 0.5, 0.5};
  double radius = 0.25;
  int order = 3;  // C^{order-1}

  TestFunction() = default;
  TestFunction(std::array<double, 3> c, double r, int k = 3)
      : center(c), radius(r), order(k) {
    if (!(radius > 0)) throw std::invalid_argument("TestFunction: radius must be positive");
    if (order < 1) throw std::invalid_argument("TestFunction: order must be >= 1");
  }

  /// Throws if the support is not strictly inside the grid's box.
  void require_inside(const GridSpec& g) const {
    for (int d = 0; d < g.dim; ++d) {
      if (!(center[d] - radius > g.origin[d] && center[d] + radius < g.origin[d] + g.side))
        throw std::invalid_argument("TestFunction: support exceeds the box");
    }
  }

  double operator()(const std::array<double, 3>& x, int dim) const {
    double r2 = 0;
    for (int d = 0; d < dim; ++d) {
      const double t = x[d] - center[d];
      r2 += t * t;
    }
    const double s = 1.0 - r2 / (radius * radius);
    if (s <= 0.0) return 0.0;
    double v = 1.0;
    for (int k = 0; k < order; ++k) v *= s;
    return v;
  }
};

constexpr double kInfinityP = std::numeric_limits<double>::infinity();

/// Second-order finite-difference gradient: centered in the interior,
/// one-sided three-point stencils at the box faces.
VectorField gradient(const ScalarField& f);

/// Riemann-sum L^p norm, (sum |.|^p h^n)^{1/p}; p = infinity gives the sup norm.
/// Vector fields use the per-cell Euclidean magnitude.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);

}  // namespace czd
