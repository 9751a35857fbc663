#include "czd/generators.hpp"

#include <numbers>

namespace czd {

namespace {

double sq_dist(const std::array<double, 3>& x, const std::array<double, 3>& c, int dim) {
  double r2 = 0;
  for (int d = 0; d < dim; ++d) {
    const double t = x[d] - c[d];
    r2 += t * t;
  }
  return r2;
}

}  // namespace

ScalarField generate(const std::string& name, const GridSpec& spec) {
  ScalarField f(spec);
  const std::size_t total = spec.cell_count();
  const int dim = spec.dim;

  auto fill = [&](auto&& fn) {
    for (std::size_t c = 0; c < total; ++c) f[c] = fn(spec.center(spec.unflat(c)));
  };

  if (name == "constant") {
    fill([](const auto&) { return 5.0; });
  } else if (name == "affine") {
    fill([](const auto& x) { return 3.0 * x[0] + 1.0; });
  } else if (name == "hat1d") {
    if (dim != 1) throw std::invalid_argument("generator hat1d is one-dimensional");
    fill([](const auto& x) { return std::max(0.0, 1.0 - 8.0 * std::abs(x[0] - 0.5)); });
  } else if (name == "gauss-bump") {
    const double sigma = 0.12;
    std::array<double, 3> c{0.5, 0.5, 0.5};
    fill([&](const auto& x) { return std::exp(-sq_dist(x, c, dim) / (2 * sigma * sigma)); });
  } else if (name == "two-spikes-2d") {
    if (dim != 2) throw std::invalid_argument("generator two-spikes-2d is two-dimensional");
    const double sigma = 0.08;
    std::array<double, 3> c1{0.3, 0.3, 0}, c2{0.7, 0.7, 0};
    fill([&](const auto& x) {
      return std::exp(-sq_dist(x, c1, dim) / (2 * sigma * sigma)) +
             std::exp(-sq_dist(x, c2, dim) / (2 * sigma * sigma));
    });
  } else if (name == "checker-smooth-2d") {
    if (dim != 2) throw std::invalid_argument("generator checker-smooth-2d is two-dimensional");
    const double k = 4.0 * std::numbers::pi;
    fill([&](const auto& x) { return std::sin(k * x[0]) * std::sin(k * x[1]); });
  } else {
    throw std::invalid_argument("unknown generator: " + name);
  }
  return f;
}

std::vector<std::string> generator_names() {
  return {"constant", "affine", "hat1d", "gauss-bump", "two-spikes-2d", "checker-smooth-2d"};
}

int generator_native_dim(const std::string& name) {
  if (name == "hat1d") return 1;
  if (name == "two-spikes-2d" || name == "checker-smooth-2d") return 2;
  if (name == "constant" || name == "affine" || name == "gauss-bump") return 0;
  throw std::invalid_argument("unknown generator: " + name);
}

}  // namespace czd
