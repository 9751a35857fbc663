#include "czd/badset.hpp"

namespace czd {

namespace {

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

}  // namespace

ScalarField maximal_function(const ScalarField& u) {
  u.check_finite("maximal_function input");
  for (double v : u.values)
    if (v < 0.0) throw std::invalid_argument("maximal_function: input must be nonnegative");

  const GridSpec& g = u.spec;
  const int K = g.max_level();
  const int dim = g.dim;

  // sums[k][cube] = sum of u over the cells of the level-k dyadic cube
  std::vector<std::vector<double>> sums(K + 1);
  sums[K] = u.values;  // finest cubes are single cells
  for (int k = K - 1; k >= 0; --k) {
    const int per_axis = 1 << k;
    sums[k].assign(pow_int(static_cast<std::size_t>(per_axis), dim), 0.0);
    const int child_axis = per_axis << 1;
    // accumulate children in ascending child order
    std::array<int, 3> ci{0, 0, 0};
    const std::size_t nchild = sums[k + 1].size();
    for (std::size_t cf = 0; cf < nchild; ++cf) {
      std::array<int, 3> p{0, 0, 0};
      std::size_t rem = cf;
      for (int d = dim - 1; d >= 0; --d) {
        ci[d] = static_cast<int>(rem % child_axis);
        rem /= child_axis;
        p[d] = ci[d] >> 1;
      }
      sums[k][cube_flat(p, per_axis, dim)] += sums[k + 1][cf];
    }
  }

  ScalarField out(g);
  const std::size_t total = g.cell_count();
  for (std::size_t c = 0; c < total; ++c) {
    const auto idx = g.unflat(c);
    double best = 0.0;
    for (int k = K; k >= 0; --k) {
      std::array<int, 3> anc{0, 0, 0};
      for (int d = 0; d < dim; ++d) anc[d] = idx[d] >> (K - k);
      const double cells_in_cube =
          static_cast<double>(pow_int(static_cast<std::size_t>(g.cells >> k), dim));
      best = std::max(best, sums[k][cube_flat(anc, 1 << k, dim)] / cells_in_cube);
    }
    out[c] = best;
  }
  return out;
}

RegionMask bad_set(const ScalarField& f, double alpha, double p) {
  if (!(alpha > 0.0)) throw std::invalid_argument("bad_set: alpha must be positive");
  if (!(p >= 1.0) || p == kInfinityP)
    throw std::invalid_argument("bad_set: p must be finite and >= 1");

  const VectorField grad = gradient(f);
  ScalarField u(f.spec);
  for (std::size_t c = 0; c < u.size(); ++c) u[c] = std::pow(grad.magnitude(c), p);
  const ScalarField m = maximal_function(u);

  RegionMask mask(f.spec);
  const double thresh = std::pow(alpha, p);
  for (std::size_t c = 0; c < u.size(); ++c) mask.in_omega[c] = m[c] > thresh ? 1 : 0;
  return mask;
}

double weak_type_ratio(const ScalarField& f, double alpha, double p) {
  const RegionMask omega = bad_set(f, alpha, p);
  if (omega.empty()) return 0.0;
  const double gnorm = lp_norm(gradient(f), p);
  if (gnorm == 0.0)
    throw std::runtime_error("weak_type_ratio: nonempty Omega with zero gradient norm");
  return omega.measure() * std::pow(alpha, p) / std::pow(gnorm, p);
}

}  // namespace czd
