#include <doctest.h>

#include "czd/decomposition.hpp"
#include "czd/generators.hpp"

using namespace czd;

namespace {

CZDecomposition hat_czd(int cells = 256, double alpha = 2.0, double p = 1.0) {
  return decompose(generate("hat1d", GridSpec(1, cells)), alpha, p);
}

double reassembly_error(const CZDecomposition& czd) {
  ScalarField recon = czd.good;
  for (const SparseField& b : czd.bad)
    for (std::size_t k = 0; k < b.cells.size(); ++k) recon[b.cells[k]] += b.values[k];
  double worst = 0;
  for (std::size_t c = 0; c < recon.size(); ++c)
    worst = std::max(worst, std::abs(czd.f[c] - recon[c]));
  return worst;
}

}  // namespace

TEST_CASE("cube means: constants, symmetry, reverse-order oracle") {
  const CZDecomposition czd = hat_czd();
  const WhitneyDecomposition& w = czd.whitney;

  // reverse-order re-summation oracle
  for (int i = 0; i < static_cast<int>(w.cubes.size()); ++i) {
    const auto cells = dilate_cells(w, i);
    double acc = 0;
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) acc += czd.f[*it];
    CHECK(czd.means[i] ==
          doctest::Approx(acc / static_cast<double>(cells.size())).epsilon(1e-13));
  }

  // constant field: every mean is the constant and every b vanishes
  ScalarField cst(czd.f.spec, 7.0);
  const auto means = cube_means(cst, w);
  for (double m : means) CHECK(m == doctest::Approx(7.0).epsilon(1e-14));
  const PartitionOfUnity pu(w);
  const auto bad = bad_parts(cst, w, pu, means);
  for (const SparseField& b : bad)
    for (double v : b.values) CHECK(std::abs(v) <= 1e-13);
}

TEST_CASE("odd function about a cube center has zero mean") {
  const GridSpec g(1, 64);
  RegionMask m(g);
  for (int c = 16; c < 48; ++c) m.in_omega[c] = 1;
  const WhitneyDecomposition w = whitney_decompose(m);
  REQUIRE(!w.cubes.empty());
  // pick any cube; build a field odd about that cube's dilate center
  const DyadicCube& cube = w.cubes[0];
  const double center =
      g.origin[0] + (cube.cell_lo(g, 0) + 0.5 * cube.block(g)) * g.spacing();
  ScalarField f(g);
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    f[c] = g.center(g.unflat(c))[0] - center;
  CHECK(std::abs(cube_means(f, w)[0]) <= 1e-12);
}

TEST_CASE("reassembly and supports") {
  const CZDecomposition czd = hat_czd();
  const double fsup = lp_norm(czd.f, kInfinityP);
  CHECK(reassembly_error(czd) <= 1e-11 * (1.0 + fsup));

  // g = f exactly on F; b supports inside Omega
  for (std::size_t c = 0; c < czd.f.size(); ++c)
    if (!czd.omega.in_omega[c]) CHECK(czd.good[c] == czd.f[c]);
  for (const SparseField& b : czd.bad)
    for (std::size_t cell : b.cells) CHECK(czd.omega.in_omega[cell] == 1);
}

TEST_CASE("empty bad set: g equals f and h vanishes") {
  const GridSpec g(1, 64);
  ScalarField f(g);
  for (std::size_t c = 0; c < g.cell_count(); ++c) f[c] = 0.5 * g.center(g.unflat(c))[0];
  const CZDecomposition czd = decompose(f, 10.0, 2.0);
  CHECK(czd.whitney.cubes.empty());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    CHECK(czd.good[c] == f[c]);
    CHECK(czd.h_direct.at(c, 0) == 0.0);
    CHECK(czd.h_renorm.at(c, 0) == 0.0);
  }
}

TEST_CASE("h vanishes off Omega and the two representations agree") {
  const CZDecomposition czd = hat_czd();
  for (std::size_t c = 0; c < czd.f.size(); ++c) {
    if (!czd.omega.in_omega[c]) {
      CHECK(czd.h_direct.at(c, 0) == 0.0);
      CHECK(czd.h_renorm.at(c, 0) == 0.0);
    }
    CHECK(std::abs(czd.h_direct.at(c, 0) - czd.h_renorm.at(c, 0)) <= 1e-9 * czd.alpha);
  }
  // reverse-cube-order oracle for h_renorm sup
  const GridSpec& g = czd.f.spec;
  double sup = 0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto x = g.center(g.unflat(c));
    double acc = 0;
    for (int m = static_cast<int>(czd.whitney.cubes.size()) - 1; m >= 0; --m) {
      const double chim = czd.pu.chi(m, x);
      if (chim == 0.0) continue;
      double inner = 0;
      const auto& nbr = czd.whitney.neighbors[m];
      for (auto it = nbr.rbegin(); it != nbr.rend(); ++it)
        inner += (czd.means[m] - czd.means[*it]) * czd.pu.chi_gradient(*it, x)[0];
      acc -= inner * chim;
    }
    sup = std::max(sup, std::abs(acc));
  }
  CHECK(lp_norm(czd.h_renorm, kInfinityP) == doctest::Approx(sup).epsilon(1e-9));
}

TEST_CASE("shift and scale equivariance") {
  const CZDecomposition base = hat_czd(128);
  ScalarField f2 = base.f;
  for (double& v : f2.values) v = 3.0 * v + 11.0;
  const CZDecomposition scaled = decompose(f2, 3.0 * base.alpha, base.p);
  REQUIRE(scaled.whitney.cubes.size() == base.whitney.cubes.size());
  for (std::size_t c = 0; c < base.f.size(); ++c) {
    CHECK(scaled.omega.in_omega[c] == base.omega.in_omega[c]);
    CHECK(scaled.h_renorm.at(c, 0) ==
          doctest::Approx(3.0 * base.h_renorm.at(c, 0)).epsilon(1e-10));
  }
  for (std::size_t i = 0; i < base.bad.size(); ++i)
    for (std::size_t k = 0; k < base.bad[i].values.size(); ++k)
      CHECK(scaled.bad[i].values[k] ==
            doctest::Approx(3.0 * base.bad[i].values[k]).epsilon(1e-10));
}

TEST_CASE("gradient identity residual") {
  SUBCASE("empty Omega gives zero residual") {
    const GridSpec g(1, 64);
    ScalarField f(g, 1.0);
    const auto res = gradient_identity_residual(decompose(f, 1.0, 2.0));
    CHECK(res.overall == 0.0);
  }
  SUBCASE("affine field over a fixed mask") {
    // on Omega the identity residual is the stencil error of sum c_i chi_i;
    // it peaks over the small cubes near the interface and falls off with the
    // cell distance, so a wide collar isolates a small away-residual
    const GridSpec g(1, 256);
    ScalarField f(g);
    for (std::size_t c = 0; c < g.cell_count(); ++c) f[c] = 2.0 * g.center(g.unflat(c))[0];
    RegionMask m(g);
    for (int c = 64; c < 192; ++c) m.in_omega[c] = 1;
    const CZDecomposition czd = decompose_with_mask(f, m, 1.0, 2.0);
    const auto res = gradient_identity_residual(czd, 32);
    CHECK(res.away < 1.0);
    CHECK(res.overall < 4.0);
    CHECK(res.away < res.near_boundary);
  }
}

TEST_CASE("truncation study") {
  const CZDecomposition czd = hat_czd();
  const TestFunction phi({0.5, 0, 0}, 0.45);
  const auto order = truncation_ordering(czd.whitney, TruncationOrder::SizeDescending);
  const TruncationStudy s = truncation_study(czd, phi, order);

  const double fsup = lp_norm(czd.f, kInfinityP);
  CHECK(s.pairing_norms.front() == 0.0);  // empty prefix
  CHECK(s.final_norm <= 1e-10 * fsup * czd.omega.measure());
  CHECK(s.max_scaled_residual > 0.0);
  CHECK(std::isfinite(s.max_scaled_residual));

  // intermediate prefix values against the brute-force double loop
  const GridSpec& g = czd.f.spec;
  double cellvol = g.spacing();
  for (std::size_t prefix : {std::size_t{1}, s.pairing_norms.size() / 2}) {
    std::vector<bool> in_j(czd.whitney.cubes.size(), false);
    for (std::size_t t = 0; t < prefix; ++t) in_j[order[t]] = true;
    double acc = 0;
    for (int m = 0; m < static_cast<int>(czd.whitney.cubes.size()); ++m) {
      for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const auto x = g.center(g.unflat(c));
        const double chim = czd.pu.chi(m, x);
        if (chim == 0.0) continue;
        const double bm = (czd.f[c] - czd.means[m]) * chim;
        double r = 0;
        for (int i : czd.whitney.neighbors[m])
          if (in_j[i]) r += czd.pu.chi_gradient(i, x)[0];
        acc += bm * r * phi(x, 1) * cellvol;
      }
    }
    CHECK(s.pairing_norms[prefix] == doctest::Approx(std::abs(acc)).epsilon(1e-8));
  }

  // a seeded permutation reaches the same (vanishing) limit
  const auto perm = truncation_ordering(czd.whitney, TruncationOrder::SeededPermutation, 42);
  CHECK(perm != order);
  const TruncationStudy sp = truncation_study(czd, phi, perm);
  CHECK(sp.final_norm <= 1e-10 * fsup * czd.omega.measure());
}

TEST_CASE("truncation rejects a test function leaving the box") {
  const CZDecomposition czd = hat_czd(128);
  const TestFunction phi({0.9, 0, 0}, 0.3);
  const auto order = truncation_ordering(czd.whitney, TruncationOrder::SizeDescending);
  CHECK_THROWS_AS(truncation_study(czd, phi, order), std::invalid_argument);
}

TEST_CASE("counterexample row: indicator gradient grows like 1/h") {
  double prev = 0;
  for (int cells : {128, 256, 512}) {
    const CZDecomposition czd = hat_czd(cells);
    const CounterexampleRow row = counterexample_row(czd);
    const double scaled = row.indicator_gradient_sup * row.h_grid;
    CHECK(scaled >= 0.4);
    CHECK(scaled <= 1.1);
    if (prev > 0) {
      const double ratio = row.indicator_gradient_sup / prev;
      CHECK(ratio >= 1.6);
      CHECK(ratio <= 2.4);
    }
    prev = row.indicator_gradient_sup;
  }

  const GridSpec g(1, 64);
  ScalarField flat(g, 1.0);
  CHECK_THROWS_AS(counterexample_row(decompose(flat, 1.0, 2.0)), std::runtime_error);
}
