#include "czd/verify.hpp"

#include <algorithm>

#include "czd/json_writer.hpp"

namespace czd {

Ceilings Ceilings::defaults(int dim) {
  // frozen from the measured maxima of the built-in corpus with headroom of
  // roughly 1.5x (see tests/acceptance.cpp for the corpus definition)
  Ceilings c;
  switch (dim) {
    case 1:
      c.max_c2 = 9.0;
      c.max_c3 = 3.0;
      c.max_c4 = 8.0;
      c.max_c5 = 10.0;
      c.max_c5_prime = 9.0;
      c.max_chi_grad = 6.0;
      c.max_truncation_residual = 12.0;
      c.max_overlap = 4;
      c.max_neighbors = 8;
      break;
    case 2:
      c.max_c2 = 10.0;
      c.max_c3 = 2.0;
      c.max_c4 = 8.0;
      c.max_c5 = 10.0;
      c.max_c5_prime = 8.0;
      c.max_chi_grad = 8.0;
      c.max_truncation_residual = 16.0;
      c.max_overlap = 8;
      c.max_neighbors = 48;
      break;
    default:
      c.max_c2 = 6.0;
      c.max_c3 = 2.0;
      c.max_c4 = 12.0;
      c.max_c5 = 8.0;
      c.max_c5_prime = 8.0;
      c.max_chi_grad = 8.0;
      c.max_truncation_residual = 10.0;
      c.max_overlap = 16;
      c.max_neighbors = 360;
      break;
  }
  return c;
}

std::vector<TestFunction> default_test_functions(const GridSpec& g) {
  std::vector<TestFunction> phis;
  auto at = [&](double rel_center, double rel_radius) {
    std::array<double, 3> c{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) c[d] = g.origin[d] + rel_center * g.side;
    return TestFunction(c, rel_radius * g.side, 3);
  };
  phis.push_back(at(0.5, 0.45));
  phis.push_back(at(0.4, 0.25));
  phis.push_back(at(0.6, 0.3));
  return phis;
}

VerificationReport verify(const CZDecomposition& czd, const Ceilings& ceilings,
                          std::uint64_t seed, const std::string& source) {
  const GridSpec& g = czd.f.spec;
  const WhitneyDecomposition& w = czd.whitney;
  const PartitionOfUnity& pu = czd.pu;
  const int ncubes = static_cast<int>(w.cubes.size());
  const double alpha = czd.alpha;
  const double p = czd.p;

  VerificationReport r;
  r.grid = g;
  r.source = source;
  r.alpha = alpha;
  r.p = p;
  r.seed = seed;
  r.cube_count = w.cubes.size();
  r.f_sup = lp_norm(czd.f, kInfinityP);
  r.omega_measure = czd.omega.measure();
  r.cube_measure_sum = cube_sum_measure(w);
  r.overlap = w.overlap;
  for (const auto& s : w.neighbors)
    r.max_neighbor_count = std::max(r.max_neighbor_count, static_cast<int>(s.size()));

  const VectorField grad_f = gradient(czd.f);
  const VectorField grad_g = gradient(czd.good);
  r.c2 = lp_norm(grad_g, kInfinityP) / alpha;
  r.c5 = lp_norm(czd.h_renorm, kInfinityP) / alpha;

  const double grad_f_norm_p = lp_norm(grad_f, p);
  if (ncubes > 0) {
    if (grad_f_norm_p == 0.0)
      throw std::runtime_error("verify: nonempty decomposition with zero gradient norm");
    r.c4 = std::pow(alpha, p) * r.cube_measure_sum / std::pow(grad_f_norm_p, p);
    r.weak_type = std::pow(alpha, p) * r.omega_measure / std::pow(grad_f_norm_p, p);
  }

  // good-set control, via the same |grad f|^p pipeline as the construction
  const double alpha_p = std::pow(alpha, p);
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    if (!czd.omega.in_omega[c] && std::pow(grad_f.magnitude(c), p) > alpha_p)
      ++r.good_set_violations;

  // reassembly f = g + sum b_i
  {
    ScalarField recon = czd.good;
    for (const SparseField& b : czd.bad)
      for (std::size_t k = 0; k < b.cells.size(); ++k) recon[b.cells[k]] += b.values[k];
    for (std::size_t c = 0; c < g.cell_count(); ++c)
      r.reassembly_max = std::max(r.reassembly_max, std::abs(czd.f[c] - recon[c]));
  }

  // h equivalence
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    double mag = 0;
    for (int d = 0; d < g.dim; ++d) {
      const double v = czd.h_direct.at(c, d) - czd.h_renorm.at(c, d);
      mag += v * v;
    }
    r.h_equiv_max = std::max(r.h_equiv_max, std::sqrt(mag));
  }

  // single pass over all cells: partition identities, per-cube integrals,
  // neighbor bounds
  std::vector<double> b_sup(ncubes, 0.0), c3_int(ncubes, 0.0);
  double cellvol = 1.0;
  for (int d = 0; d < g.dim; ++d) cellvol *= g.spacing();
  std::vector<int> idx;
  std::vector<double> chi;
  std::vector<std::array<double, 3>> grad;
  std::vector<int> pos(ncubes, -1);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    pu.eval_at_cell(c, idx, chi, grad);
    const bool in_omega = czd.omega.in_omega[c] != 0;

    double sum_c = 0;
    std::array<double, 3> sum_g{0, 0, 0};
    for (std::size_t k = 0; k < idx.size(); ++k) {
      sum_c += chi[k];
      for (int d = 0; d < g.dim; ++d) sum_g[d] += grad[k][d];
    }
    if (in_omega) {
      r.sum_chi_on_omega = std::max(r.sum_chi_on_omega, std::abs(sum_c - 1.0));
      double mag = 0;
      for (int d = 0; d < g.dim; ++d) mag += sum_g[d] * sum_g[d];
      r.sum_grad_chi = std::max(r.sum_grad_chi, std::sqrt(mag));
    } else {
      r.sum_chi_off_omega = std::max(r.sum_chi_off_omega, std::abs(sum_c));
      if (!idx.empty()) r.support_violations += static_cast<int>(idx.size());
    }
    if (idx.empty()) continue;

    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const int i = idx[k];
      const double bval = (czd.f[c] - czd.means[i]) * chi[k];
      b_sup[i] = std::max(b_sup[i], std::abs(bval));

      // grad b_i = (grad f) chi_i + (f - c_i) grad chi_i
      double mag = 0;
      for (int d = 0; d < g.dim; ++d) {
        const double v = grad_f.at(c, d) * chi[k] + (czd.f[c] - czd.means[i]) * grad[k][d];
        mag += v * v;
      }
      c3_int[i] += std::pow(std::sqrt(mag), p) * cellvol;

      double gmag = 0;
      for (int d = 0; d < g.dim; ++d) gmag += grad[k][d] * grad[k][d];
      gmag = std::sqrt(gmag);
      r.chi_grad_const = std::max(r.chi_grad_const, w.cubes[i].side(g) * gmag);

      // neighbor sums for the key estimate and the scaled gradient bound
      double nb_grad = 0, key = 0;
      for (int j : w.neighbors[i]) {
        const int q = pos[j];
        if (q < 0) continue;
        double jm = 0;
        for (int d = 0; d < g.dim; ++d) jm += grad[q][d] * grad[q][d];
        jm = std::sqrt(jm);
        nb_grad += jm;
        key += std::abs(czd.means[i] - czd.means[j]) * jm;
      }
      r.neighbor_grad_const =
          std::max(r.neighbor_grad_const, w.cubes[i].side(g) * nb_grad);
      r.c5_prime = std::max(r.c5_prime, key * chi[k] / alpha);
    }
    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = -1;
  }

  for (int i = 0; i < ncubes; ++i) {
    const double q_measure = [&] {
      double m = 1;
      for (int d = 0; d < g.dim; ++d) m *= 2.0 * w.cubes[i].side(g);
      return m;
    }();
    r.c3 = std::max(r.c3, c3_int[i] / (alpha_p * q_measure));
    r.b_scale_sum += b_sup[i] / w.cubes[i].side(g);
  }

  // b_i on cells centered exactly on the boundary of Q_i (only unit cubes
  // have such cells); chi vanishes there by the closed form
  for (int i = 0; i < ncubes; ++i) {
    const DyadicCube& cube = w.cubes[i];
    if (cube.block(g) != 1) continue;
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
      lo[d] = std::max(0, cube.cell_lo(g, d) - 1);
      hi[d] = std::min(g.cells - 1, cube.cell_lo(g, d) + 1);
    }
    std::array<int, 3> ci = lo;
    while (true) {
      bool on_boundary = false;
      for (int d = 0; d < g.dim; ++d)
        if (ci[d] != cube.cell_lo(g, d)) on_boundary = true;
      if (on_boundary) {
        const auto x = g.center(ci);
        const double bval = (czd.f[g.flat(ci)] - czd.means[i]) * pu.chi(i, x);
        r.b_boundary_max = std::max(r.b_boundary_max, std::abs(bval));
      }
      int d = g.dim - 1;
      while (d >= 0) {
        if (++ci[d] <= hi[d]) break;
        ci[d] = lo[d];
        --d;
      }
      if (d < 0) break;
    }
  }

  // gradient identity, split at a 2-cell interface collar
  {
    const auto res = gradient_identity_residual(czd, 2);
    r.grad_identity_near = res.near_boundary;
    r.grad_identity_away = res.away;
  }

  // truncation studies: three test functions, two orderings
  if (ncubes > 0) {
    const auto phis = default_test_functions(g);
    const auto order_a = truncation_ordering(w, TruncationOrder::SizeDescending);
    const auto order_b = truncation_ordering(w, TruncationOrder::SeededPermutation, seed);
    for (const TestFunction& phi : phis) {
      for (const auto* order : {&order_a, &order_b}) {
        const TruncationStudy s = truncation_study(czd, phi, *order);
        r.truncation_final_max = std::max(r.truncation_final_max, s.final_norm);
        r.truncation_residual = std::max(r.truncation_residual, s.max_scaled_residual);
      }
    }
  }

  // per-cube records and the run-length encoded mask
  for (int i = 0; i < ncubes; ++i) {
    VerificationReport::CubeRecord rec;
    rec.level = w.cubes[i].level;
    rec.index = w.cubes[i].index;
    rec.side = w.cubes[i].side(g);
    rec.mean = czd.means[i];
    rec.b_sup = b_sup[i];
    r.cubes.push_back(rec);
  }
  {
    std::size_t run = 0;
    std::uint8_t cur = 0;  // F first
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      if (czd.omega.in_omega[c] == cur) {
        ++run;
      } else {
        r.omega_rle.push_back(run);
        cur = czd.omega.in_omega[c];
        run = 1;
      }
    }
    r.omega_rle.push_back(run);
  }

  // flags
  r.pass_reassembly = r.reassembly_max <= 1e-11 * (1.0 + r.f_sup);
  r.pass_good_set = r.good_set_violations == 0;
  r.pass_c2 = std::isfinite(r.c2) && r.c2 <= ceilings.max_c2;
  r.pass_c3 = r.c3 <= ceilings.max_c3;
  r.pass_c4 = r.c4 <= ceilings.max_c4;
  r.pass_c5 = r.c5 <= ceilings.max_c5 && r.c5_prime <= ceilings.max_c5_prime;
  r.pass_overlap = r.overlap <= ceilings.max_overlap;
  r.pass_neighbors = r.max_neighbor_count <= ceilings.max_neighbors;
  r.pass_partition = r.sum_chi_on_omega <= 1e-12 && r.sum_chi_off_omega == 0.0 &&
                     r.sum_grad_chi <= 1e-10 && r.chi_grad_const <= ceilings.max_chi_grad;
  r.pass_h_equiv = r.h_equiv_max <= 1e-9 * alpha;
  r.pass_truncation = r.truncation_final_max <= 1e-10 * r.f_sup * r.omega_measure +
                          std::numeric_limits<double>::min() &&
                      r.truncation_residual <= ceilings.max_truncation_residual;
  r.pass_support = r.support_violations == 0 && r.b_boundary_max == 0.0;
  return r;
}

std::vector<VerificationReport> sweep(const ScalarField& f, const std::vector<double>& alphas,
                                      double p, const Ceilings& ceilings, std::uint64_t seed,
                                      const std::string& source) {
  if (alphas.empty()) throw std::invalid_argument("sweep: empty alpha list");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0)) throw std::invalid_argument("sweep: alphas must be positive");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw std::invalid_argument("sweep: alphas must be ascending");
  }
  std::vector<VerificationReport> out;
  for (double a : alphas)
    out.push_back(verify(decompose(f, a, p), ceilings, seed, source));
  return out;
}

namespace {

void emit_report_body(JsonWriter& j, const VerificationReport& r) {
  j.begin_object();
  j.key("schema").value("czd-report v1");
  j.key("meta").begin_object();
  j.key("dim").value(r.grid.dim);
  j.key("cells").value(r.grid.cells);
  j.key("side").value(r.grid.side);
  {
    std::vector<double> o(r.grid.origin.begin(), r.grid.origin.begin() + r.grid.dim);
    j.key("origin").number_array(o);
  }
  j.key("source").value(r.source);
  j.key("alpha").value(r.alpha);
  j.key("p").value(r.p);
  j.key("seed").value(static_cast<long long>(r.seed));
  j.key("maximal_function").value("uncentered dyadic, exact tree aggregation");
  j.key("whitney_rule")
      .value("maximal dyadic cubes in Omega; max-metric box distance to F >= side "
             "(adjacent cells at distance h)");
  j.key("bump").value("tensor-product quintic smoothstep, plateau W, support Q=2W");
  j.key("means").value("cube averages over Q_i cell centers");
  j.end_object();

  j.key("constants").begin_object();
  j.key("C2").value(r.c2);
  j.key("C3").value(r.c3);
  j.key("C4").value(r.c4);
  j.key("C5").value(r.c5);
  j.key("C5_prime").value(r.c5_prime);
  j.key("N").value(r.overlap);
  j.key("K").value(r.max_neighbor_count);
  j.key("chi_grad").value(r.chi_grad_const);
  j.key("neighbor_grad").value(r.neighbor_grad_const);
  j.key("weak_type").value(r.weak_type);
  j.key("omega_measure").value(r.omega_measure);
  j.key("cube_measure_sum").value(r.cube_measure_sum);
  j.key("b_scale_sum").value(r.b_scale_sum);
  j.key("cube_count").value(r.cube_count);
  j.key("f_sup").value(r.f_sup);
  j.end_object();

  j.key("residuals").begin_object();
  j.key("reassembly").value(r.reassembly_max);
  j.key("h_equivalence").value(r.h_equiv_max);
  j.key("sum_chi_on_omega").value(r.sum_chi_on_omega);
  j.key("sum_chi_off_omega").value(r.sum_chi_off_omega);
  j.key("sum_grad_chi").value(r.sum_grad_chi);
  j.key("b_boundary").value(r.b_boundary_max);
  j.key("grad_identity_near").value(r.grad_identity_near);
  j.key("grad_identity_away").value(r.grad_identity_away);
  j.key("truncation_final").value(r.truncation_final_max);
  j.key("truncation_residual").value(r.truncation_residual);
  j.key("good_set_violations").value(r.good_set_violations);
  j.key("support_violations").value(r.support_violations);
  j.end_object();

  j.key("flags").begin_object();
  j.key("reassembly").value(r.pass_reassembly);
  j.key("good_set").value(r.pass_good_set);
  j.key("C2").value(r.pass_c2);
  j.key("C3").value(r.pass_c3);
  j.key("C4").value(r.pass_c4);
  j.key("C5").value(r.pass_c5);
  j.key("overlap").value(r.pass_overlap);
  j.key("neighbors").value(r.pass_neighbors);
  j.key("partition").value(r.pass_partition);
  j.key("h_equivalence").value(r.pass_h_equiv);
  j.key("truncation").value(r.pass_truncation);
  j.key("support").value(r.pass_support);
  j.key("all").value(r.all_pass());
  j.end_object();

  j.key("cubes").begin_array();
  for (const auto& c : r.cubes) {
    j.begin_object();
    j.key("level").value(c.level);
    {
      std::vector<int> idx(c.index.begin(), c.index.begin() + r.grid.dim);
      j.key("index").number_array(idx);
    }
    j.key("side").value(c.side);
    j.key("whitney").value(true);
    j.key("mean").value(c.mean);
    j.key("b_sup").value(c.b_sup);
    j.end_object();
  }
  j.end_array();

  j.key("omega_rle").number_array(r.omega_rle);
  j.end_object();
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
  JsonWriter j;
  emit_report_body(j, r);
  return j.str() + "\n";
}

std::string sweep_to_json(const std::vector<VerificationReport>& reports) {
  JsonWriter j;
  j.begin_object();
  j.key("schema").value("czd-sweep v1");
  j.key("sweep").begin_array();
  for (const auto& r : reports) emit_report_body(j, r);
  j.end_array();
  j.end_object();
  return j.str() + "\n";
}

}  // namespace czd
