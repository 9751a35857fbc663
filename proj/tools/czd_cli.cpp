#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "czd/field_io.hpp"
#include "czd/generators.hpp"
#include "czd/verify.hpp"

namespace {

struct RunConfig {
  std::string input;
  std::string generator;
  double alpha = 0;
  std::vector<double> alphas;
  double p = 2;
  int cells = 256;
  int dim = 0;  // 0 = native dimension of the generator
  std::string out;
  std::uint64_t seed = 0;
  std::string ceilings_path;
};

czd::ScalarField load_field(const RunConfig& cfg) {
  if (!cfg.input.empty() && !cfg.generator.empty())
    throw std::runtime_error("give either --input or --generator, not both");
  if (cfg.input.empty() && cfg.generator.empty())
    throw std::runtime_error("one of --input or --generator is required");
  if (!cfg.input.empty()) return czd::read_field_csv(cfg.input);

  int dim = cfg.dim;
  if (dim == 0) dim = czd::generator_native_dim(cfg.generator);
  if (dim == 0) dim = 1;
  return czd::generate(cfg.generator, czd::GridSpec(dim, cfg.cells));
}

czd::Ceilings load_ceilings(const RunConfig& cfg, int dim) {
  czd::Ceilings c = czd::Ceilings::defaults(dim);
  if (cfg.ceilings_path.empty()) return c;
  std::ifstream is(cfg.ceilings_path);
  if (!is) throw std::runtime_error("cannot open ceilings file: " + cfg.ceilings_path);
  nlohmann::json j = nlohmann::json::parse(is);
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::remove_reference_t<decltype(slot)>>();
  };
  get("max_c2", c.max_c2);
  get("max_c3", c.max_c3);
  get("max_c4", c.max_c4);
  get("max_c5", c.max_c5);
  get("max_c5_prime", c.max_c5_prime);
  get("max_chi_grad", c.max_chi_grad);
  get("max_truncation_residual", c.max_truncation_residual);
  get("max_overlap", c.max_overlap);
  get("max_neighbors", c.max_neighbors);
  get("sweep_c2_ratio", c.sweep_c2_ratio);
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
}

std::string source_name(const RunConfig& cfg) {
  return cfg.input.empty() ? cfg.generator : "input:" + cfg.input;
}

int run_decompose(const RunConfig& cfg) {
  const czd::ScalarField f = load_field(cfg);
  if (cfg.out.empty()) throw std::runtime_error("decompose requires --out <prefix>");
  const czd::Ceilings ceilings = load_ceilings(cfg, f.spec.dim);
  const czd::CZDecomposition czdec = czd::decompose(f, cfg.alpha, cfg.p);
  const czd::VerificationReport rep =
      czd::verify(czdec, ceilings, cfg.seed, source_name(cfg));
  czd::write_field_csv(cfg.out + "_g.csv", czdec.good);
  czd::write_field_csv(cfg.out + "_h_direct.csv", czdec.h_direct);
  czd::write_field_csv(cfg.out + "_h_renorm.csv", czdec.h_renorm);
  write_text(cfg.out + "_report.json", czd::report_to_json(rep));
  return rep.all_pass() ? 0 : 2;
}

int run_verify(const RunConfig& cfg) {
  const czd::ScalarField f = load_field(cfg);
  const czd::Ceilings ceilings = load_ceilings(cfg, f.spec.dim);
  const czd::CZDecomposition czdec = czd::decompose(f, cfg.alpha, cfg.p);
  const czd::VerificationReport rep =
      czd::verify(czdec, ceilings, cfg.seed, source_name(cfg));
  write_text(cfg.out, czd::report_to_json(rep));
  return rep.all_pass() ? 0 : 2;
}

int run_sweep(const RunConfig& cfg) {
  const czd::ScalarField f = load_field(cfg);
  const czd::Ceilings ceilings = load_ceilings(cfg, f.spec.dim);
  const auto reports = czd::sweep(f, cfg.alphas, cfg.p, ceilings, cfg.seed, source_name(cfg));

  std::string csv = "alpha,C2,C3,C4,N,sum_Q\n";
  bool ok = true;
  for (const auto& r : reports) {
    csv += czd::format_double(r.alpha) + ',' + czd::format_double(r.c2) + ',' +
           czd::format_double(r.c3) + ',' + czd::format_double(r.c4) + ',' +
           std::to_string(r.overlap) + ',' + czd::format_double(r.cube_measure_sum) + '\n';
    ok = ok && r.all_pass();
  }
  if (cfg.out.empty()) {
    std::cout << czd::sweep_to_json(reports) << csv;
  } else {
    write_text(cfg.out + "_sweep.json", czd::sweep_to_json(reports));
    write_text(cfg.out + "_sweep.csv", csv);
  }
  return ok ? 0 : 2;
}

int run_demo(const RunConfig& cfg) {
  if (cfg.generator.empty())
    throw std::runtime_error("demo-counterexample requires --generator (runs refinements)");
  std::string csv = "cells,h_grid,indicator_grad_sup,h_renorm_sup\n";
  int dim = cfg.dim;
  if (dim == 0) dim = czd::generator_native_dim(cfg.generator);
  if (dim == 0) dim = 1;
  for (int cells = cfg.cells; cells <= cfg.cells * 4; cells *= 2) {
    const czd::ScalarField f = czd::generate(cfg.generator, czd::GridSpec(dim, cells));
    const czd::CZDecomposition czdec = czd::decompose(f, cfg.alpha, cfg.p);
    const czd::CounterexampleRow row = czd::counterexample_row(czdec);
    csv += std::to_string(row.cells) + ',' + czd::format_double(row.h_grid) + ',' +
           czd::format_double(row.indicator_gradient_sup) + ',' +
           czd::format_double(row.h_renorm_sup) + '\n';
  }
  write_text(cfg.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calderon-Zygmund decomposition of Sobolev functions on a grid"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool needs_alpha, bool needs_alphas) {
    sub->add_option("--input", cfg.input, "field CSV to decompose");
    sub->add_option("--generator", cfg.generator, "built-in corpus field");
    sub->add_option("--p", cfg.p, "Sobolev exponent p in [1, inf)");
    sub->add_option("--cells", cfg.cells, "cells per axis (power of two)");
    sub->add_option("--dim", cfg.dim, "dimension for dimension-agnostic generators");
    sub->add_option("--out", cfg.out, "output path or prefix");
    sub->add_option("--seed", cfg.seed, "seed for the truncation permutation");
    sub->add_option("--ceilings", cfg.ceilings_path, "JSON file overriding constant ceilings");
    if (needs_alpha) sub->add_option("--alpha", cfg.alpha, "threshold alpha > 0")->required();
    if (needs_alphas)
      sub->add_option("--alphas", cfg.alphas, "ascending alpha list")->required();
  };

  auto* dec = app.add_subcommand("decompose", "write g, h fields and a report");
  add_common(dec, true, false);
  auto* ver = app.add_subcommand("verify", "write the verification report");
  add_common(ver, true, false);
  auto* swp = app.add_subcommand("sweep", "verify across an alpha list");
  add_common(swp, false, true);
  auto* demo = app.add_subcommand("demo-counterexample",
                                  "refinement table for the c_i = 1 boundary blow-up");
  add_common(demo, true, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) return run_decompose(cfg);
    if (ver->parsed()) return run_verify(cfg);
    if (swp->parsed()) return run_sweep(cfg);
    if (demo->parsed()) return run_demo(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
