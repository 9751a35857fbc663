#pragma once

#include "czd/decomposition.hpp"

namespace czd {

/// Frozen ceilings for the measured constants, per dimension. The identity
/// tolerances are fixed by contract; the constant ceilings were frozen from
/// the built-in corpus (see tests/acceptance.cpp).
struct Ceilings {
  double max_c2 = 0;
  double max_c3 = 0;
  double max_c4 = 0;
  double max_c5 = 0;
  double max_c5_prime = 0;
  double max_chi_grad = 0;        // ceiling on l_i sup |grad chi_i|
  double max_truncation_residual = 0;  // ceiling on max_J max_m l_m sup |R_{m,J}|
  int max_overlap = 0;            // N
  int max_neighbors = 0;          // K_n
  double sweep_c2_ratio = 10.0;

  static Ceilings defaults(int dim);
};

struct VerificationReport {
  // meta
  GridSpec grid;
  std::string source = "input";
  double alpha = 0;
  double p = 2;
  std::uint64_t seed = 0;

  // measured constants
  double c2 = 0;            // ||grad g||_inf / alpha
  double c3 = 0;            // max_i int_{Q_i} |grad b_i|^p / (alpha^p |Q_i|)
  double c4 = 0;            // alpha^p sum_i |Q_i| / ||grad f||_p^p
  double c5 = 0;            // sup |h_renorm| / alpha
  double c5_prime = 0;      // sup_m sum_{i in I_m} |c_m - c_i| |grad chi_i| chi_m / alpha
  double chi_grad_const = 0;     // max_i l_i sup |grad chi_i|
  double neighbor_grad_const = 0;  // max_m l_m sup sum_{i in I_m} |grad chi_i|
  int overlap = 0;          // N
  int max_neighbor_count = 0;  // K_n
  double weak_type = 0;     // |Omega| alpha^p / ||grad f||_p^p
  double omega_measure = 0;
  double cube_measure_sum = 0;  // sum_i (2 l_i)^n
  double b_scale_sum = 0;       // sum_i ||b_i||_inf / l_i
  std::size_t cube_count = 0;

  // identity residuals
  double reassembly_max = 0;       // max |f - g - sum b_i|
  double h_equiv_max = 0;          // max |h_direct - h_renorm|
  double sum_chi_on_omega = 0;     // max |sum chi - 1| at Omega centers
  double sum_chi_off_omega = 0;    // max |sum chi| at F centers
  double sum_grad_chi = 0;         // max |sum grad chi| at Omega centers
  double b_boundary_max = 0;       // max |b_i| at cells centered on the boundary of Q_i
  double grad_identity_near = 0;   // residual within the interface collar
  double grad_identity_away = 0;   // residual beyond the collar
  double truncation_final_max = 0; // max over phi x orderings of |T(I)|
  double truncation_residual = 0;  // max_J max_m l_m sup |R_{m,J}|
  int good_set_violations = 0;     // F cells with |grad f| > alpha
  int support_violations = 0;      // b support cells outside Omega

  // scales for the relative tolerances
  double f_sup = 0;

  // flags
  bool pass_reassembly = false;
  bool pass_good_set = false;
  bool pass_c2 = false;
  bool pass_c3 = false;
  bool pass_c4 = false;
  bool pass_c5 = false;
  bool pass_overlap = false;
  bool pass_neighbors = false;
  bool pass_partition = false;
  bool pass_h_equiv = false;
  bool pass_truncation = false;
  bool pass_support = false;

  bool all_pass() const {
    return pass_reassembly && pass_good_set && pass_c2 && pass_c3 && pass_c4 && pass_c5 &&
           pass_overlap && pass_neighbors && pass_partition && pass_h_equiv &&
           pass_truncation && pass_support;
  }

  // per-cube records for the report
  struct CubeRecord {
    int level = 0;
    std::array<int, 3> index{0, 0, 0};
    double side = 0;
    double mean = 0;
    double b_sup = 0;
  };
  std::vector<CubeRecord> cubes;
  std::vector<std::size_t> omega_rle;  // run lengths, alternating F/Omega, F first
};

/// The three default test functions phi used in truncation studies.
std::vector<TestFunction> default_test_functions(const GridSpec& g);

VerificationReport verify(const CZDecomposition& czd, const Ceilings& ceilings,
                          std::uint64_t seed = 0, const std::string& source = "input");

inline VerificationReport verify(const CZDecomposition& czd) {
  return verify(czd, Ceilings::defaults(czd.f.spec.dim));
}

std::vector<VerificationReport> sweep(const ScalarField& f, const std::vector<double>& alphas,
                                      double p, const Ceilings& ceilings,
                                      std::uint64_t seed = 0,
                                      const std::string& source = "input");

/// JSON report schema v1: {meta, constants, residuals, flags, cubes, sweep?}.
std::string report_to_json(const VerificationReport& r);
std::string sweep_to_json(const std::vector<VerificationReport>& reports);

}  // namespace czd
