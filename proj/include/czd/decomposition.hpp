#pragma once

#include <cstdint>
#include <random>

#include "czd/partition.hpp"

namespace czd {

/// b_i stored over the support cells of Q_i only.
struct SparseField {
  std::vector<std::size_t> cells;  // ascending
  std::vector<double> values;
};

struct CZDecomposition {
  ScalarField f;
  double alpha = 0;
  double p = 2;
  RegionMask omega;
  WhitneyDecomposition whitney;
  PartitionOfUnity pu;
  std::vector<double> means;      // c_i, mean of f over Q_i's cells
  std::vector<SparseField> bad;   // b_i = (f - c_i) chi_i
  ScalarField good;               // g = f - sum_i b_i
  VectorField h_direct;           // -sum_i (f - c_i) grad chi_i
  VectorField h_renorm;           // -sum_m (sum_{i in I_m} (c_m - c_i) grad chi_i) chi_m
};

std::vector<double> cube_means(const ScalarField& f, const WhitneyDecomposition& w);
std::vector<SparseField> bad_parts(const ScalarField& f, const WhitneyDecomposition& w,
                                   const PartitionOfUnity& pu,
                                   const std::vector<double>& means);
ScalarField good_part(const ScalarField& f, const GridSpec& spec,
                      const std::vector<SparseField>& bad);
VectorField h_direct_field(const ScalarField& f, const PartitionOfUnity& pu,
                           const std::vector<double>& means);
VectorField h_renorm_field(const WhitneyDecomposition& w, const PartitionOfUnity& pu,
                           const std::vector<double>& means);

/// Full pipeline: bad set, Whitney cubes, partition, means, parts, h fields.
CZDecomposition decompose(const ScalarField& f, double alpha, double p);

/// Same pipeline from a caller-supplied Omega (used by unit tests and demos).
CZDecomposition decompose_with_mask(const ScalarField& f, const RegionMask& omega,
                                    double alpha, double p);

/// Residual of grad g = (grad f) 1_F + h with finite-difference gradients,
/// split by Chebyshev cell distance from the Omega/F interface.
struct GradientIdentityResidual {
  double overall = 0;       // sup over all cells
  double near_boundary = 0; // cells within the collar of the interface
  double away = 0;          // cells beyond the collar
  int collar_cells = 2;
};
GradientIdentityResidual gradient_identity_residual(const CZDecomposition& czd,
                                                    int collar_cells = 2);

/// Prefix-truncation study of sum_m int b_m R_{m,J} phi over a cube ordering.
struct TruncationStudy {
  std::vector<int> ordering;            // permutation of cube indices
  std::vector<double> pairing_norms;    // |T(J)| for |J| = 0 .. #cubes
  double final_norm = 0;                // |T(I)|
  double max_scaled_residual = 0;       // max_J max_m l_m sup |R_{m,J}|
};

enum class TruncationOrder { SizeDescending, SeededPermutation };

std::vector<int> truncation_ordering(const WhitneyDecomposition& w, TruncationOrder kind,
                                     std::uint64_t seed = 0);
TruncationStudy truncation_study(const CZDecomposition& czd, const TestFunction& phi,
                                 const std::vector<int>& ordering);

/// The inadmissible choice c_i = 1: sum_i grad chi_i = grad 1_Omega concentrates
/// on the boundary, so the finite-difference sup norm of sum_i chi_i blows up
/// like 1/h under refinement while sup |h_renorm| stays bounded.
struct CounterexampleRow {
  int cells = 0;
  double h_grid = 0;
  double indicator_gradient_sup = 0;  // || grad_h sum chi ||_inf
  double h_renorm_sup = 0;
};

CounterexampleRow counterexample_row(const CZDecomposition& czd);

}  // namespace czd
