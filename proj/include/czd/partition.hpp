#pragma once

#include "czd/whitney.hpp"

namespace czd {

/// Tensor-product quintic smoothstep bump attached to a Whitney cube: exactly 1
/// on W = (1/2)Q, exactly 0 outside Q, C^2 in between. Geometry is kept in cell
/// units so plateau and support tests are exact at cell centers.
struct BumpDescriptor {
  int cube = -1;                       // index into the decomposition
  std::array<double, 3> center_cells{0, 0, 0};  // cube center, in cells from origin
  double inner_cells = 0;              // plateau half-width  = l/2
  double outer_cells = 0;              // support half-width  = l

  /// xi and d(xi)/dx_d at a point given in cell units.
  double value(const std::array<double, 3>& x_cells, int dim) const;
  void value_and_gradient(const std::array<double, 3>& x_cells, int dim,
                          double& val, std::array<double, 3>& grad_cells) const;
};

/// Normalized partition chi_i = xi_i / sum_j xi_j on Omega, with analytic
/// gradients via the quotient rule. Evaluations outside every support are zero.
class PartitionOfUnity {
 public:
  PartitionOfUnity() = default;
  explicit PartitionOfUnity(const WhitneyDecomposition& w);

  int size() const { return static_cast<int>(bumps_.size()); }
  const GridSpec& grid() const { return spec_; }
  const BumpDescriptor& bump(int i) const { return bumps_[i]; }

  /// Cube indices whose closed dilate meets the given grid cell; the candidate
  /// set for any point inside that cell.
  const std::vector<int>& candidates(std::size_t cell) const { return cell_cubes_[cell]; }

  /// Cells whose center lies strictly inside Q_i (support of chi_i at cell centers).
  const std::vector<std::size_t>& support_cells(int i) const { return support_[i]; }

  double chi(int i, const std::array<double, 3>& x) const;
  std::array<double, 3> chi_gradient(int i, const std::array<double, 3>& x) const;

  /// sum_i chi_i and sum_i grad chi_i at a point (1 resp. 0 on Omega).
  double sum_chi(const std::array<double, 3>& x) const;
  std::array<double, 3> sum_chi_gradient(const std::array<double, 3>& x) const;

  /// Per-cell-center evaluation helpers used by the decomposition: chi and
  /// grad chi of every candidate bump at the center of a cell, in fixed cube
  /// order.
  void eval_at_cell(std::size_t cell, std::vector<int>& idx, std::vector<double>& chi,
                    std::vector<std::array<double, 3>>& grad) const;

 private:
  std::array<double, 3> to_cells(const std::array<double, 3>& x) const;
  std::size_t cell_of(const std::array<double, 3>& x_cells) const;

  GridSpec spec_;
  std::vector<BumpDescriptor> bumps_;
  std::vector<std::vector<int>> cell_cubes_;        // per grid cell
  std::vector<std::vector<std::size_t>> support_;   // per cube
};

PartitionOfUnity build_partition(const WhitneyDecomposition& w);

/// l_m * max over the support cells of chi_m of sum_{i in I_m} |grad chi_i|.
double neighbor_gradient_bound(const PartitionOfUnity& pu, const WhitneyDecomposition& w,
                               int m);

}  // namespace czd
