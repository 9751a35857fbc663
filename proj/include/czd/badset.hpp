#pragma once

#include "czd/grid.hpp"

namespace czd {

/// Cell mask for the bad set Omega; the good set F is the complement.
struct RegionMask {
  GridSpec spec;
  std::vector<std::uint8_t> in_omega;  // 1 = cell belongs to Omega

  RegionMask() = default;
  explicit RegionMask(const GridSpec& s) : spec(s), in_omega(s.cell_count(), 0) {}

  std::size_t omega_cell_count() const {
    std::size_t c = 0;
    for (auto b : in_omega) c += b;
    return c;
  }

  double measure() const {
    double cellvol = 1.0;
    const double h = spec.spacing();
    for (int d = 0; d < spec.dim; ++d) cellvol *= h;
    return static_cast<double>(omega_cell_count()) * cellvol;
  }

  bool empty() const { return omega_cell_count() == 0; }
  bool full() const { return omega_cell_count() == spec.cell_count(); }
};

/// Uncentered dyadic maximal function: M u(x) = max over dyadic cubes Q
/// containing x of the average of u over Q's cells. Computed exactly by a
/// bottom-up aggregation over the dyadic tree, O(cells * levels).
ScalarField maximal_function(const ScalarField& u);

/// Omega = { M(|grad f|^p)^{1/p} > alpha } (strict, so the exact-threshold
/// case gives an empty bad set). On F the gradient magnitude is <= alpha.
RegionMask bad_set(const ScalarField& f, double alpha, double p);

/// |Omega| * alpha^p / ||grad f||_p^p; 0 when Omega is empty.
double weak_type_ratio(const ScalarField& f, double alpha, double p);

}  // namespace czd
