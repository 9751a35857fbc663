#pragma once

#include <iosfwd>
#include <string>

#include "czd/grid.hpp"

namespace czd {

/// CSV field format v1: a header line
///   # czd-field v1, n=<dim>, cells=<k>, L=<side>, origin=<o0;o1;...>
/// then one row per cell in row-major order: the cell multi-index followed by
/// the value (one column per vector component for vector fields). Readers
/// reject count or index mismatches.
void write_field_csv(std::ostream& os, const ScalarField& f);
void write_field_csv(std::ostream& os, const VectorField& v);
void write_field_csv(const std::string& path, const ScalarField& f);
void write_field_csv(const std::string& path, const VectorField& v);

ScalarField read_field_csv(std::istream& is);
ScalarField read_field_csv(const std::string& path);

/// Deterministic float formatting used in every text output (17 significant digits).
std::string format_double(double v);

}  // namespace czd
