#include "czd/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace czd {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_header(std::ostream& os, const GridSpec& g) {
  os << "# czd-field v1, n=" << g.dim << ", cells=" << g.cells
     << ", L=" << format_double(g.side) << ", origin=";
  for (int d = 0; d < g.dim; ++d) {
    if (d) os << ';';
    os << format_double(g.origin[d]);
  }
  os << '\n';
}

void write_rows(std::ostream& os, const GridSpec& g, const std::vector<double>& vals,
                int ncomp) {
  const std::size_t total = g.cell_count();
  for (std::size_t c = 0; c < total; ++c) {
    const auto idx = g.unflat(c);
    for (int d = 0; d < g.dim; ++d) os << idx[d] << ',';
    for (int k = 0; k < ncomp; ++k) {
      if (k) os << ',';
      os << format_double(vals[c * ncomp + k]);
    }
    os << '\n';
  }
}

GridSpec parse_header(const std::string& line) {
  int dim = 0, cells = 0;
  double side = 0;
  std::array<double, 3> origin{0, 0, 0};
  if (line.rfind("# czd-field v1,", 0) != 0)
    throw std::runtime_error("field CSV: bad header magic");

  auto grab = [&](const std::string& key) -> std::string {
    const auto pos = line.find(key + "=");
    if (pos == std::string::npos)
      throw std::runtime_error("field CSV: missing header key " + key);
    auto end = line.find(',', pos);
    if (end == std::string::npos) end = line.size();
    return line.substr(pos + key.size() + 1, end - pos - key.size() - 1);
  };
  dim = std::stoi(grab("n"));
  cells = std::stoi(grab("cells"));
  side = std::stod(grab("L"));
  {
    std::istringstream os_in(grab("origin"));
    std::string tok;
    int d = 0;
    while (std::getline(os_in, tok, ';') && d < 3) origin[d++] = std::stod(tok);
    if (d != dim) throw std::runtime_error("field CSV: origin arity mismatch");
  }
  return GridSpec(dim, cells, side, origin);
}

}  // namespace

void write_field_csv(std::ostream& os, const ScalarField& f) {
  write_header(os, f.spec);
  write_rows(os, f.spec, f.values, 1);
}

void write_field_csv(std::ostream& os, const VectorField& v) {
  write_header(os, v.spec);
  write_rows(os, v.spec, v.values, v.spec.dim);
}

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_field_csv(os, f);
}

void write_field_csv(const std::string& path, const VectorField& v) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_field_csv(os, v);
}

ScalarField read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("field CSV: empty input");
  const GridSpec g = parse_header(line);
  ScalarField f(g);
  const std::size_t total = g.cell_count();
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= total) throw std::runtime_error("field CSV: too many rows");
    std::istringstream ls(line);
    std::string tok;
    std::array<int, 3> idx{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
      if (!std::getline(ls, tok, ',')) throw std::runtime_error("field CSV: short row");
      idx[d] = std::stoi(tok);
      if (idx[d] < 0 || idx[d] >= g.cells)
        throw std::runtime_error("field CSV: cell index out of range");
    }
    if (!std::getline(ls, tok, ',')) throw std::runtime_error("field CSV: missing value");
    const std::size_t flat = g.flat(idx);
    if (flat != row) throw std::runtime_error("field CSV: rows must be in row-major order");
    f[flat] = std::stod(tok);
    ++row;
  }
  if (row != total) throw std::runtime_error("field CSV: row count mismatch");
  f.check_finite("field CSV");
  return f;
}

ScalarField read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_field_csv(is);
}

}  // namespace czd
