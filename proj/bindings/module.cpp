#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "czd/generators.hpp"
#include "czd/verify.hpp"

namespace py = pybind11;
using namespace czd;

namespace {

GridSpec spec_for(py::array_t<double, py::array::c_style | py::array::forcecast> arr,
                  double side, std::array<double, 3> origin) {
  const int dim = static_cast<int>(arr.ndim());
  if (dim < 1 || dim > 3) throw std::invalid_argument("field must have 1 to 3 axes");
  const int cells = static_cast<int>(arr.shape(0));
  for (int d = 1; d < dim; ++d)
    if (arr.shape(d) != cells)
      throw std::invalid_argument("field must be square across all axes");
  return GridSpec(dim, cells, side, origin);
}

ScalarField to_field(py::array_t<double, py::array::c_style | py::array::forcecast> arr,
                     double side, std::array<double, 3> origin) {
  const GridSpec g = spec_for(arr, side, origin);
  ScalarField f(g);
  std::copy_n(arr.data(), g.cell_count(), f.values.begin());
  f.check_finite("field");
  return f;
}

std::vector<py::ssize_t> grid_shape(const GridSpec& g) {
  return std::vector<py::ssize_t>(static_cast<std::size_t>(g.dim), g.cells);
}

py::array_t<double> from_scalar(const ScalarField& f) {
  py::array_t<double> out(grid_shape(f.spec));
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const VectorField& v) {
  auto shape = grid_shape(v.spec);
  shape.push_back(v.spec.dim);
  py::array_t<double> out(shape);
  std::copy(v.values.begin(), v.values.end(), out.mutable_data());
  return out;
}

py::array_t<bool> from_mask(const RegionMask& m) {
  py::array_t<bool> out(grid_shape(m.spec));
  auto* p = out.mutable_data();
  for (std::size_t c = 0; c < m.in_omega.size(); ++c) p[c] = m.in_omega[c] != 0;
  return out;
}

}  // namespace

PYBIND11_MODULE(_czd, mod) {
  mod.doc() = "Calderon-Zygmund decomposition of Sobolev functions on a grid";

  py::class_<CZDecomposition>(mod, "Decomposition")
      .def_property_readonly("alpha", [](const CZDecomposition& c) { return c.alpha; })
      .def_property_readonly("p", [](const CZDecomposition& c) { return c.p; })
      .def_property_readonly("f", [](const CZDecomposition& c) { return from_scalar(c.f); })
      .def_property_readonly("good",
                             [](const CZDecomposition& c) { return from_scalar(c.good); })
      .def_property_readonly("omega",
                             [](const CZDecomposition& c) { return from_mask(c.omega); })
      .def_property_readonly("h_direct",
                             [](const CZDecomposition& c) { return from_vector(c.h_direct); })
      .def_property_readonly("h_renorm",
                             [](const CZDecomposition& c) { return from_vector(c.h_renorm); })
      .def_property_readonly("means",
                             [](const CZDecomposition& c) { return c.means; })
      .def_property_readonly("cube_count",
                             [](const CZDecomposition& c) { return c.whitney.cubes.size(); })
      .def_property_readonly("overlap",
                             [](const CZDecomposition& c) { return c.whitney.overlap; })
      .def("bad_part",
           [](const CZDecomposition& c, std::size_t i) {
             if (i >= c.bad.size()) throw py::index_error();
             ScalarField b(c.f.spec);
             for (std::size_t k = 0; k < c.bad[i].cells.size(); ++k)
               b[c.bad[i].cells[k]] = c.bad[i].values[k];
             return from_scalar(b);
           },
           py::arg("i"), "b_i as a dense array")
      .def("bad_sum", [](const CZDecomposition& c) {
        ScalarField s(c.f.spec);
        for (const SparseField& b : c.bad)
          for (std::size_t k = 0; k < b.cells.size(); ++k) s[b.cells[k]] += b.values[k];
        return from_scalar(s);
      });

  mod.def(
      "generate",
      [](const std::string& name, int dim, int cells, double side) {
        return from_scalar(czd::generate(name, GridSpec(dim, cells, side)));
      },
      py::arg("name"), py::arg("dim"), py::arg("cells"), py::arg("side") = 1.0);

  mod.def("generator_names", &generator_names);

  mod.def(
      "gradient",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double side) {
        return from_vector(czd::gradient(to_field(f, side, {0, 0, 0})));
      },
      py::arg("f"), py::arg("side") = 1.0);

  mod.def(
      "maximal_function",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> u, double side) {
        return from_scalar(czd::maximal_function(to_field(u, side, {0, 0, 0})));
      },
      py::arg("u"), py::arg("side") = 1.0);

  mod.def(
      "bad_set",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double alpha,
         double p, double side) {
        return from_mask(czd::bad_set(to_field(f, side, {0, 0, 0}), alpha, p));
      },
      py::arg("f"), py::arg("alpha"), py::arg("p"), py::arg("side") = 1.0);

  mod.def(
      "decompose",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double alpha,
         double p, double side) {
        return czd::decompose(to_field(f, side, {0, 0, 0}), alpha, p);
      },
      py::arg("f"), py::arg("alpha"), py::arg("p"), py::arg("side") = 1.0);

  mod.def(
      "verify_json",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double alpha,
         double p, double side) {
        const ScalarField field = to_field(f, side, {0, 0, 0});
        return report_to_json(
            czd::verify(czd::decompose(field, alpha, p), Ceilings::defaults(field.spec.dim)));
      },
      py::arg("f"), py::arg("alpha"), py::arg("p"), py::arg("side") = 1.0,
      "Run the full verification suite and return the JSON report");

  mod.def(
      "sweep_json",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> f,
         const std::vector<double>& alphas, double p, double side) {
        const ScalarField field = to_field(f, side, {0, 0, 0});
        return sweep_to_json(czd::sweep(field, alphas, p, Ceilings::defaults(field.spec.dim)));
      },
      py::arg("f"), py::arg("alphas"), py::arg("p"), py::arg("side") = 1.0);
}
