#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sgspec/address.hpp"
#include "sgspec/cli.hpp"
#include "sgspec/decimation.hpp"
#include "sgspec/dirichlet.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/harmonic.hpp"
#include "sgspec/oracle.hpp"
#include "sgspec/special.hpp"
#include "sgspec/tangent.hpp"

namespace py = pybind11;
using namespace sg;

namespace {

EventuallyConstantWord word_arg(const std::string& s) { return EventuallyConstantWord::parse(s); }

py::dict entry_dict(const SpectrumEntry& e) {
  py::dict d;
  d["series"] = to_string(e.series);
  d["m0"] = e.m0;
  d["branches"] = branch_string(e.branches);
  d["path"] = e.path;
  d["limit"] = e.limit;
  d["multiplicity"] = e.multiplicity;
  d["closed_form"] = e.closed_form;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sgspec, m) {
  m.doc() = "Spectral decimation on the Sierpinski gasket";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  (void)domain;

  py::enum_<Branch>(m, "Branch").value("minus", Branch::minus).value("plus", Branch::plus);

  py::class_<EigenvalueSequence>(m, "EigenvalueSequence")
      .def_static(
          "from_branches",
          [](int m0, double lam, const std::string& br) {
            const auto b = parse_branches(br);
            return EigenvalueSequence::from_branches(m0, lam, b);
          },
          py::arg("m0"), py::arg("lambda_m0"), py::arg("branches") = "")
      .def_static("from_eigenvalue", &EigenvalueSequence::from_eigenvalue, py::arg("lam"), py::arg("m0") = 0)
      .def_property_readonly("m0", &EigenvalueSequence::m0)
      .def_property_readonly("limit", &EigenvalueSequence::limit)
      .def_property_readonly("last_plus", &EigenvalueSequence::last_plus)
      .def("at", &EigenvalueSequence::at, py::arg("m"))
      .def("shifted", &EigenvalueSequence::shifted, py::arg("n"));

  py::class_<SpectralEigenfunction>(m, "SpectralEigenfunction")
      .def_static("non_dirichlet", &SpectralEigenfunction::non_dirichlet, py::arg("lam"), py::arg("boundary"))
      .def_static("harmonic", &SpectralEigenfunction::harmonic, py::arg("boundary"))
      .def_static(
          "from_seed", [](const std::string& spec) { return cli::parse_seed(spec); }, py::arg("spec"),
          "Build from the command-line seed grammar, e.g. 'six:2:3' or 'free:10:1,0,0'.")
      .def_property_readonly("m0", &SpectralEigenfunction::m0)
      .def_property_readonly("eigenvalue", &SpectralEigenfunction::eigenvalue)
      .def_property_readonly("sequence", &SpectralEigenfunction::sequence)
      .def_property_readonly("boundary", &SpectralEigenfunction::boundary)
      .def(
          "cell_values", [](const SpectralEigenfunction& u, const std::string& w) { return u.cell_values(parse_word(w)); },
          py::arg("word"))
      .def(
          "value_at",
          [](const SpectralEigenfunction& u, const std::string& w, int j) { return u.value_at(parse_word(w), Letter(j)); },
          py::arg("word"), py::arg("corner"));

  m.def(
      "dirichlet_basis",
      [](const std::string& series, int m0, int index, const std::string& br) {
        return dirichlet_basis({parse_series(series), m0, index, parse_branches(br)});
      },
      py::arg("series"), py::arg("m0"), py::arg("index"), py::arg("branches") = "");
  m.def(
      "six_series_piece", [](const std::string& br) { return six_series_piece(parse_branches(br)); },
      py::arg("branches") = "");
  m.def(
      "eigen_values_on_level", [](const SpectralEigenfunction& u, int level) { return eigen_values_on_level(u, level).values; },
      py::arg("u"), py::arg("level"));
  m.def(
      "level_positions",
      [](int level) {
        const auto g = level_graph(level);
        Eigen::MatrixX2d p(static_cast<Eigen::Index>(g->vertex_count()), 2);
        for (std::size_t v = 0; v < g->vertex_count(); ++v) {
          const Point q = g->position(v);
          p(static_cast<Eigen::Index>(v), 0) = q.x;
          p(static_cast<Eigen::Index>(v), 1) = q.y;
        }
        return p;
      },
      py::arg("level"), "Vertex coordinates of V_m, one row per vertex.");
  m.def(
      "enumerate_dirichlet_spectrum",
      [](int level, std::optional<std::string> series) {
        std::optional<DirichletSeries> only;
        if (series) only = parse_series(*series);
        py::list out;
        for (const auto& e : enumerate_dirichlet_spectrum(level, only)) out.append(entry_dict(e));
        return out;
      },
      py::arg("level"), py::arg("series") = py::none());

  m.def(
      "tangent_at",
      [](const SpectralEigenfunction& u, const std::string& w, std::optional<int> cut) {
        return tangent_at(u, word_arg(w), cut);
      },
      py::arg("u"), py::arg("word"), py::arg("cut") = py::none());
  m.def(
      "gradient_at", [](const SpectralEigenfunction& u, const std::string& w) { return gradient_at(u, word_arg(w)); },
      py::arg("u"), py::arg("word"));
  m.def(
      "normal_derivative", [](const SpectralEigenfunction& u, int i) { return normal_derivative(u, Letter(i)); },
      py::arg("u"), py::arg("vertex"));

  m.def("psi", &psi, py::arg("z"));
  m.def(
      "big_psi", [](double z, double tol) {
        ConvergenceConfig cfg;
        cfg.tol = tol;
        return big_psi(z, cfg);
      },
      py::arg("z"), py::arg("tol") = 1e-13);
  m.def(
      "upsilon", [](double lam, double tol) {
        ConvergenceConfig cfg;
        cfg.tol = tol;
        return upsilon(lam, cfg);
      },
      py::arg("lam"), py::arg("tol") = 1e-13);
  m.def(
      "tau", [](int k, const EigenvalueSequence& seq) { return tau(k, seq); }, py::arg("k"), py::arg("seq"));

  m.def(
      "dense_dirichlet_spectrum", [](int level) { return dense_dirichlet_spectrum(level).eigenvalues; },
      py::arg("level"));
  m.def(
      "direct_tangent_limit",
      [](const SpectralEigenfunction& u, const std::string& w, int level) {
        const auto est = direct_tangent_limit(u, word_arg(w), level);
        return py::make_tuple(est.value, est.error);
      },
      py::arg("u"), py::arg("word"), py::arg("level") = 25);
  m.def("interval_tangent", &interval_tangent, py::arg("lam"), py::arg("x0"), py::arg("f0"), py::arg("f1"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        const auto r = cli::run(args);
        return py::make_tuple(r.code, r.out, r.err);
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
