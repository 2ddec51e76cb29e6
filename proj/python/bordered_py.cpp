#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bordered/command.hpp"
#include "bordered/errors.hpp"
#include "bordered/parallel.hpp"
#include "bordered/strand_algebra.hpp"

namespace py = pybind11;
using namespace bordered;

namespace {

std::vector<std::string> names_of(const auto& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

}  // namespace

PYBIND11_MODULE(_bordered, m) {
  m.doc() = "Strand algebras, type DA bimodules and their morphisms over GF(2).";

  static py::exception<Error> error(m, "BorderedError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("set_threads", &set_thread_count, py::arg("n"));

  m.def(
      "pmc_report",
      [](int genus, const std::vector<PointPair>& pairs) {
        auto v = validate_report(make_unchecked_pmc(genus, pairs));
        py::dict d;
        d["surgery_components"] = v.surgery_components;
        d["valid"] = v.valid();
        d["handleslide_valid"] = v.handleslide_valid;
        return d;
      },
      py::arg("genus"), py::arg("pairs"));

  m.def(
      "strand_basis",
      [](int genus, const std::vector<PointPair>& pairs) {
        auto c = make_pmc(genus, pairs);
        std::vector<std::string> out;
        for (const auto& d : enumerate_basis(c)) out.push_back(diagram_name(c, d));
        return out;
      },
      py::arg("genus"), py::arg("pairs"));

  m.def(
      "f2_rank",
      [](std::size_t rows, std::size_t cols, const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
        return f2::rank(f2::F2Matrix(rows, cols, entries));
      },
      py::arg("rows"), py::arg("cols"), py::arg("entries"));

  py::class_<doc::Document>(m, "Document")
      .def_property_readonly("pmcs", [](const doc::Document& d) { return names_of(d.pmcs); })
      .def_property_readonly("algebras", [](const doc::Document& d) { return names_of(d.algebras); })
      .def_property_readonly("bimodules", [](const doc::Document& d) { return names_of(d.bimodules); })
      .def_property_readonly("morphisms", [](const doc::Document& d) { return names_of(d.morphisms); })
      .def_property_readonly("clfs", [](const doc::Document& d) { return names_of(d.clfs); })
      .def("add", &doc::parse_into, py::arg("text"))
      .def("emit_bimodule", [](const doc::Document& d, const std::string& n) { return doc::emit_bimodule(*d.bimodule(n)); })
      .def("emit_morphism",
           [](const doc::Document& d, const std::string& n) { return doc::emit_morphism(n, d.morphism(n)); })
      .def(
          "execute_json",
          [](doc::Document& d, const std::vector<std::string>& args) {
            auto r = cmd::execute(args, d);
            return std::make_pair(r.exit_code(), cmd::render_json(r).dump());
          },
          py::arg("args"))
      .def("execute_text",
           [](doc::Document& d, const std::vector<std::string>& args) {
             auto r = cmd::execute(args, d);
             return std::make_pair(r.exit_code(), cmd::render_text(r));
           })
      .def("run_all_json", [](doc::Document& d) {
        std::vector<std::string> out;
        for (const auto& r : cmd::run_all(d)) out.push_back(cmd::render_json(r).dump());
        return out;
      });

  m.def("parse_document", &doc::parse_document, py::arg("text"));
}
