#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cinf/errors.hpp"
#include "cinf/parser.hpp"
#include "cinf/session.hpp"
#include "cinf/term_calculus.hpp"

namespace py = pybind11;
using namespace cinf;

namespace {

py::tuple run(Session& s, const std::string& line) {
  CommandResult r = s.execute_line(line);
  return py::make_tuple(r.exit_code, r.text, r.artifact.is_null() ? "" : r.artifact.dump());
}

}  // namespace

PYBIND11_MODULE(_cinf, m) {
  m.doc() = "Certificate-producing calculus for finitely generated smooth rings.";

  py::class_<Session>(m, "Session")
      .def(py::init<>())
      .def("execute", &run, py::arg("line"),
           "Runs one command. Returns (exit_code, text, artifact_json).")
      .def("to_json", [](const Session& s) { return s.to_json().dump(); })
      .def("save", &Session::save)
      .def("load", &Session::load)
      .def_property(
          "depth", [](const Session& s) { return s.config.depth; },
          [](Session& s, unsigned d) { s.config.depth = d; })
      .def_property(
          "cell_budget", [](const Session& s) { return s.config.cell_budget; },
          [](Session& s, std::size_t b) { s.config.cell_budget = b; })
      .def_property(
          "workers", [](const Session& s) { return s.config.workers; },
          [](Session& s, unsigned w) { s.config.workers = w; });

  m.def("normalize", [](const std::string& t) { return to_infix(normalize(parse_term(t))); },
        py::arg("term"));
  m.def("to_sexpr", [](const std::string& t) { return to_sexpr(parse_term(t)); }, py::arg("term"));

  m.attr("PROVED") = static_cast<int>(kProved);
  m.attr("REFUTED") = static_cast<int>(kRefuted);
  m.attr("UNKNOWN") = static_cast<int>(kUnknown);
  m.attr("ERROR") = static_cast<int>(kError);
}
