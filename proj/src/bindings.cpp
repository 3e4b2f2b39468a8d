#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "eqkh/annular.hpp"
#include "eqkh/chromatic.hpp"
#include "eqkh/cli.hpp"
#include "eqkh/equivariant.hpp"
#include "eqkh/errors.hpp"
#include "eqkh/khovanov.hpp"
#include "eqkh/oracles.hpp"
#include "eqkh/table.hpp"

namespace py = pybind11;

namespace {

using namespace eqkh;

py::tuple key_of(const grading& g, int arity) {
  if (arity == 3) return py::make_tuple(g[0], g[1], g[2]);
  return py::make_tuple(g[0], g[1]);
}

py::dict to_dict(const homology_table& t) {
  py::dict out;
  for (auto& [g, dim] : t.entries) out[key_of(g, t.arity)] = dim;
  return out;
}

py::list to_list(const std::vector<grading>& gs, int arity) {
  py::list out;
  for (auto& g : gs) out.append(key_of(g, arity));
  return out;
}

kh_flavor flavor_of(const std::string& name) {
  if (name == "oriented") return kh_flavor::oriented;
  if (name == "framed") return kh_flavor::framed;
  throw structure_error("flavor must be oriented or framed");
}

std::string status_of(int p, const std::vector<grading>& mismatches) {
  if (p % 2 == 0) return "SKIP";
  return mismatches.empty() ? "PASS" : "FAIL";
}

}  // namespace

PYBIND11_MODULE(_eqkh, m) {
  m.doc() = "equivariant homology of symmetric links and graphs";

  py::register_exception<parse_error>(m, "ParseError");
  py::register_exception<cap_error>(m, "CapError");
  py::register_exception<even_order_error>(m, "EvenOrderError");
  py::register_exception<structure_error>(m, "StructureError");

  m.def(
      "kh",
      [](const std::string& text, const std::string& flavor, int cap, int jobs) {
        auto kc = build_khovanov_complex(parse_diagram(text), flavor_of(flavor), cap);
        auto dims = kc.cx.homology(jobs);
        py::dict out;
        out["homology"] = to_dict(make_table(dims, 2));
        out[flavor == "framed" ? "euler" : "jones"] = euler_polynomial(dims).to_string();
        return out;
      },
      py::arg("text"), py::arg("flavor") = "oriented", py::arg("cap") = 16, py::arg("jobs") = 1,
      "homology table and polynomial of a link diagram");

  m.def(
      "kheq",
      [](const std::string& text, const std::string& flavor, int cap, bool allow_even_p,
         int jobs) {
        auto od = parse_orbit_diagram(text);
        auto res = build_equivariant(od, flavor_of(flavor), cap, allow_even_p, jobs);
        py::dict out;
        out["total"] = to_dict(res.homology);
        out["equivariant"] = to_dict(res.quotient_homology);
        out["fixed"] = to_dict(res.fixed_dims);
        out["mismatches"] = to_list(res.mismatches, 2);
        out[flavor == "framed" ? "euler_g" : "jones_g"] = res.equivariant_jones.to_string();
        out["check"] = status_of(od.action.p, res.mismatches);
        return out;
      },
      py::arg("text"), py::arg("flavor") = "oriented", py::arg("cap") = 16,
      py::arg("allow_even_p") = false, py::arg("jobs") = 1,
      "equivariant homology of a symmetric diagram");

  m.def(
      "annular",
      [](const std::string& text, int cap, int jobs) {
        auto ac = build_annular_complex(parse_diagram(text), cap);
        py::dict out;
        out["homology"] = to_dict(make_table(ac.cx.homology(jobs), 3));
        out["warnings"] = ac.warnings;
        return out;
      },
      py::arg("text"), py::arg("cap") = 16, py::arg("jobs") = 1,
      "annular homology of a diagram with rays");

  m.def(
      "annular_equivariant",
      [](const std::string& text, int cap, bool allow_even_p, int jobs) {
        auto od = parse_orbit_diagram(text);
        auto res = build_annular_equivariant(od, cap, allow_even_p, jobs);
        py::dict out;
        out["total"] = to_dict(res.homology);
        out["equivariant"] = to_dict(res.quotient_homology);
        out["fixed"] = to_dict(res.fixed_dims);
        out["mismatches"] = to_list(res.mismatches, 3);
        out["check"] = status_of(od.action.p, res.mismatches);
        return out;
      },
      py::arg("text"), py::arg("cap") = 16, py::arg("allow_even_p") = false, py::arg("jobs") = 1,
      "equivariant annular homology of a symmetric diagram with rays");

  m.def(
      "graph",
      [](const std::string& text, int cap, int jobs) {
        auto gc = build_graph_complex(parse_graph(text), cap);
        auto ck = chromatic_euler_check(gc);
        py::dict out;
        out["homology"] = to_dict(make_table(gc.cx.homology(jobs), 2));
        out["chromatic"] = ck.from_euler.to_string("λ");
        out["match"] = ck.match;
        return out;
      },
      py::arg("text"), py::arg("cap") = 16, py::arg("jobs") = 1,
      "chromatic graph homology and its euler polynomial");

  m.def(
      "graph_equivariant",
      [](const std::string& text, int cap, bool allow_even_p, int jobs) {
        auto g = parse_graph(text);
        auto res = build_graph_equivariant(g, cap, allow_even_p, jobs);
        py::dict out;
        out["total"] = to_dict(res.homology);
        out["equivariant"] = to_dict(res.quotient_homology);
        out["fixed"] = to_dict(res.fixed_dims);
        out["mismatches"] = to_list(res.mismatches, 2);
        out["check"] = status_of(g.p, res.mismatches);
        return out;
      },
      py::arg("text"), py::arg("cap") = 16, py::arg("allow_even_p") = false, py::arg("jobs") = 1,
      "equivariant chromatic graph homology");

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "run the command-line front end; returns (code, stdout, stderr)");
}
