#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gstrata/analysis.hpp"
#include "gstrata/borel.hpp"
#include "gstrata/errors.hpp"
#include "gstrata/io.hpp"

namespace py = pybind11;
using namespace gstrata;

namespace {

// Everything crosses the boundary as JSON text; the Python side decodes it.
json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

MonomialIdeal ideal_arg(const std::string& text) { return ideal_from_json(parse(text)); }

std::string dump(const json& v) { return v.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Groebner strata of monomial ideals (JSON in, JSON out).";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def("gotzmann_number", [](const std::string& poly) { return gotzmann_number(UniPoly::parse(poly)); },
        py::arg("poly"));

  m.def(
      "hilbert_polynomial",
      [](const std::string& ideal) { return hilbert_polynomial(ideal_arg(ideal)).polynomial.to_string(); },
      py::arg("ideal"));

  m.def(
      "truncate", [](const std::string& ideal, int degree) { return dump(ideal_to_json(ideal_arg(ideal).truncate(degree))); },
      py::arg("ideal"), py::arg("degree"));

  m.def(
      "lexsegment",
      [](const std::vector<int>& a, std::optional<int> degree) {
        auto j = lexsegment_ideal(a);
        if (degree) j = j.truncate(*degree);
        return dump(ideal_to_json(j));
      },
      py::arg("a"), py::arg("degree") = py::none());

  m.def(
      "is_borel_fixed", [](const std::string& ideal) { return is_borel_fixed(ideal_arg(ideal)); }, py::arg("ideal"));

  m.def(
      "find_segment_order",
      [](const std::string& ideal, int degree) {
        auto res = find_segment_order(ideal_arg(ideal), degree);
        json out{{"found", res.found}, {"weight", res.weight}, {"candidatesTried", res.candidates_tried}};
        return dump(out);
      },
      py::arg("ideal"), py::arg("degree"));

  m.def(
      "stratum",
      [](const std::string& ideal, const std::string& order, const std::string& tail_mode) {
        auto j = ideal_arg(ideal);
        auto ord = parse_order_spec(order, j.nvars());
        py::gil_scoped_release release;
        return dump(stratum_to_json(stratum_ideal(j, tails(j, ord, parse_tail_mode(tail_mode)), ord)));
      },
      py::arg("ideal"), py::arg("order") = "degrevlex", py::arg("tails") = "homogeneous");

  m.def(
      "embed_stratum_json",
      [](const std::string& stratum) {
        auto res = stratum_from_json(parse(stratum));
        const auto& vars = res.family.vars;
        py::gil_scoped_release release;
        auto split = eliminable_split(res.linear_polys(), vars.size());
        return dump(embedding_to_json(minimal_embedding(res.h_polys(), split, vars), vars));
      },
      py::arg("stratum"));

  m.def(
      "embed",
      [](const std::string& ideal, const std::string& order) {
        auto j = ideal_arg(ideal);
        auto ord = parse_order_spec(order, j.nvars());
        py::gil_scoped_release release;
        auto fam = generic_generators(j, ord, tails(j, ord, TailMode::Homogeneous));
        return dump(embedding_to_json(embed_or_evaluate(fam), fam.vars));
      },
      py::arg("ideal"), py::arg("order") = "degrevlex");

  m.def(
      "analyze",
      [](const std::string& ideal, const std::string& order, std::optional<int> degree, bool matrix) {
        auto j = ideal_arg(ideal);
        auto ord = parse_order_spec(order, j.nvars());
        AnalysisOptions opts;
        opts.degree = degree;
        opts.matrix_path = matrix;
        py::gil_scoped_release release;
        auto rep = analyze(j, ord, opts);
        return std::make_pair(dump(analysis_to_json(rep)), analysis_to_markdown(rep));
      },
      py::arg("ideal"), py::arg("order") = "degrevlex", py::arg("degree") = py::none(), py::arg("matrix") = true);

  m.def(
      "truncation_check",
      [](const std::string& ideal, int s, int mdeg, const std::string& order) {
        auto j = ideal_arg(ideal);
        auto ord = parse_order_spec(order, j.nvars());
        py::gil_scoped_release release;
        auto rep = truncation_isomorphism_check(j, s, mdeg, ord);
        return dump({{"isomorphic", rep.isomorphic}, {"reason", rep.reason}, {"edS", rep.ed_s}, {"edM", rep.ed_m}});
      },
      py::arg("ideal"), py::arg("s"), py::arg("m"), py::arg("order"));
}
