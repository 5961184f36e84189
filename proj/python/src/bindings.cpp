#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftgrp/codes.hpp"
#include "shiftgrp/constructions.hpp"
#include "shiftgrp/errors.hpp"
#include "shiftgrp/groupoid.hpp"
#include "shiftgrp/invariants.hpp"
#include "shiftgrp/lpa.hpp"
#include "shiftgrp/stabilization.hpp"
#include "shiftgrp/table.hpp"

namespace py = pybind11;
using namespace shiftgrp;

namespace {

// Rationals cross the boundary as "p/q" strings.
std::string rational_text(const Rational& r) { return to_string(r); }

void bind_errors(py::module_& m) {
  static py::exception<Error> base(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ReferenceError>(m, "ReferenceError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ComposabilityError>(m, "ComposabilityError", base.ptr());
  py::register_exception<CoverageError>(m, "CoverageError", base.ptr());
  py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());
  py::register_exception<AlignmentError>(m, "AlignmentError", base.ptr());
  py::register_exception<BoundExceededError>(m, "BoundExceededError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<InconclusiveError>(m, "InconclusiveError", base.ptr());
  py::register_exception<MalformedCandidateError>(m, "MalformedCandidateError", base.ptr());
  py::register_exception<InterfaceError>(m, "InterfaceError", base.ptr());
}

void bind_reports(py::module_& m) {
  py::class_<Verdict>(m, "Verdict")
      .def_readonly("name", &Verdict::name)
      .def_property_readonly("outcome", [](const Verdict& v) { return to_string(v.outcome); })
      .def_readonly("witness", &Verdict::witness)
      .def_readonly("detail", &Verdict::detail)
      .def("passed", &Verdict::passed)
      .def("__repr__", [](const Verdict& v) { return "<Verdict " + v.name + " " + to_string(v.outcome) + ">"; });
  py::class_<Report>(m, "Report")
      .def_readonly("title", &Report::title)
      .def_readonly("parameters", &Report::parameters)
      .def_readonly("verdicts", &Report::verdicts)
      .def_property_readonly("overall", [](const Report& r) { return to_string(r.overall()); })
      .def("passed", &Report::passed)
      .def("find", &Report::find, py::return_value_policy::reference_internal)
      .def("to_text", &Report::to_text)
      .def("__repr__", [](const Report& r) { return "<Report " + r.title + ": " + to_string(r.overall()) + ">"; });
}

void bind_graphs(py::module_& m) {
  py::class_<Graph>(m, "Graph")
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("vertices",
                             [](const Graph& g) {
                               std::vector<std::string> out;
                               for (Vertex v = 0; v < g.vertex_count(); ++v) out.push_back(g.vertex_id(v));
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::tuple<std::string, std::string, std::string>> out;
                               for (Edge e = 0; e < g.edge_count(); ++e)
                                 out.emplace_back(g.edge_id(e), g.vertex_id(g.src(e)), g.vertex_id(g.rng(e)));
                               return out;
                             })
      .def("adjacency",
           [](const Graph& g) {
             auto a = g.adjacency();
             std::vector<std::vector<long long>> rows(a.n, std::vector<long long>(a.n));
             for (std::size_t i = 0; i < a.n; ++i)
               for (std::size_t j = 0; j < a.n; ++j) rows[i][j] = a.at(i, j);
             return rows;
           })
      .def("sinks",
           [](const Graph& g) {
             std::vector<std::string> out;
             for (Vertex v = 0; v < g.vertex_count(); ++v)
               if (g.is_sink(v)) out.push_back(g.vertex_id(v));
             return out;
           })
      .def("has_sinks", &Graph::has_sinks)
      .def("has_condition_L", [](const Graph& g) { return has_condition_L(g); })
      .def("__str__", [](const Graph& g) { return format_graph(g); })
      .def(py::self == py::self);
  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); });
  m.def("graph_from_matrix", [](const std::vector<std::vector<int>>& a) { return graph_from_matrix(a); });
  m.def("parse_matrix", [](const std::string& text) { return parse_matrix(text); });

  m.def("periodic_count", &periodic_count, py::arg("graph"), py::arg("period"));
  m.def("bowen_franks", [](const Graph& g) {
    auto b = bowen_franks(g);
    return py::make_tuple(b.rank, b.torsion, to_string(b));
  });
}

void bind_groupoid(py::module_& m) {
  py::class_<LassoPoint>(m, "LassoPoint")
      .def_property_readonly("is_infinite", &LassoPoint::is_infinite)
      .def(py::self == py::self)
      .def("__hash__", &LassoPoint::hash);
  m.def("parse_lasso", [](const Graph& g, const std::string& s) { return parse_lasso(g, s); });
  m.def("lasso_to_string", [](const Graph& g, const LassoPoint& x) { return to_string(g, x); });

  py::class_<WeightFunction>(m, "WeightFunction")
      .def_static("parse", [](const Graph& g, const std::string& s) { return WeightFunction::parse(g, s); })
      .def_static("constant",
                  [](const Graph& g, const std::string& c) { return WeightFunction::constant(g, parse_rational(c)); })
      .def_property_readonly("values", [](const WeightFunction& k) {
        std::vector<std::string> out;
        for (auto const& r : k.values()) out.push_back(rational_text(r));
        return out;
      });

  py::class_<GroupoidElement>(m, "GroupoidElement")
      .def_readonly("x", &GroupoidElement::x)
      .def_readonly("lag", &GroupoidElement::p)
      .def_readonly("y", &GroupoidElement::y)
      .def(py::self == py::self)
      .def("__hash__", [](const GroupoidElement& a) { return ElementHash{}(a); });
  m.def("make_element", &make_element, py::arg("graph"), py::arg("x"), py::arg("y"), py::arg("m"), py::arg("n"));
  m.def("unit", &unit);
  m.def("is_unit", &is_unit);
  m.def("compose", &compose);
  m.def("inverse", &inverse);
  m.def("cocycle_value", [](const Graph& g, const WeightFunction& k, const GroupoidElement& a) {
    return rational_text(cocycle_value(g, k, a));
  });
  m.def("elements_to_depth", &elements_to_depth, py::arg("graph"), py::arg("depth"));
  m.def("element_to_string", [](const Graph& g, const GroupoidElement& a) { return to_string(g, a); });
}

void bind_codes(py::module_& m) {
  py::class_<BlockCode>(m, "BlockCode")
      .def_readonly("memory", &BlockCode::memory)
      .def_readonly("anticipation", &BlockCode::anticipation)
      .def("format", [](const BlockCode& c, const std::string& e, const std::string& f) {
        return format_block_code(c, e, f);
      }, py::arg("e_name") = "E", py::arg("f_name") = "F");
  m.def("parse_block_code", [](const Graph& e, const Graph& f, const std::string& s) {
    return parse_block_code(e, f, s);
  });
  m.def("identity_code", &identity_code);
  m.def("apply_periodic", [](const BlockCode& c, const Graph& e, const Graph& f, const std::string& cycle) {
    return to_string(f, apply_periodic(c, parse_word(e, cycle)));
  });
  m.def("check_two_sided_conjugacy", &check_two_sided_conjugacy, py::arg("code"), py::arg("inverse"),
        py::arg("max_period") = 6);

  py::class_<EventualConjugacyCandidate>(m, "EventualConjugacyCandidate")
      .def_readonly("k_window", &EventualConjugacyCandidate::k_window)
      .def_readonly("kprime_window", &EventualConjugacyCandidate::kprime_window)
      .def("__str__", [](const EventualConjugacyCandidate& c) { return format_candidate(c); });
  m.def("parse_candidate", [](const Graph& e, const Graph& f, const std::string& s) {
    return parse_candidate(e, f, s);
  });
  m.def("candidate_from_codes", &candidate_from_codes);
  m.def("check_eventual_conjugacy", &check_eventual_conjugacy, py::arg("candidate"), py::arg("depth"));
}

void bind_tables(py::module_& m) {
  py::class_<BisectionTable>(m, "BisectionTable")
      .def_readonly("levelled", &BisectionTable::levelled)
      .def(py::self == py::self);
  m.def("parse_table", [](const Graph& e, const Graph& f, const std::string& s) { return parse_table(e, f, s); });
  m.def("format_table", &format_table);
  m.def("identity_table", &identity_table, py::arg("graph"), py::arg("levelled") = false);
  m.def("verify_table", &verify_table, py::arg("e"), py::arg("f"), py::arg("table"), py::arg("ke"), py::arg("kf"),
        py::arg("depth"));
  m.def("verify_stabilized_table", &verify_stabilized_table, py::arg("e"), py::arg("f"), py::arg("table"),
        py::arg("ke"), py::arg("kf"), py::arg("depth"));
}

void bind_constructions(py::module_& m) {
  py::class_<IsoTables>(m, "IsoTables")
      .def(py::init<BisectionTable, BisectionTable>(), py::arg("forward"), py::arg("inverse"))
      .def_readonly("forward", &IsoTables::forward)
      .def_readonly("inverse", &IsoTables::inverse);
  m.def("iso_from_eventual_conjugacy", &iso_from_eventual_conjugacy, py::arg("candidate"), py::arg("depth"));
  m.def("eventual_conjugacy_from_iso", &eventual_conjugacy_from_iso, py::arg("e"), py::arg("f"), py::arg("tables"),
        py::arg("depth"), py::arg("verify_depth") = 3);

  py::class_<StabilizedIso>(m, "StabilizedIso")
      .def_readonly("window", &StabilizedIso::window)
      .def_property_readonly("collapse", [](const StabilizedIso& s) { return s.one_sided.collapse; })
      .def_property_readonly("class_sizes",
                             [](const StabilizedIso& s) {
                               std::vector<std::size_t> out;
                               for (auto const& c : s.relation.classes) out.push_back(c.size());
                               return out;
                             })
      .def("table", &StabilizedIso::table);
  m.def("stabilized_iso_from_conjugacy", &stabilized_iso_from_conjugacy, py::arg("code"), py::arg("inverse"),
        py::arg("window_cap") = 8);

  py::class_<ConjugacyExtraction>(m, "ConjugacyExtraction")
      .def_readonly("code", &ConjugacyExtraction::code)
      .def_readonly("inverse", &ConjugacyExtraction::inverse)
      .def_readonly("lag_bound", &ConjugacyExtraction::lag_bound)
      .def_readonly("injectivity", &ConjugacyExtraction::injectivity)
      .def_readonly("surjectivity", &ConjugacyExtraction::surjectivity)
      .def_readonly("check", &ConjugacyExtraction::check);
  m.def("conjugacy_from_stabilized_iso", &conjugacy_from_stabilized_iso, py::arg("e"), py::arg("f"),
        py::arg("table"), py::arg("verify_depth") = 3, py::arg("cap") = 8);
}

void bind_lpa(py::module_& m) {
  py::class_<LpaElement>(m, "LpaElement")
      .def(py::init<>())
      .def("is_zero", &LpaElement::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def("scaled", [](const LpaElement& a, const std::string& c) { return a.scaled(parse_rational(c)); })
      .def(py::self == py::self);
  m.def("parse_lpa", [](const Graph& g, const std::string& s) { return parse_lpa(g, s); });
  m.def("lpa_to_string", [](const Graph& g, const LpaElement& a) { return to_string(g, a); });
  m.def("multiply", &multiply);
  m.def("star", &star);
  m.def("normal_form", &normal_form, py::arg("graph"), py::arg("element"), py::arg("depth") = 0);
  m.def("lpa_equal", &lpa_equal);
  m.def("degree", [](const Graph& g, const LpaElement& a, const WeightFunction& k) -> py::object {
    auto d = degree(g, a, k);
    if (!d) return py::none();
    return py::make_tuple(d->z, rational_text(d->weight));
  });

  py::class_<GeneratorImages>(m, "GeneratorImages")
      .def_readonly("vertex", &GeneratorImages::vertex)
      .def_readonly("edge", &GeneratorImages::edge);
  m.def("identity_images", &identity_images);
  m.def("induced_hom_from_table", &induced_hom_from_table);
  m.def(
      "verify_generator_hom",
      [](const Graph& e, const Graph& f, const GeneratorImages& images, const WeightFunction& ke,
         const WeightFunction& kf, std::size_t depth, const GeneratorImages* inverse) {
        return verify_generator_hom(e, f, images, ke, kf, depth, inverse);
      },
      py::arg("e"), py::arg("f"), py::arg("images"), py::arg("ke"), py::arg("kf"), py::arg("depth"),
      py::arg("inverse") = nullptr);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conjugacies of edge shifts and isomorphisms of graph groupoids";
  bind_errors(m);
  bind_reports(m);
  bind_graphs(m);
  bind_groupoid(m);
  bind_codes(m);
  bind_tables(m);
  bind_constructions(m);
  bind_lpa(m);
}
