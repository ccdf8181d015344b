#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "groundwork/cli.hpp"
#include "groundwork/corpus.hpp"
#include "groundwork/dsl.hpp"
#include "groundwork/grounding.hpp"
#include "groundwork/report.hpp"
#include "groundwork/validator.hpp"

namespace py = pybind11;
using namespace groundwork;

namespace {

// Created once at import and intentionally never released.
py::handle g_document_error;

[[noreturn]] void raise_document_error(const std::string& message, py::list errors) {
  py::object exc = g_document_error(message);
  exc.attr("errors") = errors;
  PyErr_SetObject(g_document_error.ptr(), exc.ptr());
  throw py::error_already_set();
}

py::list parse_error_list(const std::vector<dsl::ParseError>& errors) {
  py::list out;
  for (const auto& e : errors) {
    py::dict d;
    d["line"] = e.line;
    d["column"] = e.column;
    d["message"] = e.message;
    d["expected"] = e.expected;
    out.append(d);
  }
  return out;
}

World load_world(const std::string& text) {
  const auto parsed = dsl::parse(text);
  if (!parsed.ok()) {
    const auto& e = parsed.errors.front();
    raise_document_error("line " + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " +
                             e.message,
                         parse_error_list(parsed.errors));
  }
  auto elaborated = dsl::elaborate(parsed.document);
  if (!elaborated.ok()) {
    py::list errors;
    for (const auto& e : elaborated.errors) {
      py::dict d;
      d["line"] = e.line;
      d["message"] = e.message;
      errors.append(d);
    }
    const auto& e = elaborated.errors.front();
    raise_document_error("line " + std::to_string(e.line) + ": " + e.message, errors);
  }
  return std::move(*elaborated.world);
}

std::vector<std::string> labels(const std::vector<TimePoint>& times) {
  std::vector<std::string> out;
  for (const auto& t : times) out.push_back(t.label);
  return out;
}

py::dict diagnostic_dict(const Diagnostic& d) {
  py::dict out;
  const auto& info = rule_info(d.code);
  out["code"] = std::string(info.id);
  out["name"] = std::string(info.name);
  out["severity"] = std::string(to_string(d.severity));
  out["subjects"] = d.subjects;
  out["times"] = labels(d.times);
  out["line"] = d.source_line ? py::object(py::int_(*d.source_line)) : py::object(py::none());
  out["message"] = d.message;
  return out;
}

py::dict report_dict(const ValidationReport& r) {
  py::list diags;
  for (const auto& d : r.diagnostics) diags.append(diagnostic_dict(d));
  py::dict out;
  out["diagnostics"] = diags;
  out["errors"] = r.errors;
  out["warnings"] = r.warnings;
  out["infos"] = r.infos;
  out["world_digest"] = r.world_digest;
  out["json_lines"] = render_json_lines(r);
  return out;
}

py::dict id_map(const IdSetMap& m) {
  py::dict out;
  for (const auto& [bearer, ids] : m) {
    out[py::str(bearer)] = std::vector<std::string>(ids.begin(), ids.end());
  }
  return out;
}

/// Converts library exceptions raised by a query into ValueError.
template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const GroundingError& e) {
    throw py::value_error(e.what());
  } catch (const ModelError& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grounding relations over time-indexed ontology worlds";

  g_document_error = PyErr_NewException("groundwork.DocumentError", PyExc_ValueError, nullptr);
  m.attr("DocumentError") = py::reinterpret_borrow<py::object>(g_document_error);

  py::class_<World>(m, "World")
      .def_static("from_text", &load_world, py::arg("text"),
                  "Parse and elaborate a .bfo document; raises DocumentError.")
      .def_property_readonly("timeline",
                             [](const World& w) { return labels(w.timeline()); })
      .def_property_readonly("entities",
                             [](const World& w) {
                               std::map<std::string, std::string> out;
                               for (const auto& [id, e] : w.entities()) out[id] = e.class_name;
                               return out;
                             })
      .def("to_text", [](const World& w) { return dsl::serialize(dsl::to_document(w)); })
      .def("validate", [](const World& w) { return report_dict(validate(w)); })
      .def(
          "bearer_at",
          [](const World& w, const std::string& sdc, const std::string& t) {
            return guarded([&] { return bearer_of(snapshot(w, t), sdc); });
          },
          py::arg("sdc"), py::arg("time"))
      .def(
          "qualities_of",
          [](const World& w, const std::string& bearer, const std::string& t) {
            return guarded([&] { return qualities_of(snapshot(w, t), bearer); });
          },
          py::arg("bearer"), py::arg("time"))
      .def(
          "diff",
          [](const World& w, const std::string& from, const std::string& to) {
            const auto c = guarded([&] { return diff_snapshots(snapshot(w, from), snapshot(w, to)); });
            py::dict out;
            out["lost_qualities"] = id_map(c.lost_qualities);
            out["gained_qualities"] = id_map(c.gained_qualities);
            out["lost_parts"] = id_map(c.lost_parts);
            out["gained_parts"] = id_map(c.gained_parts);
            out["lost_realizables"] = id_map(c.lost_realizables);
            out["gained_realizables"] = id_map(c.gained_realizables);
            return out;
          },
          py::arg("from_time"), py::arg("to_time"))
      .def(
          "infer",
          [](const World& w, const std::string& x) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& c : guarded([&] { return infer_grounding_candidates(w, x); })) {
              out.emplace_back(c.ground, std::string(to_string(c.kind)));
            }
            return out;
          },
          py::arg("realizable"))
      .def(
          "check_dependence_grounding",
          [](const World& w, const std::string& x, const std::string& y) {
            const auto v = guarded([&] { return check_dependence_grounding(w, x, y); });
            py::dict out;
            out["status"] = std::string(to_string(v.status));
            out["failing_times"] = labels(v.failing_times());
            py::list evidence;
            for (const auto& e : v.evidence) {
              evidence.append(py::make_tuple(e.time.label, e.condition, e.pass));
            }
            out["evidence"] = evidence;
            return out;
          },
          py::arg("realizable"), py::arg("ground"))
      .def(
          "classify_grounding",
          [](const World& w, const std::string& x, const std::string& y) {
            return std::string(to_string(guarded([&] { return classify_grounding(w, x, y); })));
          },
          py::arg("realizable"), py::arg("ground"))
      .def(
          "check_mereological_grounding",
          [](const World& w, const std::string& x, const std::string& whole,
             const std::string& part) {
            const auto v = guarded([&] { return check_mereological_grounding(w, x, whole, part); });
            py::dict out;
            out["status"] = std::string(to_string(v.status));
            std::vector<std::pair<std::string, std::string>> witnesses;
            for (const auto& e : v.witnesses) witnesses.emplace_back(e.t1.label, e.t2.label);
            out["witnesses"] = witnesses;
            return out;
          },
          py::arg("realizable"), py::arg("whole"), py::arg("part"))
      .def(
          "reduce_mereological_to_dependence",
          [](const World& w, const std::string& x, const std::string& whole,
             const std::string& part) {
            return guarded([&] { return reduce_mereological_to_dependence(w, x, whole, part); });
          },
          py::arg("realizable"), py::arg("whole"), py::arg("part"));

  m.def(
      "parse_errors",
      [](const std::string& text) { return parse_error_list(dsl::parse(text).errors); },
      py::arg("text"), "Every syntax error in the document, as dicts.");

  m.def(
      "format_document",
      [](const std::string& text) {
        const auto parsed = dsl::parse(text);
        if (!parsed.ok()) {
          raise_document_error("document has syntax errors", parse_error_list(parsed.errors));
        }
        return dsl::serialize(parsed.document);
      },
      py::arg("text"), "Canonical serialization of a document.");

  m.def(
      "explain",
      [](const std::string& code, std::optional<std::string> text) {
        ValidationReport report;
        if (text) report = validate(load_world(*text));
        try {
          return explain(report, code);
        } catch (const UnknownRuleError& e) {
          throw py::key_error(e.what());
        }
      },
      py::arg("code"), py::arg("text") = py::none());

  m.def("rule_catalog", [] {
    py::list out;
    for (const auto& r : rule_catalog()) {
      py::dict d;
      d["code"] = std::string(r.id);
      d["name"] = std::string(r.name);
      d["severity"] = std::string(to_string(r.severity));
      d["summary"] = std::string(r.summary);
      out.append(d);
    }
    return out;
  });

  m.def("list_cases", [] { return corpus::list_cases(); });

  m.def(
      "load_case",
      [](const std::string& id) {
        corpus::CorpusCase c;
        try {
          c = corpus::load_case(id);
        } catch (const corpus::UnknownCaseError& e) {
          throw py::key_error(e.what());
        }
        py::dict out;
        out["id"] = c.id;
        out["document"] = c.document;
        out["manifest"] = c.manifest;
        py::dict inferences;
        for (const auto& [x, list] : c.expected_inferences) {
          std::vector<std::pair<std::string, std::string>> items;
          for (const auto& g : list) items.emplace_back(g.ground, std::string(to_string(g.kind)));
          inferences[py::str(x)] = items;
        }
        out["expected_inferences"] = inferences;
        return out;
      },
      py::arg("case_id"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"groundwork"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end in-process: (exit code, stdout, stderr).");
}
