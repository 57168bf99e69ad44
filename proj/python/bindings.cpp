#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgb/analysis.hpp"
#include "sgb/cli_io.hpp"
#include "sgb/engine.hpp"
#include "sgb/error.hpp"
#include "sgb/hilbert.hpp"
#include "sgb/series.hpp"

namespace py = pybind11;
using namespace sgb;

namespace {

SystemFile load(const std::string& text) { return parse_system(text); }

std::string gb_json(const std::string& text, const std::string& engine, std::optional<int> cap) {
  SystemFile sf = load(text);
  GroebnerBasis gb;
  if (engine == "buchberger") {
    gb = buchberger(sf.system);
  } else if (engine == "macaulay") {
    auto deg = sf.system.degrees();
    int d = cap ? *cap
                : lazard_bound(static_cast<int>(sf.system.nvars()),
                               static_cast<int>(deg.size()), deg);
    gb = gb_up_to(sf.system, d);
  } else {
    throw Error(ErrorKind::InvalidArgument, "engine must be 'macaulay' or 'buchberger'");
  }
  return gb_report_json(gb, sf.vars, engine);
}

EngineKind engine_kind(const std::string& name) {
  if (name == "buchberger") return EngineKind::Buchberger;
  if (name == "macaulay") return EngineKind::Macaulay;
  throw Error(ErrorKind::InvalidArgument, "engine must be 'macaulay' or 'buchberger'");
}

}  // namespace

PYBIND11_MODULE(_sgb, m) {
  m.doc() = "Groebner bases, Hilbert series and degree bounds over prime fields";

  static py::handle error_type =
      py::exception<Error>(m, "SgbError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
      inst.attr("kind") = std::string(to_string(e.kind()));
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        inst.attr("line") = pe->line();
        inst.attr("column") = pe->column();
      }
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  m.def("canonical_system", [](const std::string& text) { return serialize_system(load(text)); },
        py::arg("text"), "Parse a system document and print it canonically.");
  m.def("homogenize_system",
        [](const std::string& text) {
          SystemFile sf = load(text);
          std::vector<Polynomial> hs;
          for (const auto& f : sf.system.polys()) hs.push_back(homogenize(f));
          auto vars = sf.vars;
          vars.push_back("y");
          return serialize_system(
              {PolySystem(sf.system.field(), vars.size(), std::move(hs)), vars, sf.meta_json});
        },
        py::arg("text"));
  m.def("groebner_basis_json", &gb_json, py::arg("text"), py::arg("engine") = "buchberger",
        py::arg("cap") = std::nullopt);
  m.def("analyze_json",
        [](const std::string& text) {
          SystemFile sf = load(text);
          return analyze_report_json(sf.system, sf.vars);
        },
        py::arg("text"));
  m.def("verify_json",
        [](const std::string& text, std::uint64_t seed, const std::string& engine,
           std::size_t attempts, std::optional<int> cap) {
          SystemFile sf = load(text);
          VerifyOptions opts;
          opts.engine = engine_kind(engine);
          opts.attempts = attempts;
          opts.cap = cap;
          return theorem_report_json(verify_main_theorem(sf.system, seed, opts), sf.vars);
        },
        py::arg("text"), py::arg("seed") = 0, py::arg("engine") = "buchberger",
        py::arg("attempts") = kDefaultAttempts, py::arg("cap") = std::nullopt);
  m.def("bound_json",
        [](int n, std::vector<int> degrees, double omega) {
          return bound_report_json(bound_report(n, degrees, omega));
        },
        py::arg("n"), py::arg("degrees"), py::arg("omega") = kDefaultOmega);
  m.def("degree_bound_Dnm",
        [](int n, int m, std::vector<int> degrees) { return degree_bound_Dnm(n, m, degrees); },
        py::arg("n"), py::arg("m"), py::arg("degrees"));
  m.def("lazard_bound",
        [](int n, int m, std::vector<int> degrees) { return lazard_bound(n, m, degrees); },
        py::arg("n"), py::arg("m"), py::arg("degrees"));
  m.def("hilbert_numerator",
        [](std::size_t nvars, const std::vector<std::vector<std::uint32_t>>& gens) {
          std::vector<Monomial> ms;
          for (const auto& e : gens) ms.emplace_back(e);
          std::vector<std::string> out;
          for (const auto& c : hilbert_numerator(MonomialIdeal(nvars, ms))) out.push_back(c.str());
          return out;
        },
        py::arg("nvars"), py::arg("generators"),
        "Numerator coefficients, lowest degree first, as decimal strings.");
  m.def("rref",
        [](const std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t p,
           const std::string& method) {
          PrimeField f(p);
          std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
          Matrix a(r, c);
          for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
              throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
            for (std::size_t j = 0; j < c; ++j) a(i, j) = f.reduce(rows[i][j]);
          }
          RrefResult res = method == "block" ? rref_block(a, f) : rref_naive(a, f);
          std::vector<std::vector<std::uint32_t>> out(r);
          for (std::size_t i = 0; i < r; ++i) {
            auto row = res.matrix.row(i);
            out[i].assign(row.begin(), row.end());
          }
          return py::make_tuple(out, res.pivots, res.rank);
        },
        py::arg("rows"), py::arg("p"), py::arg("method") = "naive");
  m.def("experiment_csv",
        [](std::size_t n, std::vector<int> degrees, std::uint32_t q, std::size_t trials,
           std::uint64_t seed, const std::string& construction, const std::string& engine) {
          ExperimentParams p;
          p.n = n;
          p.degrees = std::move(degrees);
          p.q = q;
          p.trials = trials;
          p.seed = seed;
          if (construction != "generic" && construction != "Z")
            throw Error(ErrorKind::InvalidArgument, "construction must be 'generic' or 'Z'");
          p.construction = construction == "Z" ? Construction::Z : Construction::Generic;
          p.engine = engine_kind(engine);
          std::vector<ExperimentRecord> recs;
          {
            py::gil_scoped_release release;
            recs = run_experiment(p);
          }
          return py::make_tuple(to_csv(recs), format_summary(summarize(recs)));
        },
        py::arg("n"), py::arg("degrees"), py::arg("q") = 31, py::arg("trials") = 10,
        py::arg("seed") = 0, py::arg("construction") = "generic",
        py::arg("engine") = "buchberger");
  m.def("run",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = run_command(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI invocation; returns (exit_code, stdout, stderr).");
}
