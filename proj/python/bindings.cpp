#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamcoh/cohomology.hpp"
#include "hamcoh/gkf_model.hpp"
#include "hamcoh/report.hpp"

namespace py = pybind11;
using namespace hamcoh;

namespace {

EngineOptions engine(int threads, bool torus_reduce, std::size_t exact_threshold,
                     const std::optional<std::vector<std::uint64_t>>& primes) {
  EngineOptions opts;
  opts.threads = threads;
  opts.torus_reduce = torus_reduce;
  opts.exact_threshold = exact_threshold;
  if (primes) opts.primes = *primes;
  return opts;
}

py::dict table_dict(const BettiTable& t) {
  py::list rows;
  for (const auto& r : t.rows) {
    py::dict row;
    row["d"] = r.degree;
    row["dim"] = r.dim;
    row["rank_out"] = r.rank_out;
    row["rank_in"] = r.rank_in;
    row["betti"] = r.betti;
    row["certified"] = r.certified;
    rows.append(row);
  }
  py::dict out;
  out["n"] = t.spec.n();
  out["kind"] = to_string(t.kind);
  out["weight"] = t.weight;
  out["reduced"] = t.reduced;
  out["complete"] = t.complete;
  out["rows"] = rows;
  return out;
}

SectorScope parse_scope(const std::string& s) {
  if (s == "full") return SectorScope::full;
  if (s == "horizontal") return SectorScope::horizontal;
  if (s == "subalgebra") return SectorScope::subalgebra;
  throw std::invalid_argument("unknown scope '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chevalley-Eilenberg cohomology of formal Hamiltonian vector fields";
  m.attr("__version__") = kToolVersion;

  m.def(
      "bracket",
      [](int n, std::vector<unsigned> a, std::vector<unsigned> b) {
        const AlgebraSpec spec(n);
        std::vector<std::pair<std::vector<unsigned>, std::string>> out;
        const auto result = poisson_bracket(Monomial(std::move(a)), Monomial(std::move(b)), spec);
        for (const auto& [mono, c] : result.terms())
          out.emplace_back(mono.exponents(), c.get_str());
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("b"),
      "Poisson bracket of two monomials given as exponent lists (p_1..p_n, q_1..q_n).");

  m.def(
      "sector_dimension",
      [](int n, int degree, int weight, const std::string& scope, bool torus_zero) {
        return enumerate_sector(AlgebraSpec(n), degree, weight, {parse_scope(scope), torus_zero}).size();
      },
      py::arg("n"), py::arg("degree"), py::arg("weight"), py::arg("scope") = "full", py::arg("torus_zero") = false);

  m.def(
      "differential",
      [](int n, int degree, int weight, bool torus_zero) {
        const SectorOptions so{SectorScope::full, torus_zero};
        const auto mat = assemble_differential(enumerate_sector(AlgebraSpec(n), degree, weight, so),
                                               enumerate_sector(AlgebraSpec(n), degree + 1, weight, so));
        std::vector<std::tuple<std::size_t, std::size_t, std::string>> entries;
        for (const auto& e : mat.rational_entries()) entries.emplace_back(e.row, e.col, e.value.get_str());
        return py::make_tuple(mat.rows(), mat.cols(), entries);
      },
      py::arg("n"), py::arg("degree"), py::arg("weight"), py::arg("torus_zero") = false,
      "Sparse matrix of d as (rows, cols, [(row, col, 'num/den')]).");

  m.def(
      "betti_table",
      [](int n, int weight, int degree_min, int degree_max, bool reduced, int threads, bool torus_reduce,
         std::size_t exact_threshold, std::optional<std::vector<std::uint64_t>> primes, bool symmetry_reduce) {
        auto opts = engine(threads, torus_reduce, exact_threshold, primes);
        opts.symmetry_reduce = symmetry_reduce;
        py::gil_scoped_release release;
        auto t = betti_table(AlgebraSpec(n), weight, degree_min, degree_max, reduced, opts);
        py::gil_scoped_acquire acquire;
        return table_dict(t);
      },
      py::arg("n"), py::arg("weight"), py::arg("degree_min"), py::arg("degree_max"), py::arg("reduced") = true,
      py::arg("threads") = 1, py::arg("torus_reduce") = false, py::arg("exact_threshold") = kDefaultExactThreshold,
      py::arg("primes") = std::nullopt, py::arg("symmetry_reduce") = false);

  m.def(
      "betti_table_relative",
      [](int n, int weight, int degree_min, int degree_max, bool reduced, int threads) {
        EngineOptions opts;
        opts.threads = threads;
        return table_dict(betti_table_relative(AlgebraSpec(n), weight, degree_min, degree_max, reduced, opts));
      },
      py::arg("n"), py::arg("weight"), py::arg("degree_min"), py::arg("degree_max"), py::arg("reduced") = true,
      py::arg("threads") = 1);

  m.def(
      "sp_cohomology", [](int n, int threads) {
        EngineOptions opts;
        opts.threads = threads;
        return table_dict(sp_cohomology(AlgebraSpec(n), opts));
      },
      py::arg("n"), py::arg("threads") = 1);

  m.def(
      "predicted_betti",
      [](int n, int weight, int degree_max, bool reduced, int gamma_degree) {
        return table_dict(predicted_betti(n, weight, degree_max, reduced, ModelConventions{gamma_degree}));
      },
      py::arg("n"), py::arg("weight"), py::arg("degree_max"), py::arg("reduced") = true, py::arg("gamma_degree") = 2);

  m.def(
      "model_basis",
      [](int n, int degree_max, int gamma_degree) {
        const ModelConventions conv{gamma_degree};
        std::vector<std::tuple<std::string, int, int>> out;
        for (const auto& mono : model_basis(n, degree_max, conv))
          out.emplace_back(mono.to_string(), mono.degree(conv), mono.weight());
        return out;
      },
      py::arg("n"), py::arg("degree_max"), py::arg("gamma_degree") = 2,
      "Nonzero model monomials as (name, degree, weight).");

  m.def("anomaly_target", &anomaly_target, py::arg("n"), py::arg("m"));

  m.def(
      "representative",
      [](int n, int degree, int weight, bool relative) {
        const auto rep = extract_representative(AlgebraSpec(n), degree, weight, relative);
        py::list terms;
        for (std::size_t i = 0; i < rep.coefficients.size(); ++i)
          if (rep.coefficients[i] != 0) terms.append(py::make_tuple(rep.basis.describe(i), rep.coefficients[i].get_str()));
        py::dict out;
        out["degree"] = rep.degree;
        out["weight"] = rep.weight;
        out["relative"] = rep.relative;
        out["terms"] = terms;
        out["text"] = describe(rep);
        return out;
      },
      py::arg("n"), py::arg("degree"), py::arg("weight"), py::arg("relative") = false);

  m.def(
      "verify",
      [](const std::string& suite, double seconds, std::size_t max_sector_dim, int threads) {
        VerifyBudget budget;
        budget.seconds = seconds;
        budget.max_sector_dim = max_sector_dim;
        budget.threads = threads;
        return render_report(run_verify(suite, budget), true);
      },
      py::arg("suite"), py::arg("seconds") = std::numeric_limits<double>::infinity(),
      py::arg("max_sector_dim") = std::numeric_limits<std::size_t>::max(), py::arg("threads") = 1,
      "Runs a verification suite and returns the JSON report text.");

  py::register_exception<EmptyCohomology>(m, "EmptyCohomology", PyExc_ValueError);
  py::register_exception<ThresholdExceeded>(m, "ThresholdExceeded", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
}
