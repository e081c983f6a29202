#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "hamcoh/matrix_io.hpp"
#include "hamcoh/report.hpp"

namespace {

std::shared_ptr<const hamcoh::MatrixCache> open_cache(const std::string& flag) {
  if (!flag.empty()) return std::make_shared<hamcoh::MatrixCache>(flag);
  if (auto dir = hamcoh::MatrixCache::default_directory()) return std::make_shared<hamcoh::MatrixCache>(*dir);
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight-graded Chevalley-Eilenberg cohomology of formal Hamiltonian vector fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hamcoh::kToolVersion));

  // compute
  auto* compute = app.add_subcommand("compute", "Compute a Betti table");
  hamcoh::ComputeRequest req;
  std::string degrees, mode = "absolute", format = "json", cache_dir;
  std::vector<std::uint64_t> primes;
  bool unreduced = false;
  std::optional<int> m;
  compute->add_option("--n", req.n, "Number of Darboux pairs")->required();
  compute->add_option("--weight,--weights", req.weights, "Weight(s), diagonal convention unless --gkf-weights")
      ->delimiter(',');
  compute->add_option("--degrees", degrees, "Degree range a..b");
  compute->add_option("--mode", mode, "absolute | relative | sp | model | anomaly-check");
  compute->add_flag("--reduced", req.reduced, "Drop the constants in degree 0 (default)");
  compute->add_flag("--unreduced", unreduced, "Keep the constants in degree 0");
  compute->add_option("--m", m, "Extra dimensions for anomaly-check");
  compute->add_option("--primes", primes, "Comma-separated primes below 2^32")->delimiter(',');
  compute->add_option("--exact-threshold", req.engine.exact_threshold, "Largest dimension for exact elimination");
  compute->add_flag("--gkf-weights", req.gkf_weights, "Weights in the halved GKF convention");
  compute->add_option("--threads", req.engine.threads, "Worker threads");
  compute->add_option("--cache-dir", cache_dir, "Matrix cache directory (default $HAMCOH_CACHE_DIR)");
  compute->add_option("--format", format, "json | csv");
  compute->add_flag("--torus-reduce", req.engine.torus_reduce, "Use the torus-invariant subcomplex");
  compute->add_flag("--symmetry-reduce", req.engine.symmetry_reduce,
                    "Use the subcomplex invariant under signed pair permutations (implies --torus-reduce)");
  compute->add_flag("--timing", req.timing, "Report wall time");
  compute->add_option("--gamma-degree", req.conventions.gamma_degree, "Degree of Gamma in the model");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, verify_format = "text";
  hamcoh::VerifyBudget budget;
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--seconds", budget.seconds, "Time budget");
  verify->add_option("--max-sector-dim", budget.max_sector_dim, "Largest cochain sector to attempt");
  verify->add_option("--threads", budget.threads, "Worker threads");
  verify->add_option("--format", verify_format, "text | json");
  verify->add_flag_callback("--list", [] {
    for (const auto& s : hamcoh::suite_names(true)) std::cout << s << '\n';
    std::exit(0);
  }, "List suites");

  // cache
  auto* cache = app.add_subcommand("cache", "Manage cached differentials");
  cache->require_subcommand(1);
  auto* cache_export = cache->add_subcommand("export", "Write an absolute differential");
  int ex_n = 1, ex_degree = 0, ex_weight = 0;
  bool ex_torus = false;
  std::string ex_out;
  cache_export->add_option("--n", ex_n)->required();
  cache_export->add_option("--degree", ex_degree)->required();
  cache_export->add_option("--weight", ex_weight)->required();
  cache_export->add_flag("--torus-reduce", ex_torus);
  cache_export->add_option("--out", ex_out, "Output file (default stdout)");
  auto* cache_inspect = cache->add_subcommand("inspect", "Validate and summarize a matrix file");
  std::string inspect_path;
  cache_inspect->add_option("path", inspect_path)->required();
  auto* cache_clear = cache->add_subcommand("clear", "Empty the cache directory");
  std::string clear_dir;
  cache_clear->add_option("--cache-dir", clear_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hamcoh::kExitUsage;
  }

  try {
    if (*compute) {
      req.mode = hamcoh::parse_mode(mode);
      req.format = hamcoh::parse_format(format);
      if (unreduced) req.reduced = false;
      if (!compute->get_option("--reduced")->empty() && unreduced)
        throw hamcoh::UsageError("--reduced and --unreduced are exclusive");
      if (!degrees.empty()) req.degrees = hamcoh::DegreeRange::parse(degrees);
      if (!primes.empty()) req.engine.primes = primes;
      req.m = m;
      req.engine.cache = open_cache(cache_dir);
      const auto result = hamcoh::run_compute(req);
      std::cout << hamcoh::render(req, result);
      return result.exit_code();
    }
    if (*verify) {
      if (verify_format != "text" && verify_format != "json")
        throw hamcoh::UsageError("unknown format '" + verify_format + "'");
      const auto report = hamcoh::run_verify(suite, budget);
      std::cout << hamcoh::render_report(report, verify_format == "json");
      return report.exit_code();
    }
    if (*cache_export) {
      hamcoh::EngineOptions opts;
      opts.torus_reduce = ex_torus;
      const auto mat = hamcoh::absolute_differential(hamcoh::AlgebraSpec(ex_n), ex_degree, ex_weight, opts);
      if (ex_out.empty()) {
        hamcoh::write_matrix(std::cout, mat);
      } else {
        hamcoh::save_matrix(ex_out, mat);
      }
      return 0;
    }
    if (*cache_inspect) {
      const auto mat = hamcoh::load_matrix(inspect_path);
      std::cout << "rows " << mat.rows() << "\ncols " << mat.cols() << "\nfield "
                << (mat.field().is_rational() ? std::string("QQ") : std::to_string(mat.field().modulus())) << "\nnonzeros "
                << mat.nonzeros() << '\n';
      return 0;
    }
    if (*cache_clear) {
      auto c = open_cache(clear_dir);
      if (!c) throw hamcoh::UsageError("no cache directory: pass --cache-dir or set HAMCOH_CACHE_DIR");
      std::cout << "removed " << c->clear() << " files\n";
      return 0;
    }
  } catch (const hamcoh::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return hamcoh::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return hamcoh::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hamcoh::kExitFailed;
  }
  return 0;
}
