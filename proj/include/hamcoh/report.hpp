#pragma once

// Requests, serialization and verification suites behind the command line.

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamcoh/cohomology.hpp"
#include "hamcoh/gkf_model.hpp"

namespace hamcoh {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUncertified = 3;
inline constexpr int kExitIncomplete = 4;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Mode { absolute, relative, sp, model, anomaly_check };
enum class OutputFormat { json, csv };

Mode parse_mode(const std::string& text);
std::string to_string(Mode mode);
OutputFormat parse_format(const std::string& text);

struct DegreeRange {
  int min = 0;
  int max = 0;
  /// "a..b" or a single degree "a".
  static DegreeRange parse(const std::string& text);
};

struct ComputeRequest {
  int n = 1;
  /// Weights as given on input; halved convention when gkf_weights is set.
  std::vector<int> weights;
  std::optional<DegreeRange> degrees;
  Mode mode = Mode::absolute;
  bool reduced = true;
  std::optional<int> m;
  bool gkf_weights = false;
  OutputFormat format = OutputFormat::json;
  bool timing = false;
  ModelConventions conventions;
  EngineOptions engine;

  /// Diagonal-convention weights.
  std::vector<int> diagonal_weights() const;
  /// Checks mode-specific completeness; throws UsageError.
  void validate() const;
};

struct AnomalyCheck {
  int m = 0;
  int degree = 0;
  int weight = 0;
  long long betti = 0;
  long long predicted = 0;
  bool certified = true;
};

struct ComputeResult {
  std::vector<BettiTable> tables;
  std::optional<AnomalyCheck> anomaly;
  double seconds = 0;

  bool certified() const;
  int exit_code() const { return certified() ? kExitOk : kExitUncertified; }
};

ComputeResult run_compute(const ComputeRequest& req);

/// JSON or CSV text, newline terminated. Identical requests give identical
/// bytes unless timing is requested.
std::string render(const ComputeRequest& req, const ComputeResult& result);

/// JSON object of one table in the documented schema (no tool_version).
std::string table_json(const BettiTable& table, bool gkf_weights = false);

struct VerifyBudget {
  double seconds = std::numeric_limits<double>::infinity();
  /// Claims needing a cochain sector larger than this are skipped.
  std::size_t max_sector_dim = std::numeric_limits<std::size_t>::max();
  int threads = 1;
};

enum class RowStatus { pass, fail, skipped };
std::string to_string(RowStatus status);

struct VerificationRow {
  std::string claim_id;
  std::string anchor;
  std::string source;  ///< "reference" (published value) or "derived" (model)
  std::string expected;
  std::string computed;
  RowStatus status = RowStatus::skipped;
  double runtime = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationRow> rows;

  /// "pass" iff every row passes; "fail" if any row fails; otherwise
  /// "incomplete".
  std::string status() const;
  int exit_code() const;
};

/// Suites known to run_verify; the stretch suite only when asked.
std::vector<std::string> suite_names(bool include_stretch = false);

/// Runs one suite, or every default suite for "all". Throws UsageError for
/// unknown names.
VerificationReport run_verify(const std::string& suite, const VerifyBudget& budget = {});

/// Plain-text table, or JSON when `as_json`.
std::string render_report(const VerificationReport& report, bool as_json = false);

/// The claim catalogue shipped with the tool.
const std::string& claims_catalogue();

}  // namespace hamcoh
