#include "hamcoh/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "claims_data.hpp"

namespace hamcoh {

using Json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Mode parse_mode(const std::string& text) {
  if (text == "absolute") return Mode::absolute;
  if (text == "relative") return Mode::relative;
  if (text == "sp") return Mode::sp;
  if (text == "model") return Mode::model;
  if (text == "anomaly-check") return Mode::anomaly_check;
  throw UsageError("unknown mode '" + text + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::absolute: return "absolute";
    case Mode::relative: return "relative";
    case Mode::sp: return "sp";
    case Mode::model: return "model";
    case Mode::anomaly_check: return "anomaly-check";
  }
  return "absolute";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw UsageError("unknown format '" + text + "'");
}

DegreeRange DegreeRange::parse(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw UsageError("bad degree range '" + text + "'");
    return v;
  };
  DegreeRange r;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    r.min = number(text.substr(0, dots));
    r.max = number(text.substr(dots + 2));
  } else {
    r.min = r.max = number(text);
  }
  if (r.min < 0 || r.max < r.min) throw UsageError("degree range must satisfy 0 <= min <= max: '" + text + "'");
  return r;
}

std::vector<int> ComputeRequest::diagonal_weights() const {
  std::vector<int> out;
  for (int w : weights) out.push_back(gkf_weights ? 2 * w : w);
  return out;
}

void ComputeRequest::validate() const {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (engine.primes.size() < 2) throw UsageError("at least two primes are required");
  if (engine.threads < 1) throw UsageError("--threads must be >= 1");
  if (conventions.gamma_degree < 1) throw UsageError("--gamma-degree must be >= 1");
  switch (mode) {
    case Mode::absolute:
    case Mode::relative:
    case Mode::model:
      if (weights.empty()) throw UsageError(to_string(mode) + " mode requires --weight");
      if (!degrees) throw UsageError(to_string(mode) + " mode requires --degrees");
      break;
    case Mode::sp:
      break;
    case Mode::anomaly_check:
      if (!m) throw UsageError("anomaly-check mode requires --m");
      if (*m < 0) throw UsageError("--m must be >= 0");
      break;
  }
  if (mode == Mode::model)
    for (int w : diagonal_weights())
      if (w > 0) throw UsageError("model covers non-positive weight only");
  std::set<int> seen;
  for (int w : diagonal_weights())
    if (!seen.insert(w).second) throw UsageError("duplicate weight " + std::to_string(w));
}

bool ComputeResult::certified() const {
  for (const auto& t : tables)
    if (!t.all_certified()) return false;
  return !anomaly || anomaly->certified;
}

ComputeResult run_compute(const ComputeRequest& req) {
  req.validate();
  const auto start = Clock::now();
  const AlgebraSpec spec(req.n);
  ComputeResult result;
  switch (req.mode) {
    case Mode::absolute:
      for (int w : req.diagonal_weights())
        result.tables.push_back(betti_table(spec, w, req.degrees->min, req.degrees->max, req.reduced, req.engine));
      break;
    case Mode::relative:
      for (int w : req.diagonal_weights())
        result.tables.push_back(
            betti_table_relative(spec, w, req.degrees->min, req.degrees->max, req.reduced, req.engine));
      break;
    case Mode::model:
      for (int w : req.diagonal_weights()) {
        BettiTable t = predicted_betti(req.n, w, req.degrees->max, req.reduced, req.conventions, req.engine);
        std::erase_if(t.rows, [&](const BettiRow& r) { return r.degree < req.degrees->min; });
        result.tables.push_back(std::move(t));
      }
      break;
    case Mode::sp:
      result.tables.push_back(sp_cohomology(spec, req.engine));
      break;
    case Mode::anomaly_check: {
      const auto [degree, weight] = anomaly_target(req.n, *req.m);
      BettiTable direct = betti_table(spec, weight, degree, degree, true, req.engine);
      const BettiTable model = predicted_betti(req.n, weight, degree, true, req.conventions, req.engine);
      result.anomaly = AnomalyCheck{*req.m, degree, weight, direct.betti(degree), model.betti(degree),
                                    direct.all_certified()};
      result.tables.push_back(std::move(direct));
      break;
    }
  }
  result.seconds = seconds_since(start);
  return result;
}

namespace {

int shown_weight(int w, bool gkf) { return gkf ? w / 2 : w; }

Json rows_json(const BettiTable& table, bool gkf) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json row;
    row["d"] = r.degree;
    row["w"] = shown_weight(table.weight, gkf);
    row["dim"] = r.dim;
    row["rank_out"] = r.rank_out;
    row["rank_in"] = r.rank_in;
    row["betti"] = r.betti;
    row["certified"] = r.certified;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string subcomplex_name(const BettiTable& table) {
  if (table.symmetry_reduced) return "symmetry";
  if (table.torus_reduced) return "torus";
  return "full";
}

}  // namespace

std::string table_json(const BettiTable& table, bool gkf_weights) {
  Json j;
  j["n"] = table.spec.n();
  j["kind"] = to_string(table.kind);
  j["weight"] = shown_weight(table.weight, gkf_weights);
  j["reduced"] = table.reduced;
  j["subcomplex"] = subcomplex_name(table);
  j["rows"] = rows_json(table, gkf_weights);
  return j.dump();
}

std::string render(const ComputeRequest& req, const ComputeResult& result) {
  const bool gkf = req.gkf_weights;
  if (req.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "n,mode,w,d,dim,rank_out,rank_in,betti,certified\n";
    for (const auto& t : result.tables)
      for (const auto& r : t.rows)
        out << req.n << ',' << to_string(req.mode) << ',' << shown_weight(t.weight, gkf) << ',' << r.degree << ','
            << r.dim << ',' << r.rank_out << ',' << r.rank_in << ',' << r.betti << ',' << (r.certified ? 1 : 0)
            << '\n';
    return out.str();
  }

  Json j;
  j["n"] = req.n;
  j["mode"] = to_string(req.mode);
  if (result.tables.size() == 1) {
    j["weight"] = shown_weight(result.tables.front().weight, gkf);
  } else {
    Json ws = Json::array();
    for (const auto& t : result.tables) ws.push_back(shown_weight(t.weight, gkf));
    j["weight"] = std::move(ws);
  }
  j["weight_convention"] = gkf ? "gkf" : "diagonal";
  j["reduced"] = result.tables.empty() ? req.reduced : result.tables.front().reduced;
  j["subcomplex"] = result.tables.empty() ? "full" : subcomplex_name(result.tables.front());
  Json rows = Json::array();
  for (const auto& t : result.tables)
    for (auto& r : rows_json(t, gkf)) rows.push_back(std::move(r));
  j["rows"] = std::move(rows);
  if (result.anomaly) {
    const auto& a = *result.anomaly;
    Json an;
    an["m"] = a.m;
    an["degree"] = a.degree;
    an["weight"] = shown_weight(a.weight, gkf);
    an["betti"] = a.betti;
    an["predicted"] = a.predicted;
    an["vanishes"] = a.betti == 0;
    an["agrees_with_model"] = a.betti == a.predicted;
    j["anomaly"] = std::move(an);
  }
  j["tool_version"] = kToolVersion;
  if (req.timing) {
    Json timing;
    timing["seconds"] = result.seconds;
    j["timing"] = std::move(timing);
  } else {
    j["timing"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::pass: return "pass";
    case RowStatus::fail: return "fail";
    case RowStatus::skipped: return "skipped";
  }
  return "skipped";
}

std::string VerificationReport::status() const {
  bool all_pass = true;
  for (const auto& r : rows) {
    if (r.status == RowStatus::fail) return "fail";
    all_pass = all_pass && r.status == RowStatus::pass;
  }
  return all_pass ? "pass" : "incomplete";
}

int VerificationReport::exit_code() const {
  const std::string s = status();
  if (s == "pass") return kExitOk;
  if (s == "fail") return kExitFailed;
  return kExitIncomplete;
}

const std::string& claims_catalogue() {
  static const std::string text = kClaimsJson;
  return text;
}

std::vector<std::string> suite_names(bool include_stretch) {
  std::vector<std::string> out{"gkf-n1", "vanishing-n1", "odd-weight-n1", "relative-n1", "sp-small"};
  if (include_stretch) out.push_back("vanishing-n2-stretch");
  return out;
}

namespace {

std::string format_betti(const std::map<int, long long>& nonzero, const std::vector<int>& degrees) {
  std::ostringstream out;
  const bool contiguous =
      degrees.size() > 1 && degrees.back() - degrees.front() + 1 == static_cast<int>(degrees.size());
  if (degrees.size() == 1) {
    out << "d=" << degrees.front();
  } else if (contiguous) {
    out << "d=" << degrees.front() << ".." << degrees.back();
  } else {
    out << "d in [";
    for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? "," : "") << degrees[i];
    out << ']';
  }
  out << " {";
  bool first = true;
  for (const auto& [d, b] : nonzero) {
    out << (first ? "" : ", ") << d << ':' << b;
    first = false;
  }
  out << '}';
  return out.str();
}

std::map<int, long long> restrict_betti(const BettiTable& t, const std::vector<int>& degrees) {
  std::map<int, long long> out;
  for (int d : degrees)
    if (const auto* r = t.row(d); r && r->betti != 0) out[d] = r->betti;
  return out;
}

std::vector<int> claim_degrees(const Json& claim, const AlgebraSpec& spec, const std::string& complex, int weight,
                               const ModelConventions& conv) {
  const Json& d = claim.at("degrees");
  std::vector<int> out;
  if (d.is_array()) {
    for (const auto& x : d) out.push_back(x.get<int>());
  } else if (d.is_object()) {
    for (int k = d.at("min").get<int>(); k <= d.at("max").get<int>(); ++k) out.push_back(k);
  } else {
    int top = 0;
    if (complex == "sp") {
      top = spec.sp_dimension();
    } else {
      top = std::max(0, max_sector_degree(spec, weight));
      if (claim.at("source") == "derived") top = std::max(top, model_degree_bound(spec.n(), conv));
    }
    for (int k = 0; k <= top; ++k) out.push_back(k);
  }
  return out;
}

/// Largest sector needed by a claim, stopping early once `limit` is passed.
std::size_t largest_sector(const AlgebraSpec& spec, const std::string& complex, int weight,
                           const std::vector<int>& degrees, std::size_t limit) {
  std::size_t best = 0;
  std::set<int> needed;
  for (int d : degrees)
    for (int e = std::max(d - 1, 0); e <= d + 1; ++e) needed.insert(e);
  for (int e : needed) {
    SectorOptions so{SectorScope::full, true};
    if (complex == "sp") so = {SectorScope::subalgebra, false};
    best = std::max(best, enumerate_sector(spec, e, complex == "sp" ? 0 : weight, so).size());
    if (best > limit) break;
  }
  return best;
}

BettiTable compute_claim(const AlgebraSpec& spec, const std::string& complex, int weight, bool reduced,
                         const std::vector<int>& degrees, const EngineOptions& opts) {
  if (complex == "sp") return sp_cohomology(spec, opts);
  const bool contiguous = degrees.back() - degrees.front() + 1 == static_cast<int>(degrees.size());
  if (contiguous) {
    return complex == "relative"
               ? betti_table_relative(spec, weight, degrees.front(), degrees.back(), reduced, opts)
               : betti_table(spec, weight, degrees.front(), degrees.back(), reduced, opts);
  }
  BettiTable merged;
  bool first = true;
  for (int d : degrees) {
    BettiTable t = complex == "relative" ? betti_table_relative(spec, weight, d, d, reduced, opts)
                                         : betti_table(spec, weight, d, d, reduced, opts);
    if (first) {
      merged = t;
      merged.rows.clear();
      merged.complete = false;
      first = false;
    }
    merged.rows.push_back(t.rows.front());
  }
  return merged;
}

VerificationRow run_claim(const Json& claim, const VerifyBudget& budget, Clock::time_point suite_start) {
  VerificationRow row;
  row.claim_id = claim.at("id").get<std::string>();
  row.anchor = claim.at("anchor").get<std::string>();
  row.source = claim.at("source").get<std::string>();
  const AlgebraSpec spec(claim.at("n").get<int>());
  const std::string complex = claim.at("complex").get<std::string>();
  const int weight = claim.at("weight").get<int>();
  const bool reduced = claim.at("reduced").get<bool>();
  const ModelConventions conv;
  const std::vector<int> degrees = claim_degrees(claim, spec, complex, weight, conv);

  const auto start = Clock::now();
  if (seconds_since(suite_start) > budget.seconds) {
    row.computed = "time budget exhausted";
    return row;
  }
  if (budget.max_sector_dim != std::numeric_limits<std::size_t>::max()) {
    const std::size_t size = largest_sector(spec, complex, weight, degrees, budget.max_sector_dim);
    if (size > budget.max_sector_dim) {
      row.computed = "sector dimension " + std::to_string(size) + " exceeds budget";
      row.runtime = seconds_since(start);
      return row;
    }
  }

  EngineOptions opts;
  opts.threads = budget.threads;
  opts.torus_reduce = true;
  if (spec.n() > 1 && complex != "sp") opts.exact_threshold = 0;
  if (spec.n() > 1 && complex == "absolute") opts.symmetry_reduce = true;
  std::map<int, long long> expected;
  if (claim.at("expected").is_string()) {
    const BettiTable model = predicted_betti(spec.n(), weight, degrees.back(), reduced, conv);
    expected = restrict_betti(model, degrees);
  } else {
    for (const auto& [d, b] : claim.at("expected").items()) expected[std::stoi(d)] = b.get<long long>();
  }
  row.expected = format_betti(expected, degrees);

  const BettiTable direct = compute_claim(spec, complex, weight, reduced, degrees, opts);
  const auto computed = restrict_betti(direct, degrees);
  row.computed = format_betti(computed, degrees);
  const auto violations = direct.invariant_violations();
  if (!direct.all_certified()) row.computed += " (uncertified)";
  for (const auto& v : violations) row.computed += " [" + v + "]";
  row.status = computed == expected && direct.all_certified() && violations.empty() ? RowStatus::pass
                                                                                    : RowStatus::fail;
  row.runtime = seconds_since(start);
  return row;
}

}  // namespace

VerificationReport run_verify(const std::string& suite, const VerifyBudget& budget) {
  const auto names = suite_names(true);
  const bool all = suite == "all";
  if (!all && std::find(names.begin(), names.end(), suite) == names.end())
    throw UsageError("unknown verification suite '" + suite + "'");
  const auto selected = all ? suite_names(false) : std::vector<std::string>{suite};
  const Json catalogue = Json::parse(claims_catalogue());
  VerificationReport report;
  report.suite = suite;
  const auto start = Clock::now();
  for (const auto& name : selected)
    for (const auto& claim : catalogue.at("claims"))
      if (claim.at("suite") == name) report.rows.push_back(run_claim(claim, budget, start));
  return report;
}

std::string render_report(const VerificationReport& report, bool as_json) {
  if (as_json) {
    Json j;
    j["suite"] = report.suite;
    j["status"] = report.status();
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      Json row;
      row["claim"] = r.claim_id;
      row["anchor"] = r.anchor;
      row["source"] = r.source;
      row["expected"] = r.expected;
      row["computed"] = r.computed;
      row["status"] = to_string(r.status);
      row["runtime"] = r.runtime;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["tool_version"] = kToolVersion;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "suite " << report.suite << '\n';
  for (const auto& r : report.rows) {
    std::string tag = to_string(r.status);
    std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) { return std::toupper(c); });
    out << std::left << std::setw(8) << tag << r.claim_id << "  [" << r.source << "] " << r.anchor << '\n';
    out << "        expected " << r.expected << '\n';
    out << "        computed " << r.computed << '\n';
    out << "        runtime  " << std::fixed << std::setprecision(2) << r.runtime << " s\n";
  }
  out << "status " << report.status() << '\n';
  return out.str();
}

}  // namespace hamcoh
