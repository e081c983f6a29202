#include <doctest.h>

#include <json.hpp>

#include "hamcoh/report.hpp"

using namespace hamcoh;

namespace {

ComputeRequest request(Mode mode, std::vector<int> weights, std::string degrees) {
  ComputeRequest r;
  r.mode = mode;
  r.weights = std::move(weights);
  if (!degrees.empty()) r.degrees = DegreeRange::parse(degrees);
  return r;
}

nlohmann::json run_json(const ComputeRequest& r) { return nlohmann::json::parse(render(r, run_compute(r))); }

}  // namespace

TEST_CASE("degree ranges") {
  CHECK(DegreeRange::parse("0..8").max == 8);
  CHECK(DegreeRange::parse("5").min == 5);
  CHECK_THROWS_AS(DegreeRange::parse("3..1"), UsageError);
  CHECK_THROWS_AS(DegreeRange::parse("a..b"), UsageError);
  CHECK_THROWS_AS(DegreeRange::parse("-1..2"), UsageError);
  CHECK_THROWS_AS(DegreeRange::parse(""), UsageError);
}

TEST_CASE("request validation") {
  CHECK_THROWS_AS(request(Mode::absolute, {}, "0..8").validate(), UsageError);
  CHECK_THROWS_AS(request(Mode::absolute, {0}, "").validate(), UsageError);
  CHECK_THROWS_AS(request(Mode::anomaly_check, {}, "").validate(), UsageError);
  CHECK_THROWS_AS(request(Mode::model, {2}, "0..8").validate(), UsageError);
  CHECK_THROWS_AS(request(Mode::absolute, {0, 0}, "0..8").validate(), UsageError);
  auto primes = request(Mode::sp, {}, "");
  primes.engine.primes = {4294967291ULL};
  CHECK_THROWS_AS(primes.validate(), UsageError);
  CHECK_NOTHROW(request(Mode::sp, {}, "").validate());
  CHECK_THROWS_AS(parse_mode("spectral"), UsageError);
  CHECK(parse_mode("anomaly-check") == Mode::anomaly_check);
}

TEST_CASE("absolute JSON output") {
  const auto j = run_json(request(Mode::absolute, {0}, "0..8"));
  CHECK(j["n"] == 1);
  CHECK(j["weight"] == 0);
  CHECK(j["reduced"] == true);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["timing"].is_null());
  REQUIRE(j["rows"].size() == 9);
  for (const auto& row : j["rows"]) {
    CHECK(row["certified"] == true);
    if (row["d"] != 7 && row["d"] != 0) CHECK(row["betti"] == 0);
  }
  CHECK(j["rows"][7]["betti"] == 1);
  CHECK(j["subcomplex"] == "full");
}

TEST_CASE("reduced subcomplexes are labelled") {
  auto req = request(Mode::absolute, {0}, "6..7");
  req.engine.torus_reduce = true;
  CHECK(run_json(req)["subcomplex"] == "torus");
  req.engine.symmetry_reduce = true;
  const auto j = run_json(req);
  CHECK(j["subcomplex"] == "symmetry");
  CHECK(j["rows"][1]["betti"] == 1);
}

TEST_CASE("sp and diagonal-concentration examples") {
  const auto sp = run_json(request(Mode::sp, {}, ""));
  std::map<int, int> nonzero;
  for (const auto& row : sp["rows"])
    if (row["betti"] != 0) nonzero[row["d"]] = row["betti"];
  CHECK(nonzero == std::map<int, int>{{0, 1}, {3, 1}});
  const auto odd = run_json(request(Mode::absolute, {1}, "0..8"));
  for (const auto& row : odd["rows"]) CHECK(row["betti"] == 0);
}

TEST_CASE("halved weights") {
  auto r = request(Mode::absolute, {-1}, "0..6");
  r.gkf_weights = true;
  CHECK(r.diagonal_weights() == std::vector<int>{-2});
  const auto j = run_json(r);
  CHECK(j["weight"] == -1);
  CHECK(j["weight_convention"] == "gkf");
  CHECK(j["rows"][2]["betti"] == 1);
}

TEST_CASE("output is byte-identical across thread budgets") {
  auto one = request(Mode::absolute, {0, -2}, "0..8");
  auto four = one;
  four.engine.threads = 4;
  CHECK(render(one, run_compute(one)) == render(four, run_compute(four)));
  one.format = four.format = OutputFormat::csv;
  CHECK(render(one, run_compute(one)) == render(four, run_compute(four)));
}

TEST_CASE("anomaly check") {
  auto r = request(Mode::anomaly_check, {}, "");
  r.m = 1;
  const auto result = run_compute(r);
  REQUIRE(result.anomaly.has_value());
  CHECK(result.anomaly->degree == 6);
  CHECK(result.anomaly->betti == 0);
  CHECK(result.anomaly->predicted == 0);
  CHECK(result.exit_code() == kExitOk);
}

TEST_CASE("model mode") {
  const auto j = run_json(request(Mode::model, {0}, "3..8"));
  REQUIRE(j["rows"].size() == 6);
  CHECK(j["rows"][0]["d"] == 3);
  CHECK(j["rows"][4]["betti"] == 1);
}

TEST_CASE("csv output") {
  auto r = request(Mode::absolute, {-2}, "1..3");
  r.format = OutputFormat::csv;
  CHECK(render(r, run_compute(r)) ==
        "n,mode,w,d,dim,rank_out,rank_in,betti,certified\n"
        "1,absolute,-2,1,0,0,0,0,1\n"
        "1,absolute,-2,2,1,0,0,1,1\n"
        "1,absolute,-2,3,3,3,0,0,1\n");
}

TEST_CASE("claim catalogue") {
  const auto j = nlohmann::json::parse(claims_catalogue());
  CHECK(j["version"] == 1);
  for (const auto& c : j["claims"]) {
    CHECK_FALSE(c["anchor"].get<std::string>().empty());
    const auto src = c["source"].get<std::string>();
    CHECK((src == "reference" || src == "derived"));
    if (src == "derived") CHECK(c["expected"] == "model");
  }
}

TEST_CASE("verification suites") {
  for (const auto& suite : {"gkf-n1", "vanishing-n1", "odd-weight-n1", "sp-small"}) {
    const auto report = run_verify(suite);
    CAPTURE(suite);
    CHECK(report.status() == "pass");
    CHECK_FALSE(report.rows.empty());
    for (const auto& row : report.rows) CHECK_FALSE(row.anchor.empty());
  }
  CHECK_THROWS_AS(run_verify("nope"), UsageError);
  CHECK(suite_names().size() == 5);
  CHECK(suite_names(true).back() == "vanishing-n2-stretch");
}

TEST_CASE("budgets skip rather than fail") {
  VerifyBudget budget;
  budget.max_sector_dim = 10;
  const auto report = run_verify("vanishing-n2-stretch", budget);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) CHECK(row.status == RowStatus::skipped);
  CHECK(report.status() == "incomplete");
  CHECK(report.exit_code() == kExitIncomplete);
  const auto text = render_report(report);
  CHECK(text.find("SKIPPED") != std::string::npos);
}

TEST_CASE("failed rows print expected and computed") {
  const auto report = run_verify("relative-n1");
  const auto text = render_report(report);
  CHECK(text.find("expected") != std::string::npos);
  CHECK(text.find("computed") != std::string::npos);
  const auto j = nlohmann::json::parse(render_report(report, true));
  CHECK(j["rows"].size() == 3);
}
