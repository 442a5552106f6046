#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "thetaforge/cli.hpp"

using namespace thetaforge;

namespace {

Job job(const std::string& command, std::vector<std::string> gens, int trunc = 0) {
  Job j;
  j.command = command;
  j.code_source = "hamming8";
  j.generators = std::move(gens);
  j.truncation = trunc ? trunc : default_truncation(command);
  return j;
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(THETAFORGE_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const std::string kData = THETAFORGE_DATA;

}  // namespace

TEST_CASE("jobs are deterministic") {
  for (const auto& cmd : job_commands()) {
    CAPTURE(cmd);
    const Job j = job(cmd, {"(2,8,4,6)(3,5)"});
    CHECK(run_job(j).dump() == run_job(j).dump());
    CHECK(fingerprint(j) == fingerprint(j));
    CHECK(result_record(j, run_job(j)).dump() == result_record(j, run_job(j)).dump());
  }
}

TEST_CASE("fingerprints hash the canonical job") {
  const std::string a = fingerprint(job("theta", {"(2,8,4,6)(3,5)"}, 8));
  CHECK(a.size() == 64);
  CHECK(a.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(fingerprint(job("theta", {"(3,5)(6,2,8,4)"}, 8)) == a);
  CHECK(fingerprint(job("theta", {" (4,6,2,8) (5,3) "}, 8)) == a);
  CHECK(fingerprint(job("theta", {"(2,8,4,6)(3,5)"}, 9)) != a);
  CHECK(fingerprint(job("quotient", {"(2,8,4,6)(3,5)"}, 8)) != a);
  const auto c = canonical_job(job("theta", {"(3,5)(6,2,8,4)"}, 8));
  CHECK(c["generators"][0] == "(2,8,4,6)(3,5)");
  CHECK_FALSE(c.contains("k_rep"));
  CHECK(canonical_job(job("replicable", {"()"}))["k_rep"] == kDefaultKRep);
  const auto rec = result_record(job("theta", {"()"}, 4), nlohmann::json::object());
  CHECK(rec["tool_version"] == kToolVersion);
  CHECK_FALSE(rec.contains("timestamp"));
}

TEST_CASE("job outputs") {
  const auto t = run_job(job("theta", {"(2,8,4,6)(3,5)"}, 6));
  CHECK(qseries_from_json(t["theta"]).coeff(1) == 14);
  CHECK(t["orbit_type"] == "1^2 2^1 4^1");
  const auto r = run_job(job("replicable", {"(1,5,2)(3,7,8)"}));
  CHECK(r["replicability"]["verdict"] == "replicable-up-to-12");
  CHECK(r["replicability"]["identified_as"] == "T_3A");
  const auto d = run_job(job("doubling", {"(1,7)(2,4)(3,8)(5,6)"}));
  CHECK(d["lift"]["doubling"] == true);
  CHECK_THROWS_AS(run_job(job("doubling", {"(1,7)(2,4)(3,8)(5,6)", "()"})), PreconditionError);
  CHECK_THROWS_AS(run_job(job("replicable", {"()"}, 8)), PreconditionError);
  CHECK_THROWS_AS(run_job(job("theta", {"(1,9)"})), ParseError);
  Job bad = job("theta", {"()"});
  bad.code_source = "/no/such.code";
  CHECK_THROWS_AS(run_job(bad), IoError);
}

TEST_CASE("scan keeps input order for any thread count") {
  const auto lines = read_group_file(kData + "/hamming_classes.grp");
  const Job base = job("replicable", {});
  const auto one = scan(base, lines, 1);
  const auto four = scan(base, lines, 4);
  REQUIRE(one.size() == 11);
  REQUIRE(four.size() == one.size());
  int replicable = 0;
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].record.has_value());
    CHECK(one[i].record->dump() == four[i].record->dump());
    CHECK(one[i].line == four[i].line);
    if (i) CHECK(one[i].line > one[i - 1].line);
    replicable += (*one[i].record)["outputs"]["replicability"]["verdict"] == "replicable-up-to-12";
  }
  CHECK(replicable == 7);
  CHECK(scan(base, {}, 4).empty());
  CHECK(scan(base, {"# only a comment", "   "}, 2).empty());
  const auto mixed = scan(base, {"()", "(1,9)", "(1,2)"}, 3);
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0].record.has_value());
  REQUIRE(mixed[1].error.has_value());
  CHECK((*mixed[1].error)["line"] == 2);
  CHECK((*mixed[1].error)["error"] == "parse");
  REQUIRE(mixed[2].error.has_value());
  CHECK((*mixed[2].error)["line"] == 3);
}

TEST_CASE("exit codes and diagnostics") {
  CHECK(exit_code_for(ParseError("x")) == kExitParse);
  CHECK(exit_code_for(PreconditionError("x")) == kExitPrecondition);
  CHECK(exit_code_for(UnsupportedError("x")) == kExitPrecondition);
  CHECK(exit_code_for(IoError("x")) == kExitIo);
  CHECK(exit_code_for(std::runtime_error("x")) == kExitInternal);
  CHECK(diagnostic(IoError("gone"))["message"] == "gone");
  CHECK(diagnostic(std::logic_error("x"))["error"] == "internal");
}

TEST_CASE("cache appends timestamped lines") {
  const std::string path = "test_cli_cache.jsonl";
  std::remove(path.c_str());
  const Job j = job("theta", {"()"}, 4);
  append_cache(path, result_record(j, run_job(j)));
  append_cache(path, result_record(j, run_job(j)));
  std::ifstream in(path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec["fingerprint"] == fingerprint(j));
    CHECK(rec["timestamp"].get<std::string>().size() == 20);
    ++n;
  }
  CHECK(n == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS(append_cache("/no/such/dir/cache.jsonl", nlohmann::json::object()), IoError);
}

TEST_CASE("table rendering") {
  const std::string t = render_table(run_job(job("theta", {"(2,8,4,6)(3,5)"}, 4)));
  CHECK(t.find("theta") != std::string::npos);
  CHECK(t.find("14q") != std::string::npos);
}

TEST_CASE("every figure reproduces") {
  for (const auto& id : figure_ids()) {
    CAPTURE(id);
    const FigureReport r = verify_figure(id);
    CHECK(r.passed());
    CHECK_FALSE(r.rows.empty());
    CHECK(to_json(r)["figure"] == id);
  }
  CHECK_THROWS_AS(verify_figure("fig99"), PreconditionError);
}

TEST_CASE("command line binary") {
  const Run ok = run_cli("theta --code hamming8 --group \"(2,8,4,6)(3,5)\" --trunc 4");
  CHECK(ok.status == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(qseries_from_json(j["outputs"]["theta"]).coeff(2) == 30);
  CHECK(run_cli("theta --code hamming8 --group \"(2,8,4,6)(3,5)\" --trunc 4").out == ok.out);
  CHECK(run_cli("theta --code hamming8 --group \"(1,9)\"").status == kExitParse);
  CHECK(run_cli("theta --code /no/such.code").status == kExitIo);
  CHECK(run_cli("").status == kExitUsage);
  CHECK(run_cli("theta --json --table --code hamming8").status == kExitUsage);
  CHECK(run_cli("verify ex33").status == 0);
  const Run s = run_cli("scan --code hamming8 --group-file " + kData + "/hamming_classes.grp");
  CHECK(s.status == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 11);
}
