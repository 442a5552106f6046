#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thetaforge/modfunc.hpp"
#include "thetaforge/theta_engine.hpp"
#include "thetaforge/voa_char.hpp"

namespace thetaforge {

inline constexpr const char* kToolVersion = "thetaforge 0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitPrecondition = 4,
  kExitIo = 5,
  kExitScanFailures = 6,
  kExitInternal = 70,
};

struct Job {
  std::string command;  // theta | quotient | replicable | identify | doubling | character
  std::string code_source;
  Flavor flavor = Flavor::Plain;
  std::vector<std::string> generators;
  int truncation = 16;
  int k_rep = kDefaultKRep;
};

int default_truncation(std::string_view command);
std::vector<std::string> job_commands();

// Canonical encoding: generators normalized through Perm::to_string, keys sorted.
nlohmann::json canonical_job(const Job& job);
std::string fingerprint(const Job& job);  // hex SHA-256 of canonical_job(job).dump()

// Pure: identical jobs give byte-identical output.
nlohmann::json run_job(const Job& job);
nlohmann::json result_record(const Job& job, const nlohmann::json& outputs);

// Appends one JSON line (the record plus a "timestamp") under an exclusive flock.
void append_cache(const std::string& path, const nlohmann::json& record);

// Maps an in-flight exception to an exit code and a structured diagnostic.
int exit_code_for(const std::exception& e);
nlohmann::json diagnostic(const std::exception& e);

std::vector<std::string> read_group_file(const std::string& path);

struct ScanLine {
  int line = 0;
  std::optional<nlohmann::json> record;
  std::optional<nlohmann::json> error;
};
// One result per non-blank, non-comment line, in input order.
std::vector<ScanLine> scan(const Job& base, const std::vector<std::string>& lines, unsigned threads);
unsigned worker_count();  // THETAFORGE_THREADS, else hardware concurrency

std::string render_table(const nlohmann::json& value);

struct FigureRow {
  std::string label;
  CheckStatus status = CheckStatus::NotApplicable;
  std::string detail;
};

struct FigureReport {
  std::string id;
  std::vector<FigureRow> rows;
  bool passed() const;
};

std::vector<std::string> figure_ids();
FigureReport verify_figure(std::string_view id);
nlohmann::json to_json(const FigureReport& r);

// Codes used by the figure tables that are not in the catalog.
BinaryCode d16_plus_code();
BinaryCode d12_squared_code();

}  // namespace thetaforge
