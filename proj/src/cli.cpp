#include "thetaforge/cli.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace thetaforge {

int default_truncation(std::string_view command) {
  return command == "replicable" || command == "identify" ? 26 : 16;
}

std::vector<std::string> job_commands() {
  return {"theta", "quotient", "replicable", "identify", "doubling", "character"};
}

namespace {

struct Prepared {
  BinaryCode code;
  std::vector<Perm> gens;
  PermGroup group;
  Exponent trunc;
};

Prepared prepare(const Job& job) {
  const auto cmds = job_commands();
  if (std::find(cmds.begin(), cmds.end(), job.command) == cmds.end())
    throw PreconditionError("unknown command '" + job.command + "'");
  if (job.code_source.empty()) throw PreconditionError("a code source is required (--code)");
  if (job.truncation < 1) throw PreconditionError("truncation must be positive");
  Prepared p;
  p.code = resolve_code(job.code_source);
  for (const auto& g : job.generators) p.gens.push_back(Perm::parse(g, p.code.length()));
  p.group = PermGroup(p.code.length(), p.gens);
  p.trunc = Exponent::integer(job.truncation);
  return p;
}

nlohmann::json series_json(const QSeries& s) {
  nlohmann::json j = to_json(s);
  j["text"] = s.to_string();
  return j;
}

std::string hex(const unsigned char* d, unsigned n) {
  std::ostringstream os;
  for (unsigned i = 0; i < n; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(d[i]);
  return os.str();
}

}  // namespace

nlohmann::json canonical_job(const Job& job) {
  const Prepared p = prepare(job);
  nlohmann::json j;
  j["command"] = job.command;
  j["code"] = {{"length", p.code.length()}, {"rows", p.code.rows_as_strings()}};
  j["flavor"] = flavor_name(job.flavor);
  auto gens = nlohmann::json::array();
  for (const auto& g : p.gens) gens.push_back(g.to_string());
  j["generators"] = std::move(gens);
  j["truncation"] = job.truncation;
  if (job.command == "replicable") j["k_rep"] = job.k_rep;
  return j;
}

std::string fingerprint(const Job& job) {
  const std::string text = canonical_job(job).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::logic_error("SHA-256 digest failed");
  return hex(digest, len);
}

nlohmann::json run_job(const Job& job) {
  const Prepared p = prepare(job);
  const int n = p.code.length();
  nlohmann::json out;
  out["group"] = p.group.to_string();
  out["orbit_type"] = p.group.orbit_type().to_string();

  if (job.command == "doubling") {
    if (p.gens.size() != 1) throw PreconditionError("doubling needs exactly one generator");
    out["lift"] = to_json(lift_info(p.code, p.gens.front(), job.flavor, p.trunc));
    return out;
  }
  if (job.command == "character") {
    const CharacterReport rep = p.gens.size() == 1
                                    ? character_cyclic(p.code, p.gens.front(), job.flavor, p.trunc)
                                    : character_group(p.code, p.group, job.flavor, p.trunc);
    nlohmann::json c = to_json(rep);
    c["text"] = rep.character.to_string();
    out["character"] = std::move(c);
    return out;
  }

  FixedLatticeSpec spec;
  spec.code = p.code;
  spec.group = p.group;
  spec.flavor = job.flavor;
  spec.truncation = p.trunc;
  const QSeries theta = fixed_theta(spec);
  out["theta"] = series_json(theta);
  if (job.command == "theta") return out;

  if ((job.command == "replicable" || job.command == "identify") && job.truncation < 10)
    throw PreconditionError("replicability jobs need truncation >= 10");
  const QSeries quotient = theta_quotient(theta, p.group.orbit_type(), n);
  out["quotient"] = series_json(quotient);
  if (job.command == "quotient") return out;

  if (job.command == "replicable") {
    out["replicability"] = to_json(is_replicable(quotient, job.k_rep));
    return out;
  }
  const auto id = identify(quotient);
  out["identification"] = {{"identified_as", id ? nlohmann::json(id->name) : nlohmann::json()},
                           {"constant_delta", id ? nlohmann::json(to_string(id->constant_delta)) : nlohmann::json()}};
  return out;
}

nlohmann::json result_record(const Job& job, const nlohmann::json& outputs) {
  nlohmann::json r;
  r["fingerprint"] = fingerprint(job);
  r["job"] = canonical_job(job);
  r["outputs"] = outputs;
  r["tool_version"] = kToolVersion;
  return r;
}

void append_cache(const std::string& path, const nlohmann::json& record) {
  nlohmann::json line = record;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  line["timestamp"] = ts.str();
  const std::string text = line.dump() + "\n";

  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw IoError("cannot open cache file '" + path + "'");
  if (::flock(fd, LOCK_EX) != 0) {
    ::close(fd);
    throw IoError("cannot lock cache file '" + path + "'");
  }
  std::size_t done = 0;
  while (done < text.size()) {
    const ssize_t w = ::write(fd, text.data() + done, text.size() - done);
    if (w <= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
      throw IoError("cannot write cache file '" + path + "'");
    }
    done += static_cast<std::size_t>(w);
  }
  ::flock(fd, LOCK_UN);
  ::close(fd);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const Error*>(&e)) return kExitPrecondition;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitParse;
  return kExitInternal;
}

nlohmann::json diagnostic(const std::exception& e) {
  std::string kind = "internal";
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e))
    kind = "parse";
  else if (dynamic_cast<const IoError*>(&e))
    kind = "io";
  else if (dynamic_cast<const UnsupportedError*>(&e))
    kind = "unsupported";
  else if (dynamic_cast<const Error*>(&e))
    kind = "precondition";
  return {{"error", kind}, {"message", e.what()}};
}

std::vector<std::string> read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open group file '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

unsigned worker_count() {
  if (const char* env = std::getenv("THETAFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ScanLine> scan(const Job& base, const std::vector<std::string>& lines, unsigned threads) {
  std::vector<ScanLine> out;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto first = lines[i].find_first_not_of(" \t\r");
    if (first == std::string::npos || lines[i][first] == '#') continue;
    ScanLine s;
    s.line = static_cast<int>(i + 1);
    out.push_back(std::move(s));
    texts.push_back(lines[i]);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < out.size(); k = next++) {
      try {
        Job job = base;
        job.generators = split_generators(texts[k]);
        out[k].record = result_record(job, run_job(job));
      } catch (const std::exception& e) {
        nlohmann::json d = diagnostic(e);
        d["line"] = out[k].line;
        out[k].error = std::move(d);
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, out.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

namespace {

bool is_series(const nlohmann::json& j) {
  return j.is_object() && j.contains("coeffs") && j.contains("trunc_num48");
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (is_series(j)) {
    rows.emplace_back(prefix, j.contains("text") ? j["text"].get<std::string>() : qseries_from_json(j).to_string());
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "text") continue;
      flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    }
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

std::string aligned(const std::vector<std::vector<std::string>>& table) {
  std::vector<std::size_t> width;
  for (const auto& row : table)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::ostringstream os;
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_table(const nlohmann::json& value) {
  if (value.is_object() && value.contains("rows") && value["rows"].is_array()) {
    std::vector<std::vector<std::string>> t{{"row", "status", "detail"}};
    for (const auto& r : value["rows"])
      t.push_back({r.value("label", ""), r.value("status", ""), r.value("detail", "")});
    std::string head = value.contains("figure") ? value["figure"].get<std::string>() + ": " +
                                                      value.value("verdict", "") + "\n"
                                                : "";
    return head + aligned(t);
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(value, "", rows);
  std::vector<std::vector<std::string>> t;
  for (auto& [k, v] : rows) t.push_back({k, v});
  return aligned(t);
}

}  // namespace thetaforge
