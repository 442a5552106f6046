#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "thetaforge/cli.hpp"

using namespace thetaforge;

namespace {

struct Options {
  std::string code, group, group_file, flavor = "plain", out, cache, job = "replicable", figure;
  int trunc = 0;
  int krep = kDefaultKRep;
  bool json = false, table = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + o.out + "'");
  f << text;
  if (!f) throw IoError("cannot write output file '" + o.out + "'");
}

std::string render(const Options& o, const nlohmann::json& value) {
  return o.table ? render_table(value) : value.dump(2) + "\n";
}

std::vector<std::string> group_lines(const std::string& path) {
  std::vector<std::string> gens;
  for (const auto& line : read_group_file(path)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (auto& g : split_generators(line)) gens.push_back(std::move(g));
  }
  return gens;
}

Job make_job(const Options& o, const std::string& command) {
  Job job;
  job.command = command;
  job.code_source = o.code;
  job.flavor = parse_flavor(o.flavor);
  job.truncation = o.trunc > 0 ? o.trunc : default_truncation(command);
  job.k_rep = o.krep;
  if (!o.group.empty()) job.generators = split_generators(o.group);
  if (!o.group_file.empty())
    for (auto& g : group_lines(o.group_file)) job.generators.push_back(std::move(g));
  return job;
}

int run_command(const Options& o, const std::string& command) {
  const Job job = make_job(o, command);
  const nlohmann::json record = result_record(job, run_job(job));
  if (!o.cache.empty()) append_cache(o.cache, record);
  emit(o, render(o, record));
  return kExitOk;
}

int run_verify(const Options& o) {
  std::vector<std::string> ids = o.figure == "all" ? figure_ids() : std::vector<std::string>{o.figure};
  bool ok = true;
  std::string text;
  nlohmann::json all = nlohmann::json::array();
  for (const auto& id : ids) {
    const FigureReport r = verify_figure(id);
    ok = ok && r.passed();
    if (o.table)
      text += render_table(to_json(r));
    else
      all.push_back(to_json(r));
  }
  if (!o.table) text = (ids.size() == 1 ? all.front() : all).dump(2) + "\n";
  emit(o, text);
  return ok ? kExitOk : kExitVerifyFailed;
}

int run_scan(const Options& o) {
  if (o.group_file.empty()) throw PreconditionError("scan needs --group-file");
  Options base_opts = o;
  base_opts.group.clear();
  base_opts.group_file.clear();
  const Job base = make_job(base_opts, o.job);
  const auto lines = read_group_file(o.group_file);
  const auto results = scan(base, lines, worker_count());
  std::string text;
  bool failed = false;
  for (const auto& r : results) {
    if (r.error) {
      failed = true;
      std::cerr << r.error->dump() << "\n";
      continue;
    }
    if (!o.cache.empty()) append_cache(o.cache, *r.record);
    text += o.table ? "line " + std::to_string(r.line) + "\n" + render_table(*r.record) : r.record->dump() + "\n";
  }
  emit(o, text);
  return failed ? kExitScanFailures : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta series, quotients and fixed-subVOA characters of code lattices"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool group) {
    sub->add_option("--code", o.code, "catalog name or code file");
    if (group) sub->add_option("--group", o.group, "generators, e.g. \"(1,2)(3,4), (5,6,7)\"");
    sub->add_option("--group-file", o.group_file, "file of generators, one group per line for scan");
    sub->add_option("--flavor", o.flavor, "plain | super0 | super1");
    sub->add_option("--trunc", o.trunc, "truncation in integer q-powers");
    sub->add_option("--krep", o.krep, "replicability depth");
    sub->add_option("--out", o.out, "write output to a file");
    sub->add_option("--cache", o.cache, "append result records to a JSON-lines cache");
    auto* j = sub->add_flag("--json", o.json, "JSON output (default)");
    auto* t = sub->add_flag("--table", o.table, "aligned text table");
    j->excludes(t);
  };

  std::vector<std::pair<std::string, CLI::App*>> jobs;
  for (const auto& cmd : job_commands()) {
    CLI::App* sub = app.add_subcommand(cmd, "run a " + cmd + " job");
    common(sub, true);
    jobs.emplace_back(cmd, sub);
  }
  CLI::App* verify = app.add_subcommand("verify", "recompute a reference table or example");
  verify->add_option("figure", o.figure, "figure id or 'all'")->required();
  verify->add_option("--out", o.out, "write output to a file");
  auto* vj = verify->add_flag("--json", o.json, "JSON output (default)");
  verify->add_flag("--table", o.table, "aligned text table")->excludes(vj);
  CLI::App* scan_cmd = app.add_subcommand("scan", "run one job per line of a group file");
  common(scan_cmd, false);
  scan_cmd->add_option("--job", o.job, "job command per line (default replicable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return run_verify(o);
    if (*scan_cmd) return run_scan(o);
    for (const auto& [cmd, sub] : jobs)
      if (*sub) return run_command(o, cmd);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << diagnostic(e).dump() << "\n";
    return exit_code_for(e);
  }
}
