// Command-line front end for scenario files: run, check, build-data, sweep.
#include "blowup/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace blowup;

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kBadInput = 2, kStageError = 3 };

int exit_code(const RunReport& rep) {
  if (!rep.error_stage.empty()) return kStageError;
  return rep.ok ? kOk : kChecksFailed;
}

void print_summary(const Scenario& sc, const RunReport& rep) {
  std::printf("%s: %s", sc.name.c_str(), rep.ok ? "ok" : "FAILED");
  const std::string status = rep.get("verdict.status");
  if (!status.empty()) std::printf(" (verdict %s, t_detect %s)", status.c_str(), rep.get("verdict.t_detect").c_str());
  std::printf("\n");
  for (const CheckResult& c : rep.checks) {
    std::printf("  %-13s %s  worst=%s  %s\n", c.name.c_str(), c.skipped ? "skip" : (c.pass ? "pass" : "FAIL"),
                format_double(c.worst).c_str(), c.detail.c_str());
  }
  if (!rep.error_stage.empty()) {
    std::printf("  error in stage %s: %s\n", rep.error_stage.c_str(), rep.error_message.c_str());
  }
}

int cmd_run(const std::string& file, const std::string& out) {
  const Scenario sc = parse_scenario(file);
  const RunReport rep = run_scenario(sc, Stage::full);
  const fs::path dir = out.empty() ? fs::path("out") / sc.name : fs::path(out);
  write_outputs(rep, dir);
  print_summary(sc, rep);
  std::printf("  outputs in %s\n", dir.string().c_str());
  return exit_code(rep);
}

int cmd_check(const std::string& file) {
  const Scenario sc = parse_scenario(file);
  const RunReport rep = run_scenario(sc, Stage::criteria_only);
  std::cout << report_text(rep);
  return exit_code(rep);
}

int cmd_build_data(const std::string& file, const std::string& out) {
  const Scenario sc = parse_scenario(file);
  if (sc.data.source != DataSource::builder) {
    std::fprintf(stderr, "build-data: %s does not use source = builder\n", file.c_str());
    return kBadInput;
  }
  const ModelSpec model = build_model(sc.model);
  const ResolvedData data = resolve_data(sc, model);
  const std::string text = replay_scenario(sc, data);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
    std::printf("K2 = %s, c0 = %s, c1 = %s, E(0) = %s -> %s\n", format_double(data.built->K2).c_str(),
                format_double(data.built->c0).c_str(), format_double(data.built->c1).c_str(),
                format_double(data.built->achieved_energy).c_str(), out.c_str());
  }
  return kOk;
}

int cmd_sweep(const std::string& file, const std::string& param, const std::vector<std::string>& values,
              const std::string& out) {
  const Scenario base = parse_scenario(file);
  const fs::path root = out.empty() ? fs::path("out") / (base.name + "_sweep") : fs::path(out);
  int worst = kOk;
  std::printf("%-16s %-18s %-24s %s\n", param.c_str(), "verdict", "t_detect", "result");
  for (const std::string& v : values) {
    const Scenario sc = with_override(base, param, v);
    const RunReport rep = run_scenario(sc, Stage::full);
    write_outputs(rep, root / (param + "_" + v));
    std::printf("%-16s %-18s %-24s %s\n", v.c_str(), rep.get("verdict.status").c_str(),
                rep.get("verdict.t_detect").c_str(), rep.ok ? "ok" : "FAILED");
    worst = std::max(worst, exit_code(rep));
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up laboratory for P u_tt + A u = F(u)"};
  app.require_subcommand(1);

  std::string file, out, param;
  std::vector<std::string> values;

  auto* run_cmd = app.add_subcommand("run", "Build, simulate, check and write outputs");
  run_cmd->add_option("scenario", file, "Scenario file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out, "Output directory (default out/<name>)");

  auto* check_cmd = app.add_subcommand("check", "Evaluate the growth conditions only");
  check_cmd->add_option("scenario", file, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* build_cmd = app.add_subcommand("build-data", "Construct data of prescribed energy");
  build_cmd->add_option("scenario", file, "Scenario file with source = builder")->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--out", out, "Write the replay scenario here instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a list of parameter values");
  sweep_cmd->add_option("scenario", file, "Scenario file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--param", param, "Parameter name (key or section.key)")->required();
  sweep_cmd->add_option("--values", values, "Values to substitute")->required()->expected(1, -1);
  sweep_cmd->add_option("--out", out, "Output root (default out/<name>_sweep)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(file, out);
    if (*check_cmd) return cmd_check(file);
    if (*build_cmd) return cmd_build_data(file, out);
    if (*sweep_cmd) return cmd_sweep(file, param, values, out);
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "%s: %s\n", file.c_str(), e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kStageError;
  }
  return kBadInput;
}
