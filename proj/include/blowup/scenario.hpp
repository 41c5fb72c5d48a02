#pragma once

#include "blowup/data_builder.hpp"
#include "blowup/integrator.hpp"
#include "blowup/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

/// Parse or validation failure; `line` is 0 when no single line is at fault.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, const std::string& msg);
  int line() const { return line_; }

 private:
  int line_;
};

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  std::vector<Entry> entries;
  int line = 0;
};

struct ModelConfig {
  ModelKind kind = ModelKind::klein_gordon;
  int dims = 1;
  double length = 1.0;
  double ly = 1.0;
  int n = 63;
  int ny = 1;
  bool nonlinear = true;
  double r0_range = 100.0;
  // klein_gordon / scalar_ode
  double mass = 1.0;
  double exponent = 2.0;
  double a0 = 1.0;
  // boussinesq
  double a = 0.0;
  double nu = 1.0;
  int m = 2;
  std::vector<double> poly;
  // plate
  std::optional<KirchhoffParams> kirchhoff;
  std::optional<PointwiseLaw> source;
  // nonlinear_boundary
  double b = 1.0;
  BoundarySplit split = BoundarySplit::both_ends;
  std::optional<PointwiseLaw> flux;
};

enum class DataSource { explicit_vectors, shapes, builder };
const char* to_string(DataSource source);

struct DataConfig {
  DataSource source = DataSource::shapes;
  std::string u0;  // explicit numbers or a shape expression
  std::string u1;
  // builder
  double K2 = 0.0;
  std::string seed_u0;
  std::string seed_u1;
  double c1_margin = 1.01;
};

struct CheckConfig {
  std::vector<std::string> asserted;
  double tol = 1e-8;
  double energy_tol = 1e-4;
  double drift_psi_max = 0.0;  // 0: no restriction
  double growth_tol = 1e-3;
  int fg_samples = 200;
};

/// A parsed scenario. `sections` keeps the file's text values in order so
/// that serialize() reproduces them; the typed blocks are derived from it.
struct Scenario {
  std::vector<Section> sections;
  std::string name;
  std::uint64_t seed = 0;
  ModelConfig model;
  DataConfig data;
  RunConfig run;
  CheckConfig checks;
};

/// Names accepted in the [checks] assert list.
const std::vector<std::string>& known_checks();

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::filesystem::path& path);
std::string serialize(const Scenario& s);

/// Replaces `param` (either "section.key" or a key unique across sections) and
/// re-validates. Adds the key to its section when absent.
Scenario with_override(const Scenario& s, const std::string& param, const std::string& value);

ModelSpec build_model(const ModelConfig& cfg);

struct ResolvedData {
  Vector u0;
  Vector u1;
  std::optional<BuiltData> built;
};

/// Evaluates a shape expression such as "sine 1 1 + bump 0.5 0.3 0.1" on the
/// model grid. `u0` feeds the u0_squared and scaled_u0 shapes.
Vector eval_shape(const ModelSpec& model, const std::string& expr, Rng& rng, const Vector* u0);
ResolvedData resolve_data(const Scenario& s, const ModelSpec& model);

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;  // simulation checks under Stage::criteria_only
  double worst = 0.0;
  std::string detail;
};

/// Everything a run produces. Values are stored as ordered key/value pairs so
/// the report file is written in a fixed order.
struct RunReport {
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<CheckResult> checks;
  std::optional<RunResult> result;
  bool ok = false;  // no stage error and every asserted check passed
  std::string error_stage;
  std::string error_message;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, double value);
  void set(const std::string& key, bool value);
  std::string get(const std::string& key) const;
};

std::string format_double(double x);

enum class Stage { criteria_only, full };

RunReport run_scenario(const Scenario& s, Stage stage = Stage::full);

struct OutputPaths {
  std::filesystem::path csv;
  std::filesystem::path report;
};

void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
std::string report_text(const RunReport& report);
OutputPaths write_outputs(const RunReport& report, const std::filesystem::path& out_dir);

/// Scenario text that replays built (or resolved) data as explicit vectors.
std::string replay_scenario(const Scenario& s, const ResolvedData& data);

}  // namespace blowup
