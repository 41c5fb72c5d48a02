#include "blowup/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace blowup {
namespace {

constexpr const char* kCsvName = "trajectory.csv";
constexpr const char* kReportName = "report.txt";

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_number(const std::string& tok, double& x) {
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::vector<double> shape_args(const std::vector<std::string>& term, std::size_t want, const std::string& expr) {
  if (term.size() - 1 != want) {
    throw std::invalid_argument("shape '" + term[0] + "' takes " + std::to_string(want) + " argument(s) in '" +
                                expr + "'");
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < term.size(); ++i) {
    double x = 0.0;
    if (!parse_number(term[i], x)) throw std::invalid_argument("bad number '" + term[i] + "' in '" + expr + "'");
    out.push_back(x);
  }
  return out;
}

Vector parse_explicit(const std::string& text, int dim, const char* what) {
  const std::vector<std::string> toks = split_tokens(text);
  if (static_cast<int>(toks.size()) != dim) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(dim) + " values, got " +
                                std::to_string(toks.size()));
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    if (!parse_number(toks[i], v[i])) throw std::invalid_argument(std::string(what) + ": bad number '" + toks[i] + "'");
  }
  return v;
}

bool simulation_check(const std::string& name) {
  return name != "criteria" && name != "no_criteria" && name != "fg";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void RunReport::set(const std::string& key, const std::string& value) {
  for (auto& kv : fields) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  fields.emplace_back(key, value);
}
void RunReport::set(const std::string& key, double value) { set(key, format_double(value)); }
void RunReport::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

std::string RunReport::get(const std::string& key) const {
  for (const auto& kv : fields) {
    if (kv.first == key) return kv.second;
  }
  return {};
}

ModelSpec build_model(const ModelConfig& c) {
  const Geometry geo{c.dims, c.length, c.ly, c.n, c.ny};
  switch (c.kind) {
    case ModelKind::klein_gordon: return make_klein_gordon(geo, c.mass, c.exponent, c.nonlinear);
    case ModelKind::boussinesq:
      return make_boussinesq(c.length, c.n, c.a, c.nu, c.m, c.poly, c.nonlinear, c.r0_range);
    case ModelKind::plate: return make_plate(geo, c.kirchhoff, c.source, c.r0_range);
    case ModelKind::nonlinear_boundary: return make_nonlinear_boundary(c.length, c.n, c.b, c.flux, c.split, c.r0_range);
    case ModelKind::scalar_ode: return make_scalar_ode(c.a0, c.exponent, c.nonlinear);
  }
  throw std::invalid_argument("build_model: unknown kind");
}

Vector eval_shape(const ModelSpec& model, const std::string& expr, Rng& rng, const Vector* u0) {
  const DiscreteSpace& s = *model.space;
  const int n = s.dim();
  const bool two_d = s.kind() == SpaceKind::rectangle_2d;
  Vector out = Vector::Zero(n);

  std::vector<std::vector<std::string>> terms(1);
  for (const std::string& tok : split_tokens(expr)) {
    if (tok == "+") {
      terms.emplace_back();
    } else {
      terms.back().push_back(tok);
    }
  }
  for (const auto& term : terms) {
    if (term.empty()) throw std::invalid_argument("empty term in shape '" + expr + "'");
    const std::string& kind = term[0];
    if (kind == "zero") {
      shape_args(term, 0, expr);
    } else if (kind == "constant") {
      out.array() += shape_args(term, 1, expr)[0];
    } else if (kind == "sine") {
      // A sin(k pi x / Lx) [sin(k pi y / Ly) in 2D]
      const std::vector<double> a = shape_args(term, 2, expr);
      for (int i = 0; i < n; ++i) {
        double v = a[0] * std::sin(a[1] * std::numbers::pi * s.x(i) / s.lx());
        if (two_d) v *= std::sin(a[1] * std::numbers::pi * s.y(i) / s.ly());
        out[i] += v;
      }
    } else if (kind == "bump") {
      // A (1 - r^2)^3 on r < 1, r = |x - c| / width
      const std::vector<double> a = shape_args(term, two_d ? 4 : 3, expr);
      const double width = a.back();
      if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
      for (int i = 0; i < n; ++i) {
        double r2 = std::pow((s.x(i) - a[1]) / width, 2);
        if (two_d) r2 += std::pow((s.y(i) - a[2]) / width, 2);
        if (r2 < 1.0) out[i] += a[0] * std::pow(1.0 - r2, 3);
      }
    } else if (kind == "random") {
      const double amp = shape_args(term, 1, expr)[0];
      for (int i = 0; i < n; ++i) out[i] += amp * rng.uniform(-1.0, 1.0);
    } else if (kind == "u0_squared" || kind == "scaled_u0") {
      const double c = shape_args(term, 1, expr)[0];
      if (!u0) throw std::invalid_argument("shape '" + kind + "' is only available for u1");
      out += kind == "scaled_u0" ? Vector(c * *u0) : Vector(c * u0->cwiseProduct(*u0));
    } else {
      throw std::invalid_argument("unknown shape '" + kind + "'");
    }
  }
  return out;
}

ResolvedData resolve_data(const Scenario& sc, const ModelSpec& model) {
  ResolvedData d;
  const DataConfig& c = sc.data;
  switch (c.source) {
    case DataSource::explicit_vectors:
      d.u0 = parse_explicit(c.u0, model.dim(), "u0");
      d.u1 = parse_explicit(c.u1, model.dim(), "u1");
      break;
    case DataSource::shapes: {
      Rng r0(sc.seed * 4 + 1);
      Rng r1(sc.seed * 4 + 2);
      d.u0 = eval_shape(model, c.u0, r0, nullptr);
      d.u1 = eval_shape(model, c.u1, r1, &d.u0);
      break;
    }
    case DataSource::builder: {
      Rng r0(sc.seed * 4 + 1);
      Rng r1(sc.seed * 4 + 2);
      const Vector s0 = eval_shape(model, c.seed_u0, r0, nullptr);
      const Vector s1 = eval_shape(model, c.seed_u1, r1, nullptr);
      const SeedPair pair = normalize_pair(model, s0, s1);
      d.built = build_positive_energy_data(model, pair, c.K2, c.c1_margin);
      d.u0 = d.built->u0;
      d.u1 = d.built->u1;
      break;
    }
  }
  return d;
}

namespace {

void record_criteria(RunReport& rep, const ModelSpec& model, const Vector& u0, const Vector& u1,
                     bool& satisfied) {
  const CriteriaReport cr = check_levine_conditions(model, u0, u1);
  rep.set("criteria.l1_value", cr.l1_value);
  rep.set("criteria.l2_lhs", cr.l2_lhs);
  rep.set("criteria.l2_rhs", cr.l2_rhs);
  rep.set("criteria.satisfied", cr.satisfied);
  rep.set("criteria.a0", cr.a0);
  rep.set("criteria.energy0", cr.energy0);
  rep.set("criteria.psi0", cr.psi0);
  rep.set("criteria.dpsi0", cr.dpsi0);
  rep.set("criteria.levine_time_bound", cr.levine_time_bound ? format_double(*cr.levine_time_bound) : "none");
  if (!model.linear() && model.alpha() > 0.0) {
    rep.set("criteria.psi_star", t_star_threshold(model, cr.energy0, 0.0));
  }
  satisfied = cr.satisfied;
  if (model.kind == ModelKind::klein_gordon) {
    rep.set("criteria.kg_bracket", kg_bracket(model, u0, u1));
    rep.set("criteria.kg_condition", check_kg_condition(model, u0, u1));
  }
  if (model.kind == ModelKind::nonlinear_boundary) {
    rep.set("criteria.nb_energy", nb_energy(model, u0, u1));
    rep.set("criteria.nb_R0", nb_R0(model));
    const DiscreteSpace& sp = *model.space;
    rep.set("criteria.nb_lhs", inner(sp, u0, u1) / inner(sp, u0, u0));
    rep.set("criteria.nb_mid", 2.0 * nb_energy(model, u0, u1) + nb_R0(model) / (1.0 + 2.0 * model.alpha()));
    const bool nb = check_nb_condition(model, u0, u1);
    rep.set("criteria.nb_condition", nb);
    satisfied = nb;
  }
}

CheckResult evaluate_check(const std::string& name, const Scenario& sc, const ModelSpec& model, const RunReport& rep,
                           bool criteria_ok, const RunResult* res) {
  CheckResult c;
  c.name = name;
  const CheckConfig& cfg = sc.checks;
  if (name == "criteria" || name == "no_criteria") {
    const bool want = name == "criteria";
    c.pass = criteria_ok == want;
    auto num = [&](const char* key) { return std::strtod(rep.get(key).c_str(), nullptr); };
    c.worst = model.kind == ModelKind::nonlinear_boundary ? num("criteria.nb_lhs") - num("criteria.nb_mid")
                                                          : num("criteria.l2_rhs") - num("criteria.l2_lhs");
    c.detail = criteria_ok ? "conditions hold" : "conditions fail";
    return c;
  }
  if (name == "fg") {
    const FgCertificate cert = certify_FG(model.nl, *model.space, cfg.fg_samples, 1e-2, 1e2, sc.seed * 4 + 3);
    c.pass = cert.verified;
    c.worst = cert.worst_margin;
    c.detail = std::to_string(cert.samples) + " samples";
    return c;
  }
  const Trajectory& traj = res->traj;
  const BlowupVerdict& v = res->verdict;
  const double psi_star =
      (!model.linear() && model.alpha() > 0.0) ? t_star_threshold(model, traj.e0, 0.0) : INFINITY;
  if (name == "blowup" || name == "survives") {
    const VerdictStatus want = name == "blowup" ? VerdictStatus::blew_up : VerdictStatus::survived_horizon;
    c.pass = v.status == want;
    c.worst = v.psi_final;
    c.detail = to_string(v.status);
  } else if (name == "energy_drift") {
    const double cap = cfg.drift_psi_max > 0.0 ? cfg.drift_psi_max : INFINITY;
    const EnergyDrift d = energy_drift(traj, cap);
    c.pass = d.relative <= cfg.energy_tol;
    c.worst = d.relative;
    c.detail = "relative drift";
  } else if (name == "concavity" || name == "inf2" || name == "inf1" || name == "nb5") {
    MonitorResult m;
    if (name == "concavity") m = monitor_concavity(traj, psi_star, cfg.tol);
    else if (name == "inf2") m = monitor_inf2(traj, psi_star, cfg.tol);
    else if (name == "inf1") m = monitor_inf1(traj, model, cfg.tol);
    else m = monitor_nb5(traj, model, cfg.tol);
    c.pass = m.pass;
    c.worst = m.worst_margin;
    c.detail = std::to_string(m.checked) + " samples";
  } else if (name == "levine_bound") {
    if (v.status != VerdictStatus::blew_up || !v.t_detect) {
      c.pass = false;
      c.detail = "no blow-up detected";
    } else {
      const LevineCheck lc = check_levine_window(traj, model, *v.t_detect, sc.run.dt0, cfg.growth_tol);
      c.pass = lc.pass;
      c.worst = lc.found ? lc.tightest : 0.0;
      c.detail = lc.found ? std::to_string(lc.candidates) + " starting samples" : "hypotheses never met";
    }
  }
  return c;
}

}  // namespace

RunReport run_scenario(const Scenario& sc, Stage stage) {
  RunReport rep;
  rep.set("scenario.name", sc.name);
  rep.set("scenario.seed", std::to_string(sc.seed));
  std::string current = "model";
  try {
    const ModelSpec model = build_model(sc.model);
    rep.set("model.kind", to_string(model.kind));
    rep.set("model.dim", std::to_string(model.dim()));
    rep.set("model.nonlinearity", to_string(model.nl.kind()));
    rep.set("model.alpha", model.alpha());
    rep.set("model.R0", model.R0());
    rep.set("model.a0", model.a0);
    rep.set("model.a0_residual", model.a0_residual);
    rep.set("model.omega_max", model.omega_max);

    current = "data";
    const ResolvedData data = resolve_data(sc, model);
    rep.set("data.source", to_string(sc.data.source));
    if (data.built) {
      rep.set("built.K2", data.built->K2);
      rep.set("built.c0", data.built->c0);
      rep.set("built.c1", data.built->c1);
      rep.set("built.theta", data.built->theta);
      rep.set("built.energy", data.built->achieved_energy);
      rep.set("built.root_sign_changes", std::to_string(data.built->root_sign_changes));
    }

    current = "criteria";
    bool criteria_ok = false;
    record_criteria(rep, model, data.u0, data.u1, criteria_ok);

    if (stage == Stage::full) {
      current = "simulation";
      rep.result = run(model, data.u0, data.u1, sc.run);
      const RunResult& r = *rep.result;
      rep.set("verdict.status", to_string(r.verdict.status));
      rep.set("verdict.t_detect", r.verdict.t_detect ? format_double(*r.verdict.t_detect) : "none");
      rep.set("verdict.psi_final", r.verdict.psi_final);
      rep.set("verdict.reason", r.verdict.reason);
      rep.set("run.steps", std::to_string(r.steps));
      rep.set("run.samples", std::to_string(r.traj.size()));
      rep.set("run.dt_min", r.dt_min);
      rep.set("run.energy0", r.traj.e0);
    }

    current = "checks";
    bool all = true;
    for (const std::string& name : sc.checks.asserted) {
      CheckResult c;
      if (stage == Stage::criteria_only && simulation_check(name)) {
        c.name = name;
        c.skipped = true;
        c.pass = true;
        c.detail = "needs simulation";
      } else {
        c = evaluate_check(name, sc, model, rep, criteria_ok, rep.result ? &*rep.result : nullptr);
      }
      all = all && c.pass;
      rep.checks.push_back(c);
      const std::string key = "check." + name;
      rep.set(key + ".pass", std::string(c.skipped ? "skipped" : (c.pass ? "true" : "false")));
      rep.set(key + ".worst", c.worst);
      rep.set(key + ".detail", c.detail);
    }
    rep.ok = all;
  } catch (const std::exception& ex) {
    rep.ok = false;
    rep.error_stage = current;
    rep.error_message = ex.what();
    rep.set("error.stage", current);
    rep.set("error.message", std::string(ex.what()));
  }
  rep.set("result.ok", rep.ok);
  return rep;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,psi,dpsi,ddpsi_eq,E,defect,inf2_rhs\n";
  for (const DerivedRow& r : traj.rows) {
    out << format_double(r.t) << ',' << format_double(r.psi) << ',' << format_double(r.dpsi) << ','
        << format_double(r.ddpsi_eq) << ',' << format_double(r.energy) << ',' << format_double(r.defect) << ','
        << format_double(r.inf2_rhs) << '\n';
  }
}

std::string report_text(const RunReport& report) {
  std::ostringstream out;
  for (const auto& kv : report.fields) out << kv.first << " = " << kv.second << '\n';
  return out.str();
}

OutputPaths write_outputs(const RunReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  OutputPaths paths{out_dir / kCsvName, out_dir / kReportName};

  std::ofstream csv(paths.csv, std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + paths.csv.string());
  static const Trajectory empty;
  write_trajectory_csv(report.result ? report.result->traj : empty, csv);
  if (!csv) throw std::runtime_error("write failed for " + paths.csv.string());

  RunReport with_paths = report;
  with_paths.set("artifacts.csv", kCsvName);
  with_paths.set("artifacts.report", kReportName);
  std::ofstream rep(paths.report, std::ios::binary | std::ios::trunc);
  if (!rep) throw std::runtime_error("cannot write " + paths.report.string());
  rep << report_text(with_paths);
  if (!rep) throw std::runtime_error("write failed for " + paths.report.string());
  return paths;
}

std::string replay_scenario(const Scenario& s, const ResolvedData& data) {
  auto join = [](const Vector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) out += ' ';
      out += format_double(v[i]);
    }
    return out;
  };
  Scenario copy = s;
  for (Section& sec : copy.sections) {
    if (sec.name != "data") continue;
    sec.entries.clear();
    sec.entries.push_back(Entry{"source", "explicit", 0});
    sec.entries.push_back(Entry{"u0", join(data.u0), 0});
    sec.entries.push_back(Entry{"u1", join(data.u1), 0});
    if (data.built) {
      sec.entries.push_back(Entry{"built_K2", format_double(data.built->K2), 0});
      sec.entries.push_back(Entry{"built_c0", format_double(data.built->c0), 0});
      sec.entries.push_back(Entry{"built_c1", format_double(data.built->c1), 0});
      sec.entries.push_back(Entry{"built_theta", format_double(data.built->theta), 0});
      sec.entries.push_back(Entry{"built_energy", format_double(data.built->achieved_energy), 0});
    }
  }
  return serialize(copy);
}

}  // namespace blowup
