// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include "blowup/data_builder.hpp"
#include "blowup/integrator.hpp"
#include "blowup/rng.hpp"
#include "blowup/scenario.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace blowup;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Vector random_vector(Rng& rng, int n, double amp) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = amp * rng.uniform(-1.0, 1.0);
  return v;
}

Vector sine(const DiscreteSpace& s, double amp, int k) {
  Vector v(s.dim());
  for (int i = 0; i < s.dim(); ++i) v[i] = amp * std::sin(k * std::numbers::pi * s.x(i) / s.lx());
  return v;
}

double max_psi(const Trajectory& traj) {
  double m = 0.0;
  for (const DerivedRow& r : traj.rows) m = std::max(m, r.psi);
  return m;
}

// Concavity and inf2 monitors above Psi*(delta = 0), plus nb5 when asked.
struct MonitorTally {
  int runs = 0;
  int failed = 0;
  double worst = 0.0;
  std::string first_failure;

  void add(const std::string& label, const Trajectory& traj, const ModelSpec& model, bool nb5) {
    const double psi_star = t_star_threshold(model, traj.e0, 0.0);
    std::vector<MonitorResult> ms = {monitor_concavity(traj, psi_star), monitor_inf2(traj, psi_star)};
    if (nb5) ms.push_back(monitor_nb5(traj, model));
    ++runs;
    bool ok = true;
    for (const MonitorResult& m : ms) {
      ok = ok && m.pass;
      worst = std::min(worst, m.worst_margin);
    }
    if (!ok) {
      if (failed == 0) first_failure = label;
      ++failed;
    }
  }
};

MonitorTally g_monitors;

Scenario load(const std::string& name) {
  return parse_scenario(fs::path(BLOWUP_SOURCE_DIR) / "scenarios" / (name + ".scn"));
}

// Linear models: the growth conditions never hold and energy is conserved.
Outcome linear_impossibility() {
  Outcome out;
  const int n = 199;
  struct Case {
    const char* name;
    ModelSpec model;
    Vector u0, u1;
  };
  std::vector<Case> cases;
  {
    ModelSpec m = make_klein_gordon(Geometry{1, 1.0, 1.0, n, 1}, 1.0, 2.0, false);
    Vector u0 = sine(*m.space, 1.0, 1) + sine(*m.space, 0.3, 3);
    Vector u1 = sine(*m.space, 2.0, 2);
    cases.push_back({"kg", std::move(m), std::move(u0), std::move(u1)});
  }
  {
    ModelSpec m = make_plate(Geometry{1, 1.0, 1.0, n, 1}, std::nullopt, std::nullopt);
    Vector u0 = sine(*m.space, 1.0, 1) + sine(*m.space, 0.3, 3);
    Vector u1 = sine(*m.space, 2.0, 2);
    cases.push_back({"plate", std::move(m), std::move(u0), std::move(u1)});
  }
  {
    ModelSpec m = make_nonlinear_boundary(1.0, n, 1.0, std::nullopt);
    Vector u0 = Vector::Constant(n, 0.5) + sine(*m.space, 0.3, 1);
    Vector u1 = 0.8 * u0 + sine(*m.space, 0.2, 2);
    cases.push_back({"nb", std::move(m), std::move(u0), std::move(u1)});
  }

  Rng rng(2024);
  for (const Case& c : cases) {
    int satisfied = 0;
    for (int k = 0; k < 1000; ++k) {
      const Vector u0 = random_vector(rng, n, rng.log_uniform(1e-2, 1e2));
      // half the pairs push velocity along u0, the most favourable direction
      const Vector u1 = (k % 2 == 0) ? random_vector(rng, n, rng.log_uniform(1e-2, 1e2))
                                     : Vector(rng.log_uniform(1e-2, 1e2) * u0 + random_vector(rng, n, 1e-3));
      satisfied += check_levine_conditions(c.model, u0, u1).satisfied;
    }
    out.require(satisfied == 0, std::string(c.name) + ": " + std::to_string(satisfied) + " pairs satisfied");

    RunConfig cfg;
    cfg.dt0 = 1e-3;
    cfg.t_max = 100.0;
    cfg.record_every = 100;
    const RunResult r = run(c.model, c.u0, c.u1, cfg);
    const EnergyDrift d = energy_drift(r.traj);
    out.require(r.verdict.status == VerdictStatus::survived_horizon,
                std::string(c.name) + " verdict " + to_string(r.verdict.status));
    out.require(d.relative <= 1e-4, std::string(c.name) + " drift " + fmt("%.3g", d.relative));
    out.note(std::string(c.name) + " drift " + fmt("%.2g", d.relative) + " in " + std::to_string(r.steps) + " steps");
  }
  return out;
}

// Plain-double leapfrog for u'' = u^3 - u with the same step rule family;
// returns the time u^2 first reaches cap.
double reference_blowup_time(double u, double v, double dt0, double c, double cap, double t_max) {
  auto acc = [](double x) { return x * x * x - x; };
  double t = 0.0;
  double a = acc(u);
  while (t < t_max) {
    double dt = std::min(dt0, c / (1.0 + std::abs(u)));
    if (a != 0.0) dt = std::min(dt, c * std::sqrt(std::abs(u) / std::abs(a)));
    if (!(dt > 1e-16)) return t;
    v += 0.5 * dt * a;
    u += dt * v;
    a = acc(u);
    v += 0.5 * dt * a;
    t += dt;
    if (u * u >= cap) return t;
  }
  return INFINITY;
}

// Scalar oracle: P = 1, A = 1, F = u^3.
Outcome scalar_oracle() {
  Outcome out;
  const ModelSpec m = make_scalar_ode(1.0, 2.0);
  RunConfig cfg;
  cfg.dt0 = 1e-3;
  cfg.c_nl = 1e-4;
  cfg.c_acc = 1e-4;
  cfg.dt_floor = 1e-14;
  cfg.t_max = 20.0;
  cfg.record_every = 10;

  Rng rng(77);
  int accepted = 0, draws = 0;
  double worst_gap = INFINITY, worst_ref = 0.0, worst_growth = INFINITY;
  while (accepted < 50 && draws < 100000) {
    ++draws;
    const Vector u0 = Vector::Constant(1, rng.uniform(-3.0, 3.0));
    const Vector u1 = Vector::Constant(1, rng.uniform(-6.0, 6.0));
    if (u0[0] == 0.0 || !check_levine_conditions(m, u0, u1).satisfied) continue;
    ++accepted;
    const std::string label = "ic(" + fmt("%.4g", u0[0]) + "," + fmt("%.4g", u1[0]) + ")";

    const RunResult r = run(m, u0, u1, cfg);
    if (r.verdict.status != VerdictStatus::blew_up || !r.verdict.t_detect) {
      out.require(false, label + " verdict " + to_string(r.verdict.status));
      continue;
    }
    const double td = *r.verdict.t_detect;
    const LevineCheck lc = check_levine_window(r.traj, m, td, cfg.dt0, 1e-3);
    out.require(lc.found && lc.pass, label + " time bound or growth curve violated");
    worst_gap = std::min(worst_gap, lc.tightest);
    worst_growth = std::min(worst_growth, lc.growth.worst_ratio);

    const double tref = reference_blowup_time(u0[0], u1[0], cfg.dt0 / 100, cfg.c_nl / 100, cfg.psi_cap, cfg.t_max);
    worst_ref = std::max(worst_ref, std::abs(tref - td));
    out.require(tref <= td + lc.tightest + cfg.dt0, label + " reference blow-up after the bound");
    out.require(std::abs(tref - td) <= 1e-3 * std::max(1.0, td), label + " reference disagrees");
    g_monitors.add("scalar " + label, r.traj, m, false);
  }
  out.require(accepted == 50, "only " + std::to_string(accepted) + " admissible draws");
  out.note(std::to_string(accepted) + " ICs; min(bound - t_detect) " + fmt("%.3g", worst_gap) +
           "; min Psi/lower " + fmt("%.6f", worst_growth) + "; max |t_ref - t_detect| " + fmt("%.2g", worst_ref));
  return out;
}

// Boussinesq positive-energy construction with K2 in {1, 10, 100}.
Outcome boussinesq_builder() {
  Outcome out;
  double worst_energy = 0.0;
  for (double a : {0.0, 1.0}) {
    const ModelSpec m = make_boussinesq(1.0, 63, a, 1.0, 2);
    const SeedPair pair = normalize_pair(m, sine(*m.space, 1.0, 1), sine(*m.space, 1.0, 1) + sine(*m.space, 0.3, 2));
    for (double K2 : {1.0, 10.0, 100.0}) {
      const std::string label = "a=" + fmt("%g", a) + " K2=" + fmt("%g", K2);
      const BuiltData d = build_positive_energy_data(m, pair, K2);
      const double err = std::abs(energy(m, d.u0, d.u1) - K2);
      worst_energy = std::max(worst_energy, err / K2);
      out.require(err <= 1e-8 * K2, label + " energy error " + fmt("%.3g", err));
      out.require(check_levine_conditions(m, d.u0, d.u1).satisfied, label + " criteria unsatisfied");

      RunConfig cfg;
      cfg.dt0 = 1e-3;
      cfg.t_max = 50.0;
      cfg.c_nl = cfg.c_acc = 1e-4;
      cfg.dt_floor = 1e-14;
      const RunResult r = run(m, d.u0, d.u1, cfg);
      const double top = std::max(max_psi(r.traj), r.verdict.psi_final);
      out.require(r.verdict.status == VerdictStatus::blew_up && top >= 1e8,
                  label + " verdict " + to_string(r.verdict.status) + " max Psi " + fmt("%.3g", top));
      g_monitors.add("boussinesq " + label, r.traj, m, false);
    }
  }
  out.note("6 builds; worst relative energy error " + fmt("%.2g", worst_energy));
  return out;
}

// Klein-Gordon condition against the general criteria, then the bump run.
Outcome kg_equivalence() {
  Outcome out;
  const ModelSpec m = make_klein_gordon(3.0, 60, 0.8, 2.0);
  Rng rng(31);
  int mismatch = 0, yes = 0;
  for (int k = 0; k < 1000; ++k) {
    Vector u0 = Vector::Zero(60);
    const double amp = rng.log_uniform(0.1, 10);
    for (int mode = 1; mode <= 4; ++mode) u0 += sine(*m.space, amp * rng.uniform(-1, 1) / mode, mode);
    const Vector u1 = rng.uniform() < 0.5 ? random_vector(rng, 60, rng.log_uniform(0.1, 10))
                                          : Vector(rng.uniform(0.0, 3.0) * u0 + random_vector(rng, 60, 0.3));
    const bool kg = check_kg_condition(m, u0, u1);
    mismatch += kg != check_levine_conditions(m, u0, u1).satisfied;
    yes += kg;
  }
  out.require(mismatch == 0, std::to_string(mismatch) + " disagreements");
  out.require(yes > 0 && yes < 1000, "sample did not cover both outcomes");

  const Scenario sc = load("kg_bump_blowup");
  const ModelSpec bm = build_model(sc.model);
  const ResolvedData d = resolve_data(sc, bm);
  out.require(check_kg_condition(bm, d.u0, d.u1), "bump data fail the KG condition");
  const RunResult r = run(bm, d.u0, d.u1, sc.run);
  out.require(r.verdict.status == VerdictStatus::blew_up, std::string("bump verdict ") + to_string(r.verdict.status));
  g_monitors.add("kg bump", r.traj, bm, false);
  out.note(std::to_string(yes) + "/1000 satisfied, 0 disagreements; bump blew up at t = " +
           fmt("%.6g", r.verdict.t_detect.value_or(NAN)));
  return out;
}

Outcome concavity_monitors() {
  Outcome out;
  out.require(g_monitors.runs > 0, "no blow-up runs recorded");
  out.require(g_monitors.failed == 0,
              std::to_string(g_monitors.failed) + " runs violate a monitor, first " + g_monitors.first_failure);
  out.note(std::to_string(g_monitors.runs) + " runs; worst normalized margin " + fmt("%.3g", g_monitors.worst));
  return out;
}

double gradient_mismatch(const Nonlinearity& nl, const DiscreteSpace& s, const Vector& u, const Vector& v) {
  // fourth-order central difference
  const double eps = 1e-4;
  auto g = [&](double h) { return nl.eval_G(s, u + h * v); };
  const double fd = (8 * (g(eps) - g(-eps)) - (g(2 * eps) - g(-2 * eps))) / (12 * eps);
  const double an = inner(s, nl.eval_F(s, u), v);
  return std::abs(fd - an) / std::max(1e-12, std::abs(an));
}

Outcome gradient_consistency() {
  Outcome out;
  auto s1 = DiscreteSpace::interval(2.0, 40);
  auto s2 = DiscreteSpace::rectangle(1.0, 1.2, 7, 6);
  auto nb = DiscreteSpace::interval_with_ends(1.0, 30, EndCondition::free, EndCondition::free);
  auto nb_split = DiscreteSpace::interval_with_ends(1.0, 30, EndCondition::dirichlet, EndCondition::free);
  const PointwiseLaw cubic{2.0, {}};
  struct Case {
    const char* name;
    Nonlinearity nl;
    SpacePtr space;
  };
  const std::vector<Case> cases = {
      {"power p=1", Nonlinearity::power(1), s1},
      {"power p=1.5", Nonlinearity::power(1.5), s1},
      {"power p=2", Nonlinearity::power(2), s1},
      {"power p=3 2D", Nonlinearity::power(3), s2},
      {"polynomial m=2", Nonlinearity::polynomial(2, {0.5, -1.0}, *s1), s1},
      {"polynomial m=3", Nonlinearity::polynomial(3, {0.5, -1.0}, *s1), s1},
      {"boundary both ends", Nonlinearity::boundary_scalar(cubic, *nb), nb},
      {"boundary right end", Nonlinearity::boundary_scalar(PointwiseLaw{2.0, {0.0, -1.0}}, *nb_split), nb_split},
      {"kirchhoff 1D + source", Nonlinearity::kirchhoff_plate(s1, {0.5, 0.0, 1.5, 1.0}, cubic), s1},
      {"kirchhoff 2D", Nonlinearity::kirchhoff_plate(s2, {0.3, 0.7, 1.0, 2.0}), s2},
  };
  Rng rng(606);
  double worst = 0.0;
  for (const Case& c : cases) {
    double w = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vector u = random_vector(rng, c.space->dim(), rng.log_uniform(0.1, 3.0));
      const Vector v = random_vector(rng, c.space->dim(), 1.0);
      w = std::max(w, gradient_mismatch(c.nl, *c.space, u, v));
    }
    out.require(w <= 1e-6, std::string(c.name) + " mismatch " + fmt("%.3g", w));
    worst = std::max(worst, w);
  }
  out.note(std::to_string(cases.size()) + " laws x 1000 pairs; worst relative mismatch " + fmt("%.2g", worst));
  return out;
}

// Energy drift and detection time under simultaneous halving of dt0, c_nl, c_acc.
struct Refinement {
  std::vector<double> drift;
  std::vector<double> t_detect;
};

Refinement refine(const ModelSpec& m, const Vector& u0, const Vector& u1, RunConfig cfg, double drift_psi_max,
                  int levels) {
  Refinement out;
  for (int k = 0; k < levels; ++k) {
    const RunResult r = run(m, u0, u1, cfg);
    out.drift.push_back(energy_drift(r.traj, drift_psi_max).absolute);
    out.t_detect.push_back(r.verdict.status == VerdictStatus::blew_up ? r.verdict.t_detect.value_or(NAN) : NAN);
    cfg.dt0 *= 0.5;
    cfg.c_nl *= 0.5;
    cfg.c_acc *= 0.5;
  }
  return out;
}

void judge_refinement(Outcome& out, const std::string& label, const Refinement& r) {
  std::string ratios = label + " drift ratios";
  for (std::size_t k = 0; k + 1 < r.drift.size(); ++k) {
    const double q = r.drift[k] / r.drift[k + 1];
    ratios += " " + fmt("%.3f", q);
    out.require(q >= 3.5 && q <= 4.5, label + " drift ratio " + fmt("%.3f", q));
  }
  ratios += ", t_detect contraction";
  for (std::size_t k = 0; k + 2 < r.t_detect.size(); ++k) {
    const double q = std::abs(r.t_detect[k] - r.t_detect[k + 1]) / std::abs(r.t_detect[k + 1] - r.t_detect[k + 2]);
    ratios += " " + fmt("%.3f", q);
    out.require(q >= 3.0, label + " t_detect contraction " + fmt("%.3f", q));
  }
  out.note(ratios);
}

Outcome convergence_orders() {
  Outcome out;
  {
    const ModelSpec m = make_scalar_ode(1.0, 2.0);
    RunConfig cfg;
    cfg.dt0 = 1e-2;
    cfg.c_nl = cfg.c_acc = 1e-2;
    cfg.dt_floor = 1e-14;
    cfg.t_max = 10.0;
    cfg.record_every = 10;
    const Refinement r = refine(m, Vector::Constant(1, 1.5), Vector::Constant(1, 1.0), cfg, 1e4, 4);
    judge_refinement(out, "scalar", r);
  }
  {
    const ModelSpec m = make_klein_gordon(20.0, 199, 1.0, 2.0);
    Vector u0(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
      const double z = (m.space->x(i) - 10.0) / 1.5;
      u0[i] = 3.0 * std::exp(-z * z);
    }
    const Vector u1 = u0.cwiseProduct(u0) / std::sqrt(2.0);
    RunConfig cfg;
    cfg.dt0 = 1e-2;
    cfg.c_nl = cfg.c_acc = 1e-2;
    cfg.dt_floor = 1e-14;
    cfg.t_max = 20.0;
    cfg.record_every = 10;
    const Refinement r = refine(m, u0, u1, cfg, 1e2, 4);
    judge_refinement(out, "kg", r);
  }
  return out;
}

Outcome nb_boundary_blowup() {
  Outcome out;
  const Scenario sc = load("nb_cubic_blowup");
  const ModelSpec m = build_model(sc.model);
  const ResolvedData d = resolve_data(sc, m);
  out.require(check_nb_condition(m, d.u0, d.u1), "data fail the boundary condition");
  const RunResult r = run(m, d.u0, d.u1, sc.run);
  const double top = std::max(max_psi(r.traj), r.verdict.psi_final);
  out.require(r.verdict.status == VerdictStatus::blew_up, std::string("verdict ") + to_string(r.verdict.status));
  out.require(top > 1e8, "|u|^2 only reached " + fmt("%.3g", top));
  g_monitors.add("nb cubic", r.traj, m, true);

  const Vector inward = -d.u1;
  out.require(d.u0.dot(m.space->weights().cwiseProduct(inward)) <= 0.0, "reversed data not inward");
  out.require(std::abs(nb_energy(m, d.u0, inward) - nb_energy(m, d.u0, d.u1)) <=
                  1e-12 * std::abs(nb_energy(m, d.u0, d.u1)),
              "reversed data change the energy");
  out.require(!check_nb_condition(m, d.u0, inward), "inward data pass the boundary condition");
  out.require(!check_levine_conditions(m, d.u0, inward).satisfied, "inward data pass the growth conditions");
  out.note("blew up at t = " + fmt("%.6g", r.verdict.t_detect.value_or(NAN)) + " with |u|^2 = " + fmt("%.3g", top) +
           "; inward data unsatisfied");
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> files_under(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism_and_cli() {
  Outcome out;
  const fs::path scratch = fs::temp_directory_path() / "blowup_acceptance_cli";
  fs::remove_all(scratch);
  std::vector<fs::path> scns;
  for (const auto& e : fs::directory_iterator(fs::path(BLOWUP_SOURCE_DIR) / "scenarios"))
    if (e.path().extension() == ".scn") scns.push_back(e.path());
  std::sort(scns.begin(), scns.end());
  out.require(!scns.empty(), "no scenarios found");

  int expected_failures = 0;
  for (const fs::path& scn : scns) {
    const std::string stem = scn.stem().string();
    int codes[2];
    for (int pass = 0; pass < 2; ++pass) {
      const fs::path dir = scratch / (pass == 0 ? "a" : "b") / stem;
      const std::string cmd = std::string("\"") + BLOWUP_CLI + "\" run \"" + scn.string() + "\" --out \"" +
                              dir.string() + "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      codes[pass] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    const fs::path a = scratch / "a" / stem, b = scratch / "b" / stem;
    out.require(codes[0] == codes[1], stem + " exit codes differ");
    if (!fs::exists(a) || !fs::exists(b)) {
      out.require(false, stem + " wrote no outputs");
      continue;
    }
    const auto fa = files_under(a), fb = files_under(b);
    out.require(fa == fb && !fa.empty(), stem + " output file sets differ");
    for (const fs::path& f : fa)
      if (fs::exists(b / f)) out.require(slurp(a / f) == slurp(b / f), stem + "/" + f.string() + " not byte-identical");

    bool ok = false, found = false;
    for (const fs::path& f : fa) {
      if (f.filename() != "report.txt") continue;
      const std::string text = slurp(a / f);
      found = true;
      ok = text.find("result.ok = true") != std::string::npos;
    }
    out.require(found, stem + " has no report");
    out.require(codes[0] == (ok ? 0 : 1), stem + " exit " + std::to_string(codes[0]) + " vs result.ok");
    expected_failures += !ok;
  }
  out.require(expected_failures == 1, std::to_string(expected_failures) + " scenarios report result.ok = false");
  fs::remove_all(scratch);
  out.note(std::to_string(scns.size()) + " scenarios run twice, outputs identical, exit codes match");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> fn;
  };
  // Monitors collect runs from criteria 2-4 and 8, so 5 is evaluated after 8.
  const std::vector<Criterion> order = {
      {1, "linear impossibility", 60, linear_impossibility},
      {2, "scalar oracle", 60, scalar_oracle},
      {3, "Boussinesq builder", 120, boussinesq_builder},
      {4, "KG equivalence", 0, kg_equivalence},
      {6, "gradient consistency", 0, gradient_consistency},
      {7, "convergence orders", 0, convergence_orders},
      {8, "NB boundary blow-up", 0, nb_boundary_blowup},
      {5, "concavity monitors", 0, concavity_monitors},
      {9, "determinism and CLI contract", 0, determinism_and_cli},
  };
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const Criterion& c : order) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.require(false, "runtime " + fmt("%.1f", secs) + " s over budget");
    all = all && o.pass;
    lines.emplace_back(c.id, std::string(o.pass ? "PASS" : "FAIL") + " " + std::to_string(c.id) + " " + c.name +
                                 " (" + fmt("%.1f", secs) + " s): " + o.detail);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) std::printf("%s\n", l.second.c_str());
  return all ? 0 : 1;
}
