#pragma once

#include "blowup/criteria.hpp"
#include "blowup/model.hpp"

#include <limits>
#include <vector>

namespace blowup {

/// Psi = (Pu, u).
double psi(const ModelSpec& model, const Vector& u);
/// Psi' = 2 (Pv, u).
double dpsi(const ModelSpec& model, const Vector& u, const Vector& v);
/// Psi'' with u_tt eliminated through the equation: 2(Pv,v) + 2(F(u) - Au, u).
double ddpsi_eq(const ModelSpec& model, const Vector& u, const Vector& v);

struct Sample {
  double t = 0.0;
  Vector u;
  Vector v;
};

struct DerivedRow {
  double t = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
  double ddpsi_eq = 0.0;
  double energy = 0.0;
  double defect = 0.0;    // ddpsi_eq * psi - (1 + alpha) dpsi^2
  double inf2_rhs = 0.0;  // [alpha a0 psi - 4(1+2alpha)E(0) - 4R0] psi
  double kinetic = 0.0;   // (Pv, v)
  double stiffness = 0.0; // (Au, u)
};

/// Recorded samples of a run with per-sample diagnostics. E(0) is the energy
/// of the first sample.
struct Trajectory {
  std::vector<Sample> samples;  // states are kept only when requested
  std::vector<DerivedRow> rows;
  double e0 = 0.0;
  double alpha = 0.0;
  double a0 = 0.0;
  double R0 = 0.0;

  static Trajectory start(const ModelSpec& model, const Vector& u0, const Vector& v0);
  void append(const ModelSpec& model, double t, const Vector& u, const Vector& v, bool keep_state);
  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

DerivedRow derive(const ModelSpec& model, double t, const Vector& u, const Vector& v, double e0);

struct DefectSeries {
  std::vector<double> defect;
  std::vector<double> inf2_rhs;
};

/// Concavity defect and its lower bound for a given alpha (defaults to the
/// trajectory's own alpha when alpha <= 0).
DefectSeries concavity_defect(const Trajectory& traj, double alpha = 0.0);

/// Margin of ddpsi_eq >= -4(1+2a)E(0) - 4R0 + 4(a+1)(Pv,v) + 4a(Au,u), per sample.
std::vector<double> check_inf1(const Trajectory& traj, const ModelSpec& model);

/// Same margin with the current energy in place of E(0); zero up to rounding
/// when the superlinearity condition is an equality.
std::vector<double> inf1_identity_margin(const Trajectory& traj, const ModelSpec& model);

/// Margin of ddpsi_eq >= -4(1+2a)E0 - 2R0 + 4(1+a)|v|^2 + 4a(|grad u|^2 + b|u|^2)
/// for nonlinear-boundary trajectories (R0 = |Gamma_2| r0).
std::vector<double> check_nb5(const Trajectory& traj, const ModelSpec& model);

struct MonitorResult {
  bool pass = true;
  double worst_margin = 0.0;  // most negative normalized margin seen (margin / scale)
  int worst_index = -1;
  int checked = 0;
};

/// Inequality monitors at tolerance tol * (1 + scale), scale being the largest
/// term of the inequality at that sample. `psi_min` restricts to samples with
/// Psi >= psi_min.
MonitorResult monitor_concavity(const Trajectory& traj, double psi_min, double tol = 1e-8);
MonitorResult monitor_inf2(const Trajectory& traj, double psi_min, double tol = 1e-8);
MonitorResult monitor_inf1(const Trajectory& traj, const ModelSpec& model, double tol = 1e-8);
MonitorResult monitor_nb5(const Trajectory& traj, const ModelSpec& model, double tol = 1e-8);

struct GrowthCheck {
  bool pass = true;
  int checked = 0;
  double first_violation_t = 0.0;
  double worst_ratio = 1.0;  // min of Psi / bound over checked samples
};

/// Psi(t) >= psi_lower_bound(curve, t) (1 - tol) on samples in
/// [t0, min(t_end, blowup_time_upper)).
GrowthCheck check_growth_vs_bound(const Trajectory& traj, const GrowthCurve& curve, double t_end,
                                  double tol = 1e-3);

/// Time-bound check over a blow-up trajectory. Candidate starting samples are
/// those with Psi >= Psi*(delta = 0), Psi' > 0 and the growth conditions holding
/// for the state at that sample. Every candidate's bound must exceed
/// t_detect - slack; the growth curve is checked from the first candidate.
struct LevineCheck {
  bool found = false;       // at least one candidate sample
  bool pass = false;
  int candidates = 0;
  double t0 = 0.0;          // first candidate
  double bound = 0.0;       // its time bound
  double tightest = 0.0;    // min over candidates of (bound - t_detect)
  GrowthCheck growth;
};

LevineCheck check_levine_window(const Trajectory& traj, const ModelSpec& model, double t_detect,
                                double slack, double growth_tol = 1e-3);

struct EnergyDrift {
  double absolute = 0.0;
  double relative = 0.0;  // absolute / |E(0)|, or absolute when E(0) == 0
};

/// max |E(t) - E(0)| over samples with Psi <= psi_max.
EnergyDrift energy_drift(const Trajectory& traj, double psi_max = std::numeric_limits<double>::infinity());

}  // namespace blowup
