#pragma once

#include "blowup/diagnostics.hpp"
#include "blowup/model.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace blowup {

struct State {
  double t = 0.0;
  Vector u;
  Vector v;

  bool finite() const { return std::isfinite(t) && u.allFinite() && v.allFinite(); }
};

struct RunConfig {
  double dt0 = 1e-3;
  double t_max = 10.0;
  double psi_cap = 1e12;
  double dt_floor = 1e-12;
  int record_every = 1;
  bool adapt = true;
  double c_cfl = 0.5;   // dt <= c_cfl * 2 / omega_max
  double c_nl = 0.05;   // dt <= c_nl / (1 + |u|_inf^{p/2})
  double c_acc = 0.05;  // dt <= c_acc * sqrt(|u| / |u_tt|); 0 disables
  bool support_monitor = false;
  double support_tol = 1e-8;
  bool keep_states = false;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class VerdictStatus { blew_up, survived_horizon, aborted };
const char* to_string(VerdictStatus status);

struct BlowupVerdict {
  VerdictStatus status = VerdictStatus::aborted;
  std::optional<double> t_detect;
  double psi_final = 0.0;
  std::string reason;
};

struct RunResult {
  Trajectory traj;
  BlowupVerdict verdict;
  long steps = 0;
  double dt_min = 0.0;
};

/// u_tt = P^{-1}(F(u) - Au).
Vector acceleration(const ModelSpec& model, const Vector& u);

/// One kick-drift-kick leapfrog step. Non-finite output is left in place for
/// the caller to detect through State::finite().
State step(const ModelSpec& model, const State& s, double dt);

/// c_nl / (1 + |u|_inf^{p/2}) with p the model's growth exponent; +inf for
/// linear models.
double nonlinear_dt_cap(const ModelSpec& model, const Vector& u, double c_nl);

struct StepChoice {
  double dt = 0.0;
  bool at_floor = false;
};

/// Step size for the next step. Once psi_now >= psi_star the step never grows.
StepChoice adapt_dt(const ModelSpec& model, const State& s, double dt_prev, const RunConfig& cfg,
                    double psi_now, double psi_star);

/// Integrates until t_max, Psi >= psi_cap or the step hits dt_floor.
RunResult run(const ModelSpec& model, const Vector& u0, const Vector& u1, const RunConfig& cfg);

}  // namespace blowup
