#include "blowup/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowup {
namespace {

constexpr int kTail = 10;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Ring of the last kTail step-level Psi values.
class PsiTail {
 public:
  void push(double psi) {
    buf_[head_] = psi;
    head_ = (head_ + 1) % kTail;
    count_ = std::min(count_ + 1, kTail);
  }
  bool strictly_increasing() const {
    if (count_ < kTail) return false;
    for (int k = 1; k < kTail; ++k) {
      const double prev = buf_[(head_ + k - 1) % kTail];
      const double cur = buf_[(head_ + k) % kTail];
      if (!(cur > prev)) return false;
    }
    return true;
  }

 private:
  std::array<double, kTail> buf_{};
  int head_ = 0;
  int count_ = 0;
};

double support_leak(const ModelSpec& model, const Vector& u) {
  double m = 0.0;
  for (int i : model.space->wall_adjacent_nodes()) m = std::max(m, std::abs(u[i]));
  return m;
}

}  // namespace

void RunConfig::validate() const {
  if (!(dt0 > 0.0)) throw std::invalid_argument("run config: dt0 must be positive");
  if (!(t_max > 0.0)) throw std::invalid_argument("run config: t_max must be positive");
  if (!(dt_floor > 0.0) || !(dt_floor < dt0)) {
    throw std::invalid_argument("run config: need 0 < dt_floor < dt0");
  }
  if (!(psi_cap > 0.0)) throw std::invalid_argument("run config: psi_cap must be positive");
  if (record_every < 1) throw std::invalid_argument("run config: record_every must be >= 1");
  if (!(c_cfl > 0.0) || !(c_nl > 0.0) || !(c_acc >= 0.0)) {
    throw std::invalid_argument("run config: step constants must be positive");
  }
  if (!(support_tol > 0.0)) throw std::invalid_argument("run config: support_tol must be positive");
}

const char* to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::blew_up: return "blew_up";
    case VerdictStatus::survived_horizon: return "survived_horizon";
    case VerdictStatus::aborted: return "aborted";
  }
  return "unknown";
}

Vector acceleration(const ModelSpec& model, const Vector& u) {
  if (model.linear()) return model.P.solve(-model.A.apply(u));
  return model.P.solve(model.nl.eval_F(*model.space, u) - model.A.apply(u));
}

State step(const ModelSpec& model, const State& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  State out;
  out.t = s.t + dt;
  const Vector v_half = s.v + 0.5 * dt * acceleration(model, s.u);
  out.u = s.u + dt * v_half;
  out.v = v_half + 0.5 * dt * acceleration(model, out.u);
  return out;
}

double nonlinear_dt_cap(const ModelSpec& model, const Vector& u, double c_nl) {
  if (model.linear()) return kInf;
  const double p = model.nl.growth_exponent();
  const double umax = u.size() > 0 ? u.cwiseAbs().maxCoeff() : 0.0;
  return c_nl / (1.0 + std::pow(umax, 0.5 * p));
}

namespace {

StepChoice choose_dt(const ModelSpec& model, const State& s, const Vector& acc, double dt_prev,
                     const RunConfig& cfg, double psi_now, double psi_star) {
  StepChoice c;
  double dt = cfg.dt0;
  if (cfg.adapt) {
    if (model.omega_max > 0.0) dt = std::min(dt, cfg.c_cfl * 2.0 / model.omega_max);
    dt = std::min(dt, nonlinear_dt_cap(model, s.u, cfg.c_nl));
    if (cfg.c_acc > 0.0 && !model.linear()) {
      const double un = norm(*model.space, s.u);
      const double an = norm(*model.space, acc);
      if (an > 0.0 && un > 0.0) dt = std::min(dt, cfg.c_acc * std::sqrt(un / an));
    }
    if (psi_now >= psi_star && dt_prev > 0.0) dt = std::min(dt, dt_prev);
    if (dt <= cfg.dt_floor) {
      dt = cfg.dt_floor;
      c.at_floor = true;
    }
  }
  c.dt = dt;
  return c;
}

}  // namespace

StepChoice adapt_dt(const ModelSpec& model, const State& s, double dt_prev, const RunConfig& cfg,
                    double psi_now, double psi_star) {
  return choose_dt(model, s, acceleration(model, s.u), dt_prev, cfg, psi_now, psi_star);
}

RunResult run(const ModelSpec& model, const Vector& u0, const Vector& u1, const RunConfig& cfg) {
  cfg.validate();
  require_dim(u0.size(), model.dim(), "run");
  require_dim(u1.size(), model.dim(), "run");

  RunResult res;
  res.traj = Trajectory::start(model, u0, u1);
  State s{0.0, u0, u1};
  double psi_now = model.P.quad_form(s.u);
  if (!(psi_now < cfg.psi_cap)) throw std::invalid_argument("run: initial Psi already exceeds psi_cap");

  double psi_star = kInf;
  if (!model.linear() && model.alpha() > 0.0 && model.a0 > 0.0) {
    psi_star = t_star_threshold(model, res.traj.e0, 0.0);
  }

  res.traj.append(model, s.t, s.u, s.v, cfg.keep_states);
  bool last_recorded = true;
  auto record = [&](const State& st) {
    res.traj.append(model, st.t, st.u, st.v, cfg.keep_states);
    last_recorded = true;
  };
  auto finish = [&](VerdictStatus status, std::string reason, std::optional<double> t_detect) {
    if (!last_recorded && s.finite()) record(s);
    res.verdict.status = status;
    res.verdict.reason = std::move(reason);
    res.verdict.t_detect = t_detect;
    res.verdict.psi_final = psi_now;
    return res;
  };

  PsiTail tail;
  tail.push(psi_now);
  Vector acc = acceleration(model, s.u);
  double dt_prev = 0.0;
  res.dt_min = kInf;

  if (cfg.support_monitor && support_leak(model, s.u) > cfg.support_tol) {
    return finish(VerdictStatus::aborted, "initial data touch the wall", std::nullopt);
  }

  while (s.t < cfg.t_max) {
    const StepChoice choice = choose_dt(model, s, acc, dt_prev, cfg, psi_now, psi_star);
    if (choice.at_floor) {
      const double dpsi_now = 2.0 * inner(*model.space, model.P.apply(s.v), s.u);
      if (dpsi_now > 0.0) {
        return finish(VerdictStatus::blew_up, "step size reached dt_floor with Psi increasing", s.t);
      }
      return finish(VerdictStatus::aborted, "step size reached dt_floor with Psi not increasing", std::nullopt);
    }
    double dt = choice.dt;
    // Land exactly on the horizon.
    if (s.t + dt > cfg.t_max) dt = cfg.t_max - s.t;
    if (!(dt > 0.0)) break;

    s.v.noalias() += (0.5 * dt) * acc;
    s.u.noalias() += dt * s.v;
    acc = acceleration(model, s.u);
    s.v.noalias() += (0.5 * dt) * acc;
    s.t = s.t + dt >= cfg.t_max ? cfg.t_max : s.t + dt;

    ++res.steps;
    dt_prev = choice.dt;
    res.dt_min = std::min(res.dt_min, dt);
    last_recorded = false;

    if (!s.finite()) {
      return finish(VerdictStatus::aborted, "non-finite state before any blow-up signature", std::nullopt);
    }
    psi_now = model.P.quad_form(s.u);
    tail.push(psi_now);

    if (res.steps % cfg.record_every == 0) record(s);

    if (cfg.support_monitor && support_leak(model, s.u) > cfg.support_tol) {
      return finish(VerdictStatus::aborted, "solution reached the box wall", std::nullopt);
    }
    if (psi_now >= cfg.psi_cap) {
      if (tail.strictly_increasing()) {
        return finish(VerdictStatus::blew_up, "Psi reached psi_cap with a monotone tail", s.t);
      }
      return finish(VerdictStatus::aborted, "Psi reached psi_cap without a monotone tail", std::nullopt);
    }
  }
  return finish(VerdictStatus::survived_horizon, "reached t_max", std::nullopt);
}

}  // namespace blowup
