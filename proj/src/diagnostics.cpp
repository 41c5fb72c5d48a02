#include "blowup/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace blowup {
namespace {

double largest(std::initializer_list<double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, std::abs(t));
  return m;
}

// Folds one sample's margin into a monitor; margins are normalized by
// (1 + scale) so the worst one is comparable across samples.
void fold(MonitorResult& r, int index, double margin, double scale, double tol) {
  const double normalized = margin / (1.0 + scale);
  ++r.checked;
  if (r.worst_index < 0 || normalized < r.worst_margin) {
    r.worst_margin = normalized;
    r.worst_index = index;
  }
  if (normalized < -tol) r.pass = false;
}

}  // namespace

double psi(const ModelSpec& model, const Vector& u) { return model.P.quad_form(u); }

double dpsi(const ModelSpec& model, const Vector& u, const Vector& v) {
  return 2.0 * inner(*model.space, model.P.apply(v), u);
}

double ddpsi_eq(const ModelSpec& model, const Vector& u, const Vector& v) {
  const Vector rhs = model.nl.eval_F(*model.space, u) - model.A.apply(u);
  return 2.0 * model.P.quad_form(v) + 2.0 * inner(*model.space, rhs, u);
}

DerivedRow derive(const ModelSpec& model, double t, const Vector& u, const Vector& v, double e0) {
  const DiscreteSpace& s = *model.space;
  const Vector pv = model.P.apply(v);
  const Vector au = model.A.apply(u);
  const Vector fu = model.nl.eval_F(s, u);
  const double alpha = model.alpha();

  DerivedRow r;
  r.t = t;
  r.psi = model.P.quad_form(u);
  r.kinetic = inner(s, pv, v);
  r.stiffness = inner(s, au, u);
  r.dpsi = 2.0 * inner(s, pv, u);
  r.ddpsi_eq = 2.0 * r.kinetic + 2.0 * (inner(s, fu, u) - r.stiffness);
  r.energy = 0.5 * r.kinetic + 0.5 * r.stiffness - model.nl.eval_G(s, u);
  r.defect = r.ddpsi_eq * r.psi - (1.0 + alpha) * r.dpsi * r.dpsi;
  r.inf2_rhs = (alpha * model.a0 * r.psi - 4.0 * (1.0 + 2.0 * alpha) * e0 - 4.0 * model.R0()) * r.psi;
  return r;
}

Trajectory Trajectory::start(const ModelSpec& model, const Vector& u0, const Vector& v0) {
  Trajectory traj;
  traj.e0 = energy(model, u0, v0);
  traj.alpha = model.alpha();
  traj.a0 = model.a0;
  traj.R0 = model.R0();
  return traj;
}

void Trajectory::append(const ModelSpec& model, double t, const Vector& u, const Vector& v,
                        bool keep_state) {
  rows.push_back(derive(model, t, u, v, e0));
  if (keep_state) samples.push_back(Sample{t, u, v});
}

DefectSeries concavity_defect(const Trajectory& traj, double alpha) {
  if (alpha <= 0.0) alpha = traj.alpha;
  DefectSeries out;
  out.defect.reserve(traj.size());
  out.inf2_rhs.reserve(traj.size());
  for (const DerivedRow& r : traj.rows) {
    out.defect.push_back(r.ddpsi_eq * r.psi - (1.0 + alpha) * r.dpsi * r.dpsi);
    out.inf2_rhs.push_back(
        (alpha * traj.a0 * r.psi - 4.0 * (1.0 + 2.0 * alpha) * traj.e0 - 4.0 * traj.R0) * r.psi);
  }
  return out;
}

std::vector<double> check_inf1(const Trajectory& traj, const ModelSpec& model) {
  const double a = model.alpha();
  std::vector<double> out;
  out.reserve(traj.size());
  for (const DerivedRow& r : traj.rows) {
    const double rhs = -4.0 * (1.0 + 2.0 * a) * traj.e0 - 4.0 * model.R0() + 4.0 * (a + 1.0) * r.kinetic +
                       4.0 * a * r.stiffness;
    out.push_back(r.ddpsi_eq - rhs);
  }
  return out;
}

std::vector<double> inf1_identity_margin(const Trajectory& traj, const ModelSpec& model) {
  const double a = model.alpha();
  std::vector<double> out;
  out.reserve(traj.size());
  for (const DerivedRow& r : traj.rows) {
    const double rhs = -4.0 * (1.0 + 2.0 * a) * r.energy - 4.0 * model.R0() + 4.0 * (a + 1.0) * r.kinetic +
                       4.0 * a * r.stiffness;
    out.push_back(r.ddpsi_eq - rhs);
  }
  return out;
}

std::vector<double> check_nb5(const Trajectory& traj, const ModelSpec& model) {
  if (model.kind != ModelKind::nonlinear_boundary) {
    throw std::invalid_argument("check_nb5: not a nonlinear-boundary model");
  }
  const double a = model.alpha();
  const double r0 = nb_R0(model);
  std::vector<double> out;
  out.reserve(traj.size());
  // (Au, u) = |grad_h u|^2 + b |u|^2 for this model; P = I so (Pv, v) = |v|^2.
  for (const DerivedRow& r : traj.rows) {
    const double rhs = -4.0 * (1.0 + 2.0 * a) * traj.e0 - 2.0 * r0 + 4.0 * (1.0 + a) * r.kinetic +
                       4.0 * a * r.stiffness;
    out.push_back(r.ddpsi_eq - rhs);
  }
  return out;
}

MonitorResult monitor_concavity(const Trajectory& traj, double psi_min, double tol) {
  MonitorResult res;
  const double a = traj.alpha;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const DerivedRow& r = traj.rows[i];
    if (r.psi < psi_min) continue;
    const double scale = largest({r.ddpsi_eq * r.psi, (1.0 + a) * r.dpsi * r.dpsi});
    fold(res, static_cast<int>(i), r.defect, scale, tol);
  }
  return res;
}

MonitorResult monitor_inf2(const Trajectory& traj, double psi_min, double tol) {
  MonitorResult res;
  const double a = traj.alpha;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const DerivedRow& r = traj.rows[i];
    if (r.psi < psi_min) continue;
    const double scale =
        largest({r.ddpsi_eq * r.psi, (1.0 + a) * r.dpsi * r.dpsi, a * traj.a0 * r.psi * r.psi,
                 4.0 * (1.0 + 2.0 * a) * traj.e0 * r.psi, 4.0 * traj.R0 * r.psi});
    fold(res, static_cast<int>(i), r.defect - r.inf2_rhs, scale, tol);
  }
  return res;
}

MonitorResult monitor_inf1(const Trajectory& traj, const ModelSpec& model, double tol) {
  const std::vector<double> margins = check_inf1(traj, model);
  const double a = model.alpha();
  MonitorResult res;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const DerivedRow& r = traj.rows[i];
    const double scale = largest({r.ddpsi_eq, 4.0 * (1.0 + 2.0 * a) * traj.e0, 4.0 * model.R0(),
                                  4.0 * (a + 1.0) * r.kinetic, 4.0 * a * r.stiffness});
    fold(res, static_cast<int>(i), margins[i], scale, tol);
  }
  return res;
}

MonitorResult monitor_nb5(const Trajectory& traj, const ModelSpec& model, double tol) {
  const std::vector<double> margins = check_nb5(traj, model);
  const double a = model.alpha();
  MonitorResult res;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const DerivedRow& r = traj.rows[i];
    const double scale = largest({r.ddpsi_eq, 4.0 * (1.0 + 2.0 * a) * traj.e0, 2.0 * nb_R0(model),
                                  4.0 * (1.0 + a) * r.kinetic, 4.0 * a * r.stiffness});
    fold(res, static_cast<int>(i), margins[i], scale, tol);
  }
  return res;
}

GrowthCheck check_growth_vs_bound(const Trajectory& traj, const GrowthCurve& curve, double t_end,
                                  double tol) {
  GrowthCheck out;
  const double stop = std::min(t_end, curve.blowup_time_upper);
  for (const DerivedRow& r : traj.rows) {
    if (r.t < curve.t0 || r.t >= stop) continue;
    const double bound = psi_lower_bound(curve, r.t);
    ++out.checked;
    out.worst_ratio = std::min(out.worst_ratio, r.psi / bound);
    if (r.psi < bound * (1.0 - tol) && out.pass) {
      out.pass = false;
      out.first_violation_t = r.t;
    }
  }
  return out;
}

LevineCheck check_levine_window(const Trajectory& traj, const ModelSpec& model, double t_detect,
                                double slack, double growth_tol) {
  LevineCheck out;
  const double a = traj.alpha;
  const double psi_star = t_star_threshold(model, traj.e0, 0.0);
  const double l2_lhs = traj.e0 + traj.R0 / (1.0 + 2.0 * a);
  out.tightest = std::numeric_limits<double>::infinity();
  bool times_ok = true;
  for (const DerivedRow& r : traj.rows) {
    if (r.t > t_detect) break;
    if (!(r.psi >= psi_star) || !(r.dpsi > 0.0)) continue;
    // (u, Pv)^2 / (2 (u, Pu)) written with Psi and Psi'.
    if (!(l2_lhs < r.dpsi * r.dpsi / (8.0 * r.psi))) continue;
    const double bound = levine_time_bound(r.psi, r.dpsi, a, r.t);
    if (!out.found) {
      out.found = true;
      out.t0 = r.t;
      out.bound = bound;
      out.growth = check_growth_vs_bound(traj, GrowthCurve::at(r.t, r.psi, r.dpsi, a), t_detect, growth_tol);
    }
    ++out.candidates;
    out.tightest = std::min(out.tightest, bound - t_detect);
    if (t_detect > bound + slack) times_ok = false;
  }
  out.pass = out.found && times_ok && out.growth.pass;
  return out;
}

EnergyDrift energy_drift(const Trajectory& traj, double psi_max) {
  EnergyDrift d;
  for (const DerivedRow& r : traj.rows) {
    if (r.psi > psi_max) continue;
    d.absolute = std::max(d.absolute, std::abs(r.energy - traj.e0));
  }
  d.relative = traj.e0 != 0.0 ? d.absolute / std::abs(traj.e0) : d.absolute;
  return d;
}

}  // namespace blowup
