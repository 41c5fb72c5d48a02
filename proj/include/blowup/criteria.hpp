#pragma once

#include "blowup/model.hpp"

#include <optional>

namespace blowup {

/// E = 1/2 (Pv, v) + 1/2 (Au, u) - G(u).
double energy(const ModelSpec& model, const Vector& u, const Vector& v);

struct CriteriaReport {
  double l1_value = 0.0;  // (u0, P u1) / (u0, P u0)
  double l2_lhs = 0.0;    // E(0) + R0/(1 + 2 alpha)
  double l2_rhs = 0.0;    // 1/2 (u0, P u1)^2 / (u0, P u0)
  bool satisfied = false;
  double a0 = 0.0;
  double energy0 = 0.0;
  double psi0 = 0.0;
  double dpsi0 = 0.0;
  std::optional<double> levine_time_bound;  // set when dpsi0 > 0
};

/// Growth conditions for P u_tt + A u = F(u):
///   (u0, P u1)/(u0, P u0) > 0  and
///   1/2(u0,Au0) + 1/2(Pu1,u1) - G(u0) + R0/(1+2alpha) < 1/2 (u0,Pu1)^2/(u0,Pu0).
/// Throws std::invalid_argument for u0 = 0.
CriteriaReport check_levine_conditions(const ModelSpec& model, const Vector& u0, const Vector& u1);

/// Klein-Gordon form, evaluated from its own ingredients:
/// (u0,u1) > [|u1|^2 + |grad u0|^2 + m^2|u0|^2 - 2/(p+2) int |u0|^{p+2}]^{1/2} |u0|.
/// A negative bracket counts as satisfied when (u0, u1) > 0.
bool check_kg_condition(const ModelSpec& model, const Vector& u0, const Vector& u1);

/// The bracket above (equals 2E(0) analytically).
double kg_bracket(const ModelSpec& model, const Vector& u0, const Vector& u1);

/// Boundary-energy E0 = 1/2|u1|^2 + 1/2|grad u0|^2 + b/2|u0|^2 - sum_b F(u0).
double nb_energy(const ModelSpec& model, const Vector& u0, const Vector& u1);

/// R0 = |Gamma_2| r0 as used with the boundary energy.
double nb_R0(const ModelSpec& model);

/// (u0,u1)/|u0|^2 > 2E0 + R0/(1+2alpha) > 0 for the nonlinear-boundary model.
bool check_nb_condition(const ModelSpec& model, const Vector& u0, const Vector& u1);

/// t0 + psi/(alpha dpsi). Throws std::domain_error unless psi > 0, dpsi > 0, alpha > 0.
double levine_time_bound(double psi_t0, double dpsi_t0, double alpha, double t0);

struct GrowthCurve {
  double t0 = 0.0;
  double psi_t0 = 0.0;
  double dpsi_t0 = 0.0;
  double alpha = 0.0;
  double blowup_time_upper = 0.0;  // +inf unless dpsi_t0 > 0

  static GrowthCurve at(double t0, double psi_t0, double dpsi_t0, double alpha);
};

/// [Psi0^{-alpha} - alpha Psi0' Psi0^{-alpha-1} (t - t0)]^{-1/alpha}, the
/// lower envelope implied by concavity of Psi^{-alpha}. Requires
/// t0 <= t < blowup_time_upper.
double psi_lower_bound(const GrowthCurve& curve, double t);

/// Psi* = (4(1+2alpha)E0 + 4R0 + delta)/(alpha a0); above it the concavity
/// inequality holds.
double t_star_threshold(const ModelSpec& model, double e0, double delta = 0.0);

}  // namespace blowup
