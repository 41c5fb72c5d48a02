#include "blowup/criteria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowup {

double energy(const ModelSpec& model, const Vector& u, const Vector& v) {
  require_dim(u.size(), model.dim(), "energy");
  require_dim(v.size(), model.dim(), "energy");
  return 0.5 * model.P.quad_form(v) + 0.5 * model.A.quad_form(u) - model.nl.eval_G(*model.space, u);
}

CriteriaReport check_levine_conditions(const ModelSpec& model, const Vector& u0, const Vector& u1) {
  require_dim(u0.size(), model.dim(), "check_levine_conditions");
  require_dim(u1.size(), model.dim(), "check_levine_conditions");
  const double pu0u0 = model.P.quad_form(u0);
  if (!(pu0u0 > 0.0)) throw std::invalid_argument("check_levine_conditions: u0 must be nonzero");
  const double u0pu1 = inner(*model.space, u0, model.P.apply(u1));

  CriteriaReport r;
  r.a0 = model.a0;
  r.energy0 = energy(model, u0, u1);
  r.psi0 = pu0u0;
  r.dpsi0 = 2.0 * u0pu1;
  r.l1_value = u0pu1 / pu0u0;
  r.l2_lhs = r.energy0 + model.R0() / (1.0 + 2.0 * model.alpha());
  r.l2_rhs = 0.5 * u0pu1 * u0pu1 / pu0u0;
  r.satisfied = r.l1_value > 0.0 && r.l2_lhs < r.l2_rhs;
  if (r.dpsi0 > 0.0) r.levine_time_bound = levine_time_bound(r.psi0, r.dpsi0, model.alpha(), 0.0);
  return r;
}

double kg_bracket(const ModelSpec& model, const Vector& u0, const Vector& u1) {
  if (model.kind != ModelKind::klein_gordon) throw std::invalid_argument("kg condition: not a Klein-Gordon model");
  require_dim(u0.size(), model.dim(), "kg_bracket");
  require_dim(u1.size(), model.dim(), "kg_bracket");
  const DiscreteSpace& s = *model.space;
  const double m = model.params.mass;
  const double p = model.params.exponent;
  const double grad2 = u0.dot(stiffness_gram(s) * u0);
  double lp = 0.0;
  if (!model.linear()) {
    for (Eigen::Index i = 0; i < u0.size(); ++i) lp += s.weights()[i] * std::pow(std::abs(u0[i]), p + 2.0);
  }
  return inner(s, u1, u1) + grad2 + m * m * inner(s, u0, u0) - 2.0 / (p + 2.0) * lp;
}

bool check_kg_condition(const ModelSpec& model, const Vector& u0, const Vector& u1) {
  const double bracket = kg_bracket(model, u0, u1);
  const double lhs = inner(*model.space, u0, u1);
  if (bracket < 0.0) return lhs > 0.0;
  return lhs > std::sqrt(bracket) * norm(*model.space, u0);
}

double nb_energy(const ModelSpec& model, const Vector& u0, const Vector& u1) {
  if (model.kind != ModelKind::nonlinear_boundary) {
    throw std::invalid_argument("nb condition: not a nonlinear-boundary model");
  }
  require_dim(u0.size(), model.dim(), "nb_energy");
  require_dim(u1.size(), model.dim(), "nb_energy");
  const DiscreteSpace& s = *model.space;
  double boundary = 0.0;
  if (model.params.source) {
    for (int b : s.boundary_nodes()) boundary += model.params.source->potential(u0[b]);
  }
  return 0.5 * inner(s, u1, u1) + 0.5 * u0.dot(stiffness_gram(s) * u0) +
         0.5 * model.params.b * inner(s, u0, u0) - boundary;
}

double nb_R0(const ModelSpec& model) {
  return model.flux_boundary_measure() * model.nl.pointwise_r0_value();
}

bool check_nb_condition(const ModelSpec& model, const Vector& u0, const Vector& u1) {
  const double e0 = nb_energy(model, u0, u1);
  const double n2 = inner(*model.space, u0, u0);
  if (!(n2 > 0.0)) throw std::invalid_argument("check_nb_condition: u0 must be nonzero");
  const double lhs = inner(*model.space, u0, u1) / n2;
  const double mid = 2.0 * e0 + nb_R0(model) / (1.0 + 2.0 * model.alpha());
  return lhs > mid && mid > 0.0;
}

double levine_time_bound(double psi_t0, double dpsi_t0, double alpha, double t0) {
  if (!(psi_t0 > 0.0) || !(dpsi_t0 > 0.0) || !(alpha > 0.0)) {
    throw std::domain_error("levine_time_bound: needs Psi(t0) > 0, Psi'(t0) > 0, alpha > 0");
  }
  return t0 + psi_t0 / (alpha * dpsi_t0);
}

GrowthCurve GrowthCurve::at(double t0, double psi_t0, double dpsi_t0, double alpha) {
  if (!(psi_t0 > 0.0) || !(alpha > 0.0)) throw std::domain_error("GrowthCurve: needs Psi(t0) > 0, alpha > 0");
  GrowthCurve c{t0, psi_t0, dpsi_t0, alpha, std::numeric_limits<double>::infinity()};
  if (dpsi_t0 > 0.0) c.blowup_time_upper = levine_time_bound(psi_t0, dpsi_t0, alpha, t0);
  return c;
}

double psi_lower_bound(const GrowthCurve& c, double t) {
  if (t < c.t0 || t >= c.blowup_time_upper) {
    throw std::domain_error("psi_lower_bound: t outside [t0, blowup_time_upper)");
  }
  // Psi^{-alpha} is concave, so it lies below its tangent at t0.
  const double base = std::pow(c.psi_t0, -c.alpha);
  const double slope = c.alpha * c.dpsi_t0 * std::pow(c.psi_t0, -c.alpha - 1.0);
  const double tangent = base - slope * (t - c.t0);
  if (t == c.t0) return c.psi_t0;
  return std::pow(tangent, -1.0 / c.alpha);
}

double t_star_threshold(const ModelSpec& model, double e0, double delta) {
  const double alpha = model.alpha();
  return (4.0 * (1.0 + 2.0 * alpha) * e0 + 4.0 * model.R0() + delta) / (alpha * model.a0);
}

}  // namespace blowup
