#pragma once

#include "blowup/criteria.hpp"
#include "blowup/model.hpp"

namespace blowup {

/// Seed directions with (P u_hat0, u_hat0) = (P u_hat1, u_hat1) = 1 and
/// theta = (P u_hat0, u_hat1) in (0, 1].
struct SeedPair {
  Vector u_hat0;
  Vector u_hat1;
  double theta = 0.0;
};

struct HRoot {
  double c0 = 0.0;
  double residual = 0.0;  // |H(c0)|
  int sign_changes = 0;   // sign changes of H seen on the scanned bracket
  double bracket_hi = 0.0;
};

/// Initial data of prescribed energy K2 that satisfy the growth conditions.
struct BuiltData {
  double c0 = 0.0;
  double c1 = 0.0;
  double theta = 0.0;
  Vector u0;  // c0 * u_hat0
  Vector u1;  // c1 * u_hat1
  double K2 = 0.0;
  double achieved_energy = 0.0;
  int root_sign_changes = 0;
  CriteriaReport report;
};

/// Scales v0, v1 to unit P-norm. Throws std::invalid_argument when either is
/// zero or theta <= 1e-12 (orthogonal or
/// opposed seeds).
SeedPair normalize_pair(const ModelSpec& model, const Vector& v0, const Vector& v1);

/// theta^{-1} [2 K2 + 4 R0/(m+2)]^{1/2}; any c1 above it is admissible.
double c1_threshold(double theta, double K2, double R0, int m);
/// Same bound written with alpha (m = 4 alpha): theta^{-1}[2K2 + 2R0/(1+2alpha)]^{1/2}.
double c1_threshold_alpha(double theta, double K2, double R0, double alpha);

/// H(c0) = c1^2/2 - K2 + c0^2/2 (A u_hat0, u_hat0) - G(c0 u_hat0).
double h_function(const ModelSpec& model, const SeedPair& pair, double c1, double K2, double c0);

/// Smallest positive root of H: doubling from c0 = 1 until H < 0, a grid scan
/// of [0, hi] for the first sign change, then bisection.
/// Throws NumericalError when no sign change appears within 60 doublings.
HRoot solve_H_root(const ModelSpec& model, const SeedPair& pair, double c1, double K2);

/// c1 = margin * threshold, c0 from solve_H_root. Throws NumericalError if the
/// assembled data fail the energy target or the growth conditions.
BuiltData build_positive_energy_data(const ModelSpec& model, const SeedPair& pair, double K2,
                                     double c1_margin = 1.01);

}  // namespace blowup
