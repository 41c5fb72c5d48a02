#include "blowup/data_builder.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blowup {
namespace {

constexpr int kMaxDoublings = 60;
constexpr int kScanCells = 1024;

}  // namespace

SeedPair normalize_pair(const ModelSpec& model, const Vector& v0, const Vector& v1) {
  require_dim(v0.size(), model.dim(), "normalize_pair");
  require_dim(v1.size(), model.dim(), "normalize_pair");
  const double n0 = model.P.quad_form(v0);
  const double n1 = model.P.quad_form(v1);
  if (!(n0 > 0.0) || !(n1 > 0.0)) throw std::invalid_argument("normalize_pair: seed vectors must be nonzero");
  SeedPair pair;
  pair.u_hat0 = v0 / std::sqrt(n0);
  pair.u_hat1 = v1 / std::sqrt(n1);
  pair.theta = inner(*model.space, model.P.apply(pair.u_hat0), pair.u_hat1);
  // theta is a cosine; rounding-level values mean P-orthogonal seeds
  if (!(pair.theta > 1e-12)) {
    throw std::invalid_argument("normalize_pair: (P v0, v1) must be positive");
  }
  return pair;
}

double c1_threshold_alpha(double theta, double K2, double R0, double alpha) {
  if (!(theta > 0.0)) throw std::invalid_argument("c1_threshold: theta must be positive");
  if (!(K2 > 0.0)) throw std::invalid_argument("c1_threshold: K2 must be positive");
  return std::sqrt(2.0 * K2 + 2.0 * R0 / (1.0 + 2.0 * alpha)) / theta;
}

double c1_threshold(double theta, double K2, double R0, int m) {
  return c1_threshold_alpha(theta, K2, R0, m / 4.0);
}

double h_function(const ModelSpec& model, const SeedPair& pair, double c1, double K2, double c0) {
  const double au = model.A.quad_form(pair.u_hat0);
  const Vector u = c0 * pair.u_hat0;
  return 0.5 * c1 * c1 - K2 + 0.5 * c0 * c0 * au - model.nl.eval_G(*model.space, u);
}

HRoot solve_H_root(const ModelSpec& model, const SeedPair& pair, double c1, double K2) {
  auto H = [&](double c0) { return h_function(model, pair, c1, K2, c0); };
  const double h0 = 0.5 * c1 * c1 - K2;
  if (!(h0 > 0.0)) throw std::invalid_argument("solve_H_root: H(0+) = c1^2/2 - K2 must be positive");

  double hi = 1.0;
  int doublings = 0;
  while (!(H(hi) < 0.0)) {
    if (++doublings > kMaxDoublings) {
      throw NumericalError("solve_H_root: H keeps its sign up to c0 = 2^60; nonlinearity too weak on this seed");
    }
    hi *= 2.0;
  }

  // First sign change on a uniform scan of [0, hi].
  HRoot out;
  out.bracket_hi = hi;
  double lo_c = 0.0;
  double hi_c = hi;
  double prev = h0;
  bool found = false;
  for (int k = 1; k <= kScanCells; ++k) {
    const double c = hi * k / kScanCells;
    const double h = H(c);
    if ((prev > 0.0) != (h > 0.0)) {
      ++out.sign_changes;
      if (!found) {
        lo_c = hi * (k - 1) / kScanCells;
        hi_c = c;
        found = true;
      }
    }
    prev = h;
  }

  const double tol = 1e-10 * std::max(1.0, K2);
  double mid = 0.5 * (lo_c + hi_c);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo_c + hi_c);
    const double h = H(mid);
    if (h > 0.0) {
      lo_c = mid;
    } else {
      hi_c = mid;
    }
    if (std::abs(h) <= 1e-3 * tol || hi_c - lo_c <= 4e-16 * hi_c) break;
  }
  out.c0 = mid;
  out.residual = std::abs(H(mid));
  if (!(out.residual <= tol)) {
    std::ostringstream msg;
    msg << "solve_H_root: bisection stalled with |H| = " << out.residual;
    throw NumericalError(msg.str());
  }
  return out;
}

BuiltData build_positive_energy_data(const ModelSpec& model, const SeedPair& pair, double K2,
                                     double c1_margin) {
  if (!(K2 > 0.0)) throw std::invalid_argument("build_positive_energy_data: K2 must be positive");
  if (!(c1_margin > 1.0)) throw std::invalid_argument("build_positive_energy_data: margin must exceed 1");
  BuiltData d;
  d.K2 = K2;
  d.theta = pair.theta;
  d.c1 = c1_margin * c1_threshold_alpha(pair.theta, K2, model.R0(), model.alpha());
  const HRoot root = solve_H_root(model, pair, d.c1, K2);
  d.c0 = root.c0;
  d.root_sign_changes = root.sign_changes;
  d.u0 = d.c0 * pair.u_hat0;
  d.u1 = d.c1 * pair.u_hat1;
  d.achieved_energy = energy(model, d.u0, d.u1);
  d.report = check_levine_conditions(model, d.u0, d.u1);
  if (!(std::abs(d.achieved_energy - K2) <= 1e-8 * std::max(1.0, K2))) {
    throw NumericalError("build_positive_energy_data: achieved energy misses the target");
  }
  if (!d.report.satisfied) {
    throw NumericalError("build_positive_energy_data: built data fail the growth conditions");
  }
  return d;
}

}  // namespace blowup
