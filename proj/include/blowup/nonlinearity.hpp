#pragma once

#include "blowup/space.hpp"
#include "blowup/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace blowup {

/// Scalar law f(s) = |s|^p s + sum_k c_k s^k with potential
/// Phi(s) = |s|^{p+2}/(p+2) + sum_k c_k s^{k+1}/(k+1).
struct PointwiseLaw {
  double exponent = 2.0;
  std::vector<double> lower;  // c_0, c_1, ... (the P_{m-1} part)

  double f(double s) const;
  double potential(double s) const;
  /// f(s) s - 2(1 + 2 alpha) Phi(s)
  double margin(double s, double alpha) const;
};

struct R0Estimate {
  double r0 = 0.0;          // max(0, -min margin) on the sampled range
  double min_margin = 0.0;
  double argmin = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  bool finite = true;  // false when the margin keeps decreasing at a range end
};

/// Smallest r0 >= 0 with f(s)s - 2(1+2alpha)F(s) >= -r0 on [s_lo, s_hi],
/// by dense sampling plus golden-section refinement around the best sample.
R0Estimate pointwise_r0(const PointwiseLaw& law, double alpha, double s_lo, double s_hi);

enum class NonlinearityKind { zero, power, polynomial, kirchhoff_plate, boundary_scalar };

const char* to_string(NonlinearityKind kind);

struct KirchhoffParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 1.0;
  double b2 = 1.0;
};

/// Gradient operator F with potential G in the space inner product, plus the
/// constants (alpha, R0) of the superlinearity condition
/// (F(v), v) >= 2(1 + 2 alpha) G(v) - 2 R0.
class Nonlinearity {
 public:
  static Nonlinearity zero();
  /// F(u) = |u|^p u, alpha = p/4, R0 = 0.
  static Nonlinearity power(double p);
  /// f(u) = |u|^m u + P_{m-1}(u), alpha = m/4, R0 from pointwise_r0 on
  /// [-s_range, s_range]. Throws NumericalError when no finite r0 exists there.
  static Nonlinearity polynomial(int m, std::vector<double> lower, const DiscreteSpace& space,
                                 double s_range = 100.0);
  /// Flux nonlinearity of the wave equation with du/dn = f(u) on the free
  /// boundary nodes: G(u) = sum_b F(u_b), F(u) = f(u_b)/w_b at those nodes.
  static Nonlinearity boundary_scalar(PointwiseLaw law, const DiscreteSpace& space,
                                      double s_range = 100.0);
  /// Kirchhoff terms (a_k + b_k int u_{x_k}^2)(-u_{x_k x_k}) moved to the right-hand
  /// side, optionally plus a pointwise source law. Only the x1 term is used in 1D.
  static Nonlinearity kirchhoff_plate(const SpacePtr& space, KirchhoffParams params,
                                      std::optional<PointwiseLaw> source = std::nullopt,
                                      double s_range = 100.0);

  /// Same operator with different structural constants (for falsification runs).
  Nonlinearity with_constants(double alpha, double r0) const;

  NonlinearityKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double R0() const { return r0_; }
  /// Pointwise r0 of the scalar law (0 when there is none).
  double pointwise_r0_value() const { return pointwise_r0_; }
  const std::optional<PointwiseLaw>& law() const { return law_; }
  const std::optional<KirchhoffParams>& kirchhoff() const { return kirchhoff_; }
  bool is_zero() const { return kind_ == NonlinearityKind::zero; }
  /// Exponent q with |F(u)| ~ |u|^{q+1}; drives step-size adaptation.
  double growth_exponent() const;

  Vector eval_F(const DiscreteSpace& space, const Vector& u) const;
  double eval_G(const DiscreteSpace& space, const Vector& u) const;

 private:
  struct Directional;  // cached Kirchhoff Gram matrices
  void check_space(const DiscreteSpace& space, const Vector& u) const;

  NonlinearityKind kind_ = NonlinearityKind::zero;
  double alpha_ = 1.0;
  double r0_ = 0.0;
  double pointwise_r0_ = 0.0;
  std::optional<PointwiseLaw> law_;
  std::optional<KirchhoffParams> kirchhoff_;
  std::shared_ptr<const Directional> directional_;
  int bound_dim_ = -1;  // -1: usable on any space
};

inline Vector eval_F(const Nonlinearity& nl, const DiscreteSpace& space, const Vector& u) {
  return nl.eval_F(space, u);
}
inline double eval_G(const Nonlinearity& nl, const DiscreteSpace& space, const Vector& u) {
  return nl.eval_G(space, u);
}

struct FgCertificate {
  bool verified = true;
  double worst_margin = 0.0;  // min of (F(v),v) - 2(1+2 alpha)G(v) + 2 R0
  double worst_scale = 0.0;   // magnitude of the terms at the worst sample
  Vector witness;
  int samples = 0;
};

/// Sampling falsifier for the superlinearity condition: random fields with
/// amplitudes drawn across [amp_lo, amp_hi] plus deterministic probes
/// (constants, single sine modes, boundary spikes). Can refute, never prove.
FgCertificate certify_FG(const Nonlinearity& nl, const DiscreteSpace& space, int n_samples,
                         double amp_lo, double amp_hi, std::uint64_t seed);

}  // namespace blowup
