#include "blowup/nonlinearity.hpp"

#include "blowup/rng.hpp"
#include "blowup/spd_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace blowup {
namespace {

// |s|^p with repeated multiplication for integral p, so that identities such
// as f(s)s = (p+2)Phi(s) hold bit-for-bit in the power case.
double abs_pow(double s, double p) {
  const double a = std::abs(s);
  if (p == std::floor(p) && p >= 0.0 && p <= 16.0) {
    double r = 1.0;
    for (int k = 0; k < static_cast<int>(p); ++k) r *= a;
    return r;
  }
  return std::pow(a, p);
}

double pow_int(double s, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= s;
  return r;
}

// Kirchhoff alpha: the quartic part is neutral at alpha = 1/2, the a_k terms
// then need a_k <= 0. With a positive a_k, alpha = 1/4 leaves room for a finite R0.
double kirchhoff_alpha(const KirchhoffParams& k, bool two_d) {
  const bool positive = k.a1 > 0.0 || (two_d && k.a2 > 0.0);
  return positive ? 0.25 : 0.5;
}

// min over I >= 0 of -2 alpha a I + b (1 - 2alpha)/2 I^2 equals -2 R0_k.
double kirchhoff_r0(const KirchhoffParams& k, bool two_d, double alpha) {
  auto term = [alpha](double a, double b) {
    if (a <= 0.0) return 0.0;
    if (alpha >= 0.5) return std::numeric_limits<double>::infinity();
    return alpha * alpha * a * a / ((1.0 - 2.0 * alpha) * b);
  };
  double r = term(k.a1, k.b1);
  if (two_d) r += term(k.a2, k.b2);
  return r;
}

}  // namespace

double PointwiseLaw::f(double s) const {
  double v = abs_pow(s, exponent) * s;
  for (std::size_t k = 0; k < lower.size(); ++k) v += lower[k] * pow_int(s, static_cast<int>(k));
  return v;
}

double PointwiseLaw::potential(double s) const {
  double v = abs_pow(s, exponent) * s * s / (exponent + 2.0);
  for (std::size_t k = 0; k < lower.size(); ++k) {
    v += lower[k] * pow_int(s, static_cast<int>(k) + 1) / static_cast<double>(k + 1);
  }
  return v;
}

double PointwiseLaw::margin(double s, double alpha) const {
  return f(s) * s - 2.0 * (1.0 + 2.0 * alpha) * potential(s);
}

R0Estimate pointwise_r0(const PointwiseLaw& law, double alpha, double s_lo, double s_hi) {
  if (!(s_hi > s_lo)) throw std::invalid_argument("pointwise_r0: empty range");
  constexpr int kSamples = 20001;
  const double step = (s_hi - s_lo) / (kSamples - 1);
  auto at = [&](int i) { return i == kSamples - 1 ? s_hi : s_lo + step * i; };

  int best = 0;
  double best_val = law.margin(at(0), alpha);
  double scale = std::abs(best_val);
  for (int i = 1; i < kSamples; ++i) {
    const double m = law.margin(at(i), alpha);
    scale = std::max(scale, std::abs(m));
    if (m < best_val) {
      best_val = m;
      best = i;
    }
  }

  R0Estimate out;
  out.s_lo = s_lo;
  out.s_hi = s_hi;
  out.argmin = at(best);
  out.min_margin = best_val;

  // Minimum pinned at a range end with a strict decrease toward it: the margin
  // is (numerically) unbounded below beyond the sampled range.
  const double tol = 1e-12 * std::max(1.0, scale);
  if (best == 0 && law.margin(at(1), alpha) > best_val + tol) out.finite = false;
  if (best == kSamples - 1 && law.margin(at(kSamples - 2), alpha) > best_val + tol) {
    out.finite = false;
  }

  if (best > 0 && best < kSamples - 1) {
    // Golden-section search on the bracketing cell pair.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = at(best - 1);
    double b = at(best + 1);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = law.margin(c, alpha);
    double fd = law.margin(d, alpha);
    for (int it = 0; it < 100 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = law.margin(c, alpha);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = law.margin(d, alpha);
      }
    }
    const double s = fc < fd ? c : d;
    const double v = std::min(fc, fd);
    if (v < out.min_margin) {
      out.min_margin = v;
      out.argmin = s;
    }
  }
  out.r0 = std::max(0.0, -out.min_margin);
  return out;
}

const char* to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::zero: return "zero";
    case NonlinearityKind::power: return "power";
    case NonlinearityKind::polynomial: return "polynomial";
    case NonlinearityKind::kirchhoff_plate: return "kirchhoff_plate";
    case NonlinearityKind::boundary_scalar: return "boundary_scalar";
  }
  return "unknown";
}

struct Nonlinearity::Directional {
  SparseMatrix d[2];
  bool two_d = false;
};

Nonlinearity Nonlinearity::zero() {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::zero;
  nl.alpha_ = 1.0;
  return nl;
}

Nonlinearity Nonlinearity::power(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("power nonlinearity: exponent must be positive");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::power;
  nl.law_ = PointwiseLaw{p, {}};
  nl.alpha_ = p / 4.0;
  nl.r0_ = 0.0;
  return nl;
}

Nonlinearity Nonlinearity::polynomial(int m, std::vector<double> lower, const DiscreteSpace& space,
                                      double s_range) {
  if (m < 1) throw std::invalid_argument("polynomial nonlinearity: order m must be >= 1");
  if (static_cast<int>(lower.size()) > m) {
    throw std::invalid_argument("polynomial nonlinearity: lower-order part has degree >= m");
  }
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::polynomial;
  nl.law_ = PointwiseLaw{static_cast<double>(m), std::move(lower)};
  nl.alpha_ = m / 4.0;
  const R0Estimate est = pointwise_r0(*nl.law_, nl.alpha_, -s_range, s_range);
  if (!est.finite) {
    std::ostringstream msg;
    msg << "polynomial nonlinearity: no finite r0 on [" << -s_range << ", " << s_range
        << "] (margin decreasing at s = " << est.argmin << ")";
    throw NumericalError(msg.str());
  }
  nl.pointwise_r0_ = est.r0;
  nl.r0_ = 0.5 * est.r0 * space.weights().sum();
  nl.bound_dim_ = space.dim();
  return nl;
}

Nonlinearity Nonlinearity::boundary_scalar(PointwiseLaw law, const DiscreteSpace& space,
                                           double s_range) {
  if (space.boundary_nodes().empty()) {
    throw std::invalid_argument("boundary_scalar nonlinearity: space has no free boundary nodes");
  }
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::boundary_scalar;
  nl.alpha_ = law.exponent / 4.0;
  const R0Estimate est = pointwise_r0(law, nl.alpha_, -s_range, s_range);
  if (!est.finite) throw NumericalError("boundary_scalar nonlinearity: no finite r0 on the range");
  nl.law_ = std::move(law);
  nl.pointwise_r0_ = est.r0;
  nl.r0_ = 0.5 * est.r0 * static_cast<double>(space.boundary_nodes().size());
  nl.bound_dim_ = space.dim();
  return nl;
}

Nonlinearity Nonlinearity::kirchhoff_plate(const SpacePtr& space, KirchhoffParams params,
                                           std::optional<PointwiseLaw> source, double s_range) {
  const bool two_d = space->kind() == SpaceKind::rectangle_2d;
  if (!(params.b1 > 0.0) || (two_d && !(params.b2 > 0.0))) {
    throw std::invalid_argument("kirchhoff_plate: b1, b2 must be positive");
  }
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::kirchhoff_plate;
  auto dir = std::make_shared<Directional>();
  dir->two_d = two_d;
  dir->d[0] = directional_stiffness_gram(*space, 0);
  if (two_d) dir->d[1] = directional_stiffness_gram(*space, 1);
  nl.directional_ = std::move(dir);
  nl.kirchhoff_ = params;
  nl.bound_dim_ = space->dim();

  double alpha = kirchhoff_alpha(params, two_d);
  if (source) alpha = std::min(alpha, source->exponent / 4.0);
  nl.alpha_ = alpha;
  nl.r0_ = kirchhoff_r0(params, two_d, alpha);
  if (source) {
    const R0Estimate est = pointwise_r0(*source, alpha, -s_range, s_range);
    if (!est.finite) throw NumericalError("kirchhoff_plate: source law has no finite r0 on the range");
    nl.pointwise_r0_ = est.r0;
    nl.r0_ += 0.5 * est.r0 * space->weights().sum();
    nl.law_ = std::move(source);
  }
  return nl;
}

Nonlinearity Nonlinearity::with_constants(double alpha, double r0) const {
  if (!(alpha > 0.0) || !(r0 >= 0.0)) throw std::invalid_argument("with_constants: need alpha > 0, R0 >= 0");
  Nonlinearity copy = *this;
  copy.alpha_ = alpha;
  copy.r0_ = r0;
  return copy;
}

double Nonlinearity::growth_exponent() const {
  double q = 0.0;
  if (law_) q = law_->exponent;
  if (kirchhoff_) q = std::max(q, 2.0);
  return q;
}

void Nonlinearity::check_space(const DiscreteSpace& space, const Vector& u) const {
  require_dim(u.size(), space.dim(), "nonlinearity");
  if (bound_dim_ >= 0 && bound_dim_ != space.dim()) {
    throw DimensionError(std::string(to_string(kind_)) + " nonlinearity was built for a different space");
  }
}

Vector Nonlinearity::eval_F(const DiscreteSpace& space, const Vector& u) const {
  check_space(space, u);
  Vector out = Vector::Zero(u.size());
  switch (kind_) {
    case NonlinearityKind::zero:
      return out;
    case NonlinearityKind::power:
    case NonlinearityKind::polynomial:
      for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = law_->f(u[i]);
      return out;
    case NonlinearityKind::boundary_scalar:
      // Boundary points carry unit measure; dividing by w_b makes F the
      // gradient of G in the weighted inner product.
      for (int b : space.boundary_nodes()) out[b] = law_->f(u[b]) / space.weights()[b];
      return out;
    case NonlinearityKind::kirchhoff_plate: {
      const Vector& w = space.weights();
      const KirchhoffParams& k = *kirchhoff_;
      const int terms = directional_->two_d ? 2 : 1;
      for (int d = 0; d < terms; ++d) {
        const Vector du = directional_->d[d] * u;
        const double integral = u.dot(du);
        const double coef = d == 0 ? k.a1 + k.b1 * integral : k.a2 + k.b2 * integral;
        out += coef * du.cwiseQuotient(w);
      }
      if (law_) {
        for (Eigen::Index i = 0; i < u.size(); ++i) out[i] += law_->f(u[i]);
      }
      return out;
    }
  }
  return out;
}

double Nonlinearity::eval_G(const DiscreteSpace& space, const Vector& u) const {
  check_space(space, u);
  const Vector& w = space.weights();
  switch (kind_) {
    case NonlinearityKind::zero:
      return 0.0;
    case NonlinearityKind::power:
    case NonlinearityKind::polynomial: {
      double g = 0.0;
      for (Eigen::Index i = 0; i < u.size(); ++i) g += w[i] * law_->potential(u[i]);
      return g;
    }
    case NonlinearityKind::boundary_scalar: {
      double g = 0.0;
      for (int b : space.boundary_nodes()) g += law_->potential(u[b]);
      return g;
    }
    case NonlinearityKind::kirchhoff_plate: {
      const KirchhoffParams& k = *kirchhoff_;
      double g = 0.0;
      const int terms = directional_->two_d ? 2 : 1;
      for (int d = 0; d < terms; ++d) {
        const double integral = u.dot(directional_->d[d] * u);
        const double a = d == 0 ? k.a1 : k.a2;
        const double b = d == 0 ? k.b1 : k.b2;
        g += 0.5 * a * integral + 0.25 * b * integral * integral;
      }
      if (law_) {
        for (Eigen::Index i = 0; i < u.size(); ++i) g += w[i] * law_->potential(u[i]);
      }
      return g;
    }
  }
  return 0.0;
}

FgCertificate certify_FG(const Nonlinearity& nl, const DiscreteSpace& space, int n_samples,
                         double amp_lo, double amp_hi, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("certify_FG: n_samples must be >= 1");
  if (!(amp_hi >= amp_lo) || !(amp_lo >= 0.0)) throw std::invalid_argument("certify_FG: bad amplitude range");
  const int n = space.dim();
  const double c = 2.0 * (1.0 + 2.0 * nl.alpha());
  FgCertificate cert;
  cert.worst_margin = std::numeric_limits<double>::infinity();

  auto probe = [&](const Vector& v) {
    const double fv = inner(space, nl.eval_F(space, v), v);
    const double g = nl.eval_G(space, v);
    const double m = fv - c * g + 2.0 * nl.R0();
    const double scale = std::abs(fv) + c * std::abs(g) + 2.0 * nl.R0();
    ++cert.samples;
    if (m < -1e-9 * std::max(1.0, scale)) cert.verified = false;
    if (m < cert.worst_margin) {
      cert.worst_margin = m;
      cert.worst_scale = scale;
      cert.witness = v;
    }
  };

  // Deterministic probes over a geometric amplitude ladder.
  std::vector<double> amps;
  const double lo = std::max(amp_lo, 1e-12);
  for (int k = 0; k <= 8; ++k) amps.push_back(lo * std::pow(amp_hi / lo, k / 8.0));
  const double two_pi = 2.0 * std::numbers::pi;
  for (double a : amps) {
    for (double sign : {1.0, -1.0}) {
      probe(Vector::Constant(n, sign * a));
      for (int mode = 1; mode <= 3; ++mode) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = sign * a * std::sin(mode * std::numbers::pi * space.x(i) / space.lx());
        probe(v);
      }
      for (int b : space.boundary_nodes()) {
        Vector v = Vector::Zero(n);
        v[b] = sign * a;
        probe(v);
      }
    }
  }

  Rng rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    const double a = amp_lo > 0.0 ? rng.log_uniform(amp_lo, amp_hi) : rng.uniform(amp_lo, amp_hi);
    Vector v(n);
    if (s % 2 == 0) {
      for (int i = 0; i < n; ++i) v[i] = a * rng.uniform(-1.0, 1.0);
    } else {
      const double phase = rng.uniform(0.0, two_pi);
      const double freq = rng.uniform(0.5, 4.0);
      const double offset = rng.uniform(-0.5, 0.5);
      for (int i = 0; i < n; ++i) v[i] = a * (offset + std::sin(phase + freq * two_pi * space.x(i) / space.lx()));
    }
    probe(v);
  }
  return cert;
}

}  // namespace blowup
