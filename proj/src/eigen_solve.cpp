#include "blowup/eigen_solve.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace blowup {
namespace {

void check_pair(const SpdOperator& a, const SpdOperator& p) {
  if (a.dim() != p.dim()) {
    throw DimensionError("generalized eigenproblem: operators live on different spaces");
  }
}

// Power-iteration estimate of the operator norm in the weighted inner product.
double norm_estimate(const SpdOperator& op, const Vector& start) {
  Vector x = start / norm(op.space(), start);
  double est = 0.0;
  for (int it = 0; it < 40; ++it) {
    Vector y = op.apply(x);
    est = norm(op.space(), y);
    if (!(est > 0.0)) return 0.0;
    x = y / est;
  }
  return est;
}

// Normalized backward error |Av - lambda Pv| / ((|A| + |lambda| |P|) |v|).
double residual_of(const SpdOperator& a, const SpdOperator& p, const Vector& v, double lambda,
                   double a_norm, double p_norm) {
  const Vector r = a.apply(v) - lambda * p.apply(v);
  return norm(a.space(), r) / ((a_norm + std::abs(lambda) * p_norm) * norm(a.space(), v));
}

// Deterministic smooth start vector with no symmetry that could make it
// orthogonal to the wanted mode.
Vector start_vector(const DiscreteSpace& space) {
  Vector v(space.dim());
  for (int i = 0; i < space.dim(); ++i) v[i] = 1.0 + 0.1 * std::sin(1.0 + 0.37 * i);
  return v;
}

}  // namespace

GeneralizedEigResult min_generalized_eig(const SpdOperator& a, const SpdOperator& p,
                                         const EigSolveOptions& opts) {
  check_pair(a, p);
  Vector probe = start_vector(a.space());
  for (int i = 0; i < a.dim(); ++i) probe[i] += (i % 2 ? 0.5 : -0.5);
  const double a_norm = norm_estimate(a, probe);
  const double p_norm = norm_estimate(p, probe);
  auto residual = [&](const Vector& v, double lambda) { return residual_of(a, p, v, lambda, a_norm, p_norm); };
  GeneralizedEigResult out;
  if (a.dim() <= opts.dense_max) {
    Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(a.dense_gram(), p.dense_gram());
    if (es.info() != Eigen::Success) throw NumericalError("min_generalized_eig: dense solve failed");
    out.a0 = es.eigenvalues()[0];
    Vector v = es.eigenvectors().col(0);
    v /= std::sqrt(p.quad_form(v));
    out.eigvec = std::move(v);
    out.residual = residual(out.eigvec, out.a0);
  } else {
    // x <- A^{-1} P x, normalized in the P-norm; Rayleigh quotient as estimate.
    Vector x = start_vector(a.space());
    x /= std::sqrt(p.quad_form(x));
    double lambda = a.quad_form(x);
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
      x = a.solve(p.apply(x));
      x /= std::sqrt(p.quad_form(x));
      lambda = a.quad_form(x);
      if (residual(x, lambda) <= opts.tolerance) break;
    }
    out.a0 = lambda;
    out.eigvec = std::move(x);
    out.residual = residual(out.eigvec, out.a0);
    out.iterations = it;
  }
  if (!(out.a0 > 0.0) || !(out.residual <= opts.tolerance)) {
    std::ostringstream msg;
    msg << "min_generalized_eig: did not converge (a0 = " << out.a0 << ", residual = " << out.residual
        << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

double max_generalized_eig(const SpdOperator& a, const SpdOperator& p, const EigSolveOptions& opts) {
  check_pair(a, p);
  if (a.dim() <= opts.dense_max) {
    Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(a.dense_gram(), p.dense_gram(),
                                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("max_generalized_eig: dense solve failed");
    return es.eigenvalues()[a.dim() - 1];
  }
  if (a.is_explicit() && p.is_explicit() && p.gram().nonZeros() == p.dim()) {
    // Diagonal P: Gershgorin bound on W_P^{-1} S_A is a guaranteed upper estimate.
    const SparseMatrix& sa = a.gram();
    const SparseMatrix& sp = p.gram();
    double bound = 0.0;
    for (int j = 0; j < sa.outerSize(); ++j) {
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(sa, j); it; ++it) row += std::abs(it.value());
      bound = std::max(bound, row / sp.coeff(j, j));
    }
    return bound;
  }
  Vector x = start_vector(a.space());
  for (int i = 0; i < a.dim(); ++i) x[i] += (i % 2 ? 0.5 : -0.5);
  double lambda = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    x = p.solve(a.apply(x));
    x /= std::sqrt(p.quad_form(x));
    const double next = a.quad_form(x);
    if (std::abs(next - lambda) <= 1e-10 * next) break;
    lambda = next;
  }
  // The Rayleigh quotient approaches the top of the spectrum from below.
  return 1.1 * lambda;
}

}  // namespace blowup
