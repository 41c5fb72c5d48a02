#pragma once

#include "blowup/spd_operator.hpp"

namespace blowup {

struct GeneralizedEigResult {
  double a0 = 0.0;  // min over v != 0 of (Av,v)/(Pv,v)
  Vector eigvec;    // normalized to (P v, v) = 1
  double residual = 0.0;  // |Av - a0 Pv| / ((|A| + a0 |P|) |v|)
  int iterations = 0;     // 0 for the dense path
};

struct EigSolveOptions {
  int dense_max = 512;
  int max_iterations = 5000;
  double tolerance = 1e-8;
};

/// Smallest eigenvalue of A v = lambda P v. Dense generalized solve for
/// dim <= dense_max, inverse iteration with P-normalization above.
/// Throws NumericalError on non-convergence.
GeneralizedEigResult min_generalized_eig(const SpdOperator& a, const SpdOperator& p,
                                         const EigSolveOptions& opts = {});

/// Largest eigenvalue of A v = lambda P v. Exact (dense) up to dense_max;
/// above it an upper estimate (Gershgorin for diagonal P, padded power
/// iteration otherwise). Only used for explicit time-step limits.
double max_generalized_eig(const SpdOperator& a, const SpdOperator& p,
                           const EigSolveOptions& opts = {});

}  // namespace blowup
