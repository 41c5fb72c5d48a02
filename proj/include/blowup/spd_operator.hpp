#pragma once

#include "blowup/space.hpp"
#include "blowup/types.hpp"

#include <memory>
#include <string>

namespace blowup {

/// Symmetric positive-definite operator on a DiscreteSpace.
///
/// An operator M is stored through its Gram matrix S = W M, where W is the
/// diagonal quadrature, so that (Mx, y) = x^T S y. S is assembled exactly
/// symmetric. Two representations exist:
///   - explicit: S is a sparse matrix, apply is W^{-1} S v;
///   - inverse_shifted: M = B^{-1} + shift*I for an explicit B, applied
///     through a cached factorization of B and never formed densely.
/// Factorizations are computed on construction; the object is immutable and
/// cheap to copy.
class SpdOperator {
 public:
  /// Wraps a symmetric Gram matrix. Throws NumericalError if not positive definite.
  static SpdOperator from_gram(SpacePtr space, SparseMatrix gram, std::string label);
  static SpdOperator identity(SpacePtr space);
  /// base^{-1} + shift*I, shift >= 0. `base` must be explicit.
  static SpdOperator inverse_shifted(const SpdOperator& base, double shift, std::string label);

  Vector apply(const Vector& v) const;
  /// Returns x with M x = rhs.
  Vector solve(const Vector& rhs) const;
  /// (Mv, v) in the space inner product.
  double quad_form(const Vector& v) const;

  const DiscreteSpace& space() const;
  const SpacePtr& space_ptr() const;
  const std::string& label() const;
  int dim() const;
  bool is_explicit() const;

  /// Gram matrix of an explicit operator. Throws for inverse_shifted.
  const SparseMatrix& gram() const;
  /// Dense W M (forms the inverse for inverse_shifted; meant for small n).
  DenseMatrix dense_gram() const;
  /// Dense M.
  DenseMatrix dense_matrix() const;

 private:
  struct Impl;
  explicit SpdOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Dirichlet Gram stiffness of -Laplacian on the space; free interval ends get
/// the natural (ghost-point) boundary row. Positive semidefinite in general.
SparseMatrix stiffness_gram(const DiscreteSpace& space);

/// Gram stiffness of -d^2/dx_k^2 alone (k = 0 for x, 1 for y), Dirichlet.
SparseMatrix directional_stiffness_gram(const DiscreteSpace& space, int direction);

/// Second-order central-difference -Laplacian.
SpdOperator build_laplacian(const SpacePtr& space);
/// Square of the Dirichlet Laplacian (boundary conditions u = Lap u = 0).
SpdOperator build_bilaplacian(const SpacePtr& space);

inline Vector op_apply(const SpdOperator& op, const Vector& v) { return op.apply(v); }
inline Vector op_solve(const SpdOperator& op, const Vector& rhs) { return op.solve(rhs); }
inline double quad_form(const SpdOperator& op, const Vector& v) { return op.quad_form(v); }

}  // namespace blowup
