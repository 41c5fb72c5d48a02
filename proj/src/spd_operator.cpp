#include "blowup/spd_operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <vector>

namespace blowup {
namespace {

using Ldlt = Eigen::SimplicialLDLT<SparseMatrix>;

// Dense eigenvalue check is affordable up to this size; above it positive
// pivots of the LDL^T factorization are the certificate.
constexpr int kDenseSpdCheckMax = 256;

SparseMatrix symmetrized(const SparseMatrix& m) {
  SparseMatrix t = m.transpose();
  SparseMatrix s = 0.5 * (m + t);
  s.prune(0.0);
  s.makeCompressed();
  return s;
}

std::unique_ptr<Ldlt> factor_spd(const SparseMatrix& gram, const std::string& label) {
  auto f = std::make_unique<Ldlt>(gram);
  if (f->info() != Eigen::Success) {
    throw NumericalError("operator '" + label + "': factorization failed (singular matrix)");
  }
  if ((f->vectorD().array() <= 0.0).any()) {
    throw NumericalError("operator '" + label + "': matrix is not positive definite");
  }
  return f;
}

}  // namespace

struct SpdOperator::Impl {
  SpacePtr space;
  std::string label;
  bool is_explicit = true;
  bool is_identity = false;
  Eigen::SparseMatrix<double, Eigen::RowMajor> mat;  // explicit: W^{-1} S, for apply
  SparseMatrix gram;          // explicit: S = W M; inverse_shifted: S of the base
  std::unique_ptr<Ldlt> ldlt;  // factorization of `gram`
  double shift = 0.0;
  std::unique_ptr<Ldlt> shifted_ldlt;  // factorization of W + shift * gram
};

SpdOperator SpdOperator::from_gram(SpacePtr space, SparseMatrix gram, std::string label) {
  const int n = space->dim();
  if (gram.rows() != n || gram.cols() != n) {
    throw DimensionError("operator '" + label + "': Gram matrix size does not match space");
  }
  gram.makeCompressed();
  const SparseMatrix t = gram.transpose();
  if ((gram - t).norm() != 0.0) {
    throw NumericalError("operator '" + label + "': Gram matrix is not symmetric");
  }
  auto impl = std::make_shared<Impl>();
  impl->space = std::move(space);
  impl->label = std::move(label);
  impl->ldlt = factor_spd(gram, impl->label);
  if (n <= kDenseSpdCheckMax) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix(gram), Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
      throw NumericalError("operator '" + impl->label + "': smallest eigenvalue is not positive");
    }
  }
  const Vector inv_w = impl->space->weights().cwiseInverse();
  impl->mat = inv_w.asDiagonal() * gram;
  impl->mat.makeCompressed();
  impl->gram = std::move(gram);
  return SpdOperator(std::move(impl));
}

SpdOperator SpdOperator::identity(SpacePtr space) {
  const int n = space->dim();
  SparseMatrix w(n, n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n);
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, space->weights()[i]);
  w.setFromTriplets(trip.begin(), trip.end());
  SpdOperator op = from_gram(std::move(space), std::move(w), "identity");
  std::const_pointer_cast<Impl>(op.impl_)->is_identity = true;
  return op;
}

SpdOperator SpdOperator::inverse_shifted(const SpdOperator& base, double shift, std::string label) {
  if (!base.is_explicit()) throw std::invalid_argument("inverse_shifted: base must be explicit");
  if (!(shift >= 0.0)) throw std::invalid_argument("inverse_shifted: shift must be >= 0");
  auto impl = std::make_shared<Impl>();
  impl->space = base.space_ptr();
  impl->label = std::move(label);
  impl->is_explicit = false;
  impl->gram = base.impl_->gram;
  impl->ldlt = factor_spd(impl->gram, impl->label);
  impl->shift = shift;
  if (shift > 0.0) {
    SparseMatrix m = shift * impl->gram;
    for (int i = 0; i < m.rows(); ++i) m.coeffRef(i, i) += impl->space->weights()[i];
    impl->shifted_ldlt = factor_spd(m, impl->label);
  }
  return SpdOperator(std::move(impl));
}

Vector SpdOperator::apply(const Vector& v) const {
  require_dim(v.size(), dim(), "op_apply");
  if (impl_->is_identity) return v;
  if (impl_->is_explicit) return impl_->mat * v;
  const Vector& w = impl_->space->weights();
  Vector x = impl_->ldlt->solve(w.cwiseProduct(v));
  if (impl_->shift != 0.0) x += impl_->shift * v;
  return x;
}

Vector SpdOperator::solve(const Vector& rhs) const {
  require_dim(rhs.size(), dim(), "op_solve");
  if (impl_->is_identity) return rhs;
  const Vector& w = impl_->space->weights();
  if (impl_->is_explicit) return impl_->ldlt->solve(w.cwiseProduct(rhs));
  // (B^{-1} + a I) x = r  <=>  (W + a S_B) x = S_B r
  Vector sr = impl_->gram * rhs;
  if (impl_->shift == 0.0) return sr.cwiseQuotient(w);
  return impl_->shifted_ldlt->solve(sr);
}

double SpdOperator::quad_form(const Vector& v) const {
  require_dim(v.size(), dim(), "quad_form");
  if (impl_->is_identity) return inner(*impl_->space, v, v);
  if (impl_->is_explicit) return v.dot(impl_->gram * v);
  return inner(*impl_->space, apply(v), v);
}

const DiscreteSpace& SpdOperator::space() const { return *impl_->space; }
const SpacePtr& SpdOperator::space_ptr() const { return impl_->space; }
const std::string& SpdOperator::label() const { return impl_->label; }
int SpdOperator::dim() const { return impl_->space->dim(); }
bool SpdOperator::is_explicit() const { return impl_->is_explicit; }

const SparseMatrix& SpdOperator::gram() const {
  if (!impl_->is_explicit) throw std::logic_error("gram(): operator '" + impl_->label + "' is implicit");
  return impl_->gram;
}

DenseMatrix SpdOperator::dense_gram() const {
  if (impl_->is_explicit) return DenseMatrix(impl_->gram);
  const Vector& w = impl_->space->weights();
  const int n = dim();
  DenseMatrix winv_cols = DenseMatrix(w.asDiagonal());
  DenseMatrix x = impl_->ldlt->solve(winv_cols);  // S_B^{-1} W
  DenseMatrix g = w.asDiagonal() * x;
  for (int i = 0; i < n; ++i) g(i, i) += impl_->shift * w[i];
  return 0.5 * (g + g.transpose());
}

DenseMatrix SpdOperator::dense_matrix() const {
  const Vector& w = impl_->space->weights();
  return w.cwiseInverse().asDiagonal() * dense_gram();
}

SparseMatrix directional_stiffness_gram(const DiscreteSpace& space, int direction) {
  const int n = space.dim();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * static_cast<std::size_t>(n));
  // Each grid edge contributes coef * (e_i - e_j)(e_i - e_j)^T; edges to an
  // eliminated Dirichlet node keep only the e_i e_i^T part.
  auto edge = [&trip](int i, int j, double coef) {
    if (i >= 0) trip.emplace_back(i, i, coef);
    if (j >= 0) trip.emplace_back(j, j, coef);
    if (i >= 0 && j >= 0) {
      trip.emplace_back(i, j, -coef);
      trip.emplace_back(j, i, -coef);
    }
  };
  if (space.kind() == SpaceKind::interval_1d) {
    if (direction != 0) return SparseMatrix(n, n);
    const double c = 1.0 / space.hx();
    if (space.left() == EndCondition::dirichlet) edge(-1, 0, c);
    for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, c);
    if (space.right() == EndCondition::dirichlet) edge(n - 1, -1, c);
  } else {
    const int nx = space.nx();
    const int ny = space.ny();
    auto idx = [nx](int i, int j) { return i + nx * j; };
    if (direction == 0) {
      const double c = space.hy() / space.hx();
      for (int j = 0; j < ny; ++j) {
        edge(-1, idx(0, j), c);
        for (int i = 0; i + 1 < nx; ++i) edge(idx(i, j), idx(i + 1, j), c);
        edge(idx(nx - 1, j), -1, c);
      }
    } else {
      const double c = space.hx() / space.hy();
      for (int i = 0; i < nx; ++i) {
        edge(-1, idx(i, 0), c);
        for (int j = 0; j + 1 < ny; ++j) edge(idx(i, j), idx(i, j + 1), c);
        edge(idx(i, ny - 1), -1, c);
      }
    }
  }
  SparseMatrix k(n, n);
  k.setFromTriplets(trip.begin(), trip.end());
  k.makeCompressed();
  return k;
}

SparseMatrix stiffness_gram(const DiscreteSpace& space) {
  SparseMatrix k = directional_stiffness_gram(space, 0);
  if (space.kind() == SpaceKind::rectangle_2d) k += directional_stiffness_gram(space, 1);
  k.makeCompressed();
  return k;
}

SpdOperator build_laplacian(const SpacePtr& space) {
  return SpdOperator::from_gram(space, stiffness_gram(*space), "laplacian");
}

SpdOperator build_bilaplacian(const SpacePtr& space) {
  const SparseMatrix k = stiffness_gram(*space);
  const Vector winv = space->weights().cwiseInverse();
  SparseMatrix scaled = winv.asDiagonal() * k;
  SparseMatrix g = k * scaled;
  return SpdOperator::from_gram(space, symmetrized(g), "bilaplacian");
}

}  // namespace blowup
