#include "blowup/space.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {

std::shared_ptr<const DiscreteSpace> DiscreteSpace::interval(double length, int n) {
  return interval_with_ends(length, n, EndCondition::dirichlet, EndCondition::dirichlet);
}

std::shared_ptr<const DiscreteSpace> DiscreteSpace::interval_with_ends(double length, int n,
                                                                       EndCondition left,
                                                                       EndCondition right) {
  if (!(length > 0.0)) throw std::invalid_argument("interval: length must be positive");
  const int free_ends = (left == EndCondition::free) + (right == EndCondition::free);
  // Cells = unknowns + eliminated ends - 1.
  const int cells = n + (2 - free_ends) - 1;
  if (n < 1 || cells < 1) throw std::invalid_argument("interval: too few nodes");

  auto s = std::shared_ptr<DiscreteSpace>(new DiscreteSpace());
  s->kind_ = SpaceKind::interval_1d;
  s->nx_ = n;
  s->ny_ = 1;
  s->lx_ = length;
  s->hx_ = length / cells;
  s->hy_ = 1.0;
  s->left_ = left;
  s->right_ = right;
  s->x0_ = left == EndCondition::free ? 0.0 : s->hx_;
  s->weights_ = Vector::Constant(n, s->hx_);
  s->boundary_measure_ = 2.0;
  if (left == EndCondition::free) {
    s->weights_[0] = 0.5 * s->hx_;
    s->boundary_nodes_.push_back(0);
  } else {
    s->eliminated_weight_ += 0.5 * s->hx_;
    s->wall_adjacent_.push_back(0);
  }
  if (right == EndCondition::free) {
    s->weights_[n - 1] = 0.5 * s->hx_;
    s->boundary_nodes_.push_back(n - 1);
  } else {
    s->eliminated_weight_ += 0.5 * s->hx_;
    if (n - 1 != 0 || left == EndCondition::free) s->wall_adjacent_.push_back(n - 1);
  }
  return s;
}

std::shared_ptr<const DiscreteSpace> DiscreteSpace::rectangle(double lx, double ly, int nx,
                                                              int ny) {
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("rectangle: lengths must be positive");
  if (nx < 1 || ny < 1) throw std::invalid_argument("rectangle: too few nodes");
  auto s = std::shared_ptr<DiscreteSpace>(new DiscreteSpace());
  s->kind_ = SpaceKind::rectangle_2d;
  s->nx_ = nx;
  s->ny_ = ny;
  s->lx_ = lx;
  s->ly_ = ly;
  s->hx_ = lx / (nx + 1);
  s->hy_ = ly / (ny + 1);
  s->x0_ = s->hx_;
  const double w = s->hx_ * s->hy_;
  s->weights_ = Vector::Constant(static_cast<Eigen::Index>(nx) * ny, w);
  s->eliminated_weight_ = lx * ly - static_cast<double>(nx) * ny * w;
  s->boundary_measure_ = 2.0 * (lx + ly);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) s->wall_adjacent_.push_back(i + nx * j);
    }
  }
  return s;
}

std::shared_ptr<const DiscreteSpace> DiscreteSpace::point() {
  auto s = std::shared_ptr<DiscreteSpace>(new DiscreteSpace());
  s->kind_ = SpaceKind::interval_1d;
  s->nx_ = 1;
  s->lx_ = 1.0;
  s->hx_ = 1.0;
  s->hy_ = 1.0;
  s->x0_ = 0.5;
  s->weights_ = Vector::Ones(1);
  return s;
}

double DiscreteSpace::x(int node) const {
  return x0_ + hx_ * (kind_ == SpaceKind::rectangle_2d ? node % nx_ : node);
}

double DiscreteSpace::y(int node) const {
  return kind_ == SpaceKind::rectangle_2d ? hy_ * (1 + node / nx_) : 0.0;
}

double inner(const DiscreteSpace& space, const Vector& x, const Vector& y) {
  require_dim(x.size(), space.dim(), "inner");
  require_dim(y.size(), space.dim(), "inner");
  return (space.weights().array() * x.array() * y.array()).sum();
}

double norm(const DiscreteSpace& space, const Vector& x) { return std::sqrt(inner(space, x, x)); }

}  // namespace blowup
