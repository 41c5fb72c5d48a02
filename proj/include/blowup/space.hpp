#pragma once

#include "blowup/types.hpp"

#include <memory>
#include <vector>

namespace blowup {

enum class SpaceKind { interval_1d, rectangle_2d };

// How an interval endpoint is treated: eliminated (u = 0) or kept as an
// unknown carrying half a cell of quadrature weight.
enum class EndCondition { dirichlet, free };

/// Uniform finite-difference grid with a diagonal (trapezoid) quadrature.
///
/// Only unknowns are stored. Dirichlet boundary nodes are eliminated; their
/// trapezoid weight is kept in `eliminated_weight()` so that
/// sum(weights) + eliminated_weight == measure.
class DiscreteSpace {
 public:
  /// n interior nodes on (0, L), homogeneous Dirichlet at both ends, h = L/(n+1).
  static std::shared_ptr<const DiscreteSpace> interval(double length, int n);

  /// n unknowns on [0, L] with the given end treatment. Free ends carry a
  /// node on the boundary with weight h/2.
  static std::shared_ptr<const DiscreteSpace> interval_with_ends(double length, int n,
                                                                 EndCondition left,
                                                                 EndCondition right);

  /// nx*ny interior nodes on (0,Lx)x(0,Ly), Dirichlet on the whole boundary.
  /// Node (i, j) has index i + nx*j.
  static std::shared_ptr<const DiscreteSpace> rectangle(double lx, double ly, int nx, int ny);

  /// A single unknown with unit weight; used for scalar ODE instances.
  static std::shared_ptr<const DiscreteSpace> point();

  SpaceKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(weights_.size()); }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  EndCondition left() const { return left_; }
  EndCondition right() const { return right_; }

  const Vector& weights() const { return weights_; }
  double measure() const { return kind_ == SpaceKind::interval_1d ? lx_ : lx_ * ly_; }
  double eliminated_weight() const { return eliminated_weight_; }

  /// Unknowns that sit on the boundary (free ends only).
  const std::vector<int>& boundary_nodes() const { return boundary_nodes_; }
  /// |dOmega|: endpoint count in 1D, perimeter in 2D.
  double boundary_measure() const { return boundary_measure_; }
  /// Unknowns adjacent to an eliminated Dirichlet wall.
  const std::vector<int>& wall_adjacent_nodes() const { return wall_adjacent_; }

  /// Coordinate of node i along x (and y for rectangles).
  double x(int node) const;
  double y(int node) const;

 private:
  DiscreteSpace() = default;

  SpaceKind kind_ = SpaceKind::interval_1d;
  int nx_ = 0;
  int ny_ = 1;
  double lx_ = 0.0;
  double ly_ = 0.0;
  double hx_ = 0.0;
  double hy_ = 0.0;
  double x0_ = 0.0;  // coordinate of the first unknown
  EndCondition left_ = EndCondition::dirichlet;
  EndCondition right_ = EndCondition::dirichlet;
  Vector weights_;
  double eliminated_weight_ = 0.0;
  std::vector<int> boundary_nodes_;
  std::vector<int> wall_adjacent_;
  double boundary_measure_ = 0.0;
};

using SpacePtr = std::shared_ptr<const DiscreteSpace>;

/// Discrete L2 inner product sum_i w_i x_i y_i.
double inner(const DiscreteSpace& space, const Vector& x, const Vector& y);

/// sqrt(inner(x, x)).
double norm(const DiscreteSpace& space, const Vector& x);

}  // namespace blowup
