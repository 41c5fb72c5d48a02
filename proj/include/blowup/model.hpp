#pragma once

#include "blowup/eigen_solve.hpp"
#include "blowup/nonlinearity.hpp"
#include "blowup/spd_operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blowup {

enum class ModelKind { klein_gordon, boussinesq, plate, nonlinear_boundary, scalar_ode };
enum class BoundarySplit { both_ends, right_end_only };

const char* to_string(ModelKind kind);
const char* to_string(BoundarySplit split);

/// Grid description shared by the factories: an interval (dims = 1) or a
/// rectangle (dims = 2), Dirichlet on the whole boundary.
struct Geometry {
  int dims = 1;
  double lx = 1.0;
  double ly = 1.0;
  int nx = 63;
  int ny = 1;
};

struct ModelParams {
  // Klein-Gordon
  double mass = 0.0;
  double exponent = 0.0;
  // Boussinesq
  double a = 0.0;
  double nu = 0.0;
  int order = 0;
  std::vector<double> poly;
  // Plate
  std::optional<KirchhoffParams> kirchhoff;
  std::optional<PointwiseLaw> source;
  // Nonlinear boundary
  double b = 0.0;
  BoundarySplit split = BoundarySplit::both_ends;
  // Scalar ODE
  double stiffness = 0.0;
};

/// A complete instance of P u_tt + A u = F(u) on a grid. Immutable.
struct ModelSpec {
  ModelKind kind;
  SpacePtr space;
  SpdOperator P;
  SpdOperator A;
  Nonlinearity nl;
  ModelParams params;
  double a0 = 0.0;            // min (Av,v)/(Pv,v)
  double a0_residual = 0.0;
  double omega_max = 0.0;     // sqrt of max (Av,v)/(Pv,v), for step limits

  double alpha() const { return nl.alpha(); }
  double R0() const { return nl.R0(); }
  bool linear() const { return nl.is_zero(); }
  int dim() const { return space->dim(); }
  /// |Gamma_2|: number of nonlinear boundary points (nonlinear_boundary only).
  double flux_boundary_measure() const;
};

/// p > 0, and p <= 2/(n-2) when n >= 3.
bool kg_exponent_admissible(int spatial_dim, double p);

/// P = I, A = -Lap_h + m^2 I, F(u) = |u|^p u (alpha = p/4, R0 = 0).
/// With nonlinear = false, F = 0 (control runs).
ModelSpec make_klein_gordon(const Geometry& geo, double mass, double p, bool nonlinear = true);
ModelSpec make_klein_gordon(double length, int n, double mass, double p);

/// P = (-Lap_h)^{-1} + a I (never formed densely), A = I - nu Lap_h,
/// f(u) = |u|^m u + poly(u) with alpha = m/4.
ModelSpec make_boussinesq(double length, int n, double a, double nu, int m,
                          std::vector<double> poly = {}, bool nonlinear = true,
                          double r0_range = 100.0);

/// P = I, A = Lap_h^2, F = Kirchhoff terms and/or a pointwise source law.
/// Neither supplied gives the linear beam/plate.
ModelSpec make_plate(const Geometry& geo, std::optional<KirchhoffParams> kirchhoff,
                     std::optional<PointwiseLaw> source, double r0_range = 100.0);

/// u_tt - u_xx + b u = 0 on (0, L) with du/dn = f(u) on the flux ends and
/// u = 0 on the left end when split = right_end_only. n counts unknowns.
/// `flux` = nullopt gives the linear Neumann/Dirichlet control.
ModelSpec make_nonlinear_boundary(double length, int n, double b, std::optional<PointwiseLaw> flux,
                                  BoundarySplit split = BoundarySplit::both_ends,
                                  double r0_range = 100.0);

/// One-unknown instance: P = 1, A = a0, F(u) = |u|^p u.
ModelSpec make_scalar_ode(double a0, double p, bool nonlinear = true);

}  // namespace blowup
