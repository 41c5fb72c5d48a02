#include "blowup/model.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {
namespace {

SparseMatrix diagonal_weights(const DiscreteSpace& space, double scale) {
  const int n = space.dim();
  SparseMatrix m(n, n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n);
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, scale * space.weights()[i]);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SpacePtr make_space(const Geometry& geo) {
  if (geo.dims == 1) return DiscreteSpace::interval(geo.lx, geo.nx);
  if (geo.dims == 2) return DiscreteSpace::rectangle(geo.lx, geo.ly, geo.nx, geo.ny);
  throw std::invalid_argument("geometry: only 1D intervals and 2D rectangles are supported");
}

ModelSpec finish(ModelKind kind, SpacePtr space, SpdOperator p, SpdOperator a, Nonlinearity nl,
                 ModelParams params) {
  const GeneralizedEigResult eig = min_generalized_eig(a, p);
  const double lmax = max_generalized_eig(a, p);
  return ModelSpec{kind,          std::move(space), std::move(p), std::move(a), std::move(nl),
                   std::move(params), eig.a0,       eig.residual, std::sqrt(lmax)};
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::klein_gordon: return "klein_gordon";
    case ModelKind::boussinesq: return "boussinesq";
    case ModelKind::plate: return "plate";
    case ModelKind::nonlinear_boundary: return "nonlinear_boundary";
    case ModelKind::scalar_ode: return "scalar_ode";
  }
  return "unknown";
}

const char* to_string(BoundarySplit split) {
  return split == BoundarySplit::both_ends ? "both_ends" : "right_end_only";
}

double ModelSpec::flux_boundary_measure() const {
  return static_cast<double>(space->boundary_nodes().size());
}

bool kg_exponent_admissible(int spatial_dim, double p) {
  if (!(p > 0.0)) return false;
  if (spatial_dim >= 3) return p <= 2.0 / (spatial_dim - 2);
  return true;
}

ModelSpec make_klein_gordon(const Geometry& geo, double mass, double p, bool nonlinear) {
  if (!(mass > 0.0)) throw std::invalid_argument("klein_gordon: mass must be positive");
  if (!kg_exponent_admissible(geo.dims, p)) {
    throw std::invalid_argument("klein_gordon: exponent outside the admissible range");
  }
  SpacePtr space = make_space(geo);
  SparseMatrix a = stiffness_gram(*space) + diagonal_weights(*space, mass * mass);
  ModelParams params;
  params.mass = mass;
  params.exponent = p;
  return finish(ModelKind::klein_gordon, space, SpdOperator::identity(space),
                SpdOperator::from_gram(space, std::move(a), "-lap+m^2"),
                nonlinear ? Nonlinearity::power(p) : Nonlinearity::zero(), std::move(params));
}

ModelSpec make_klein_gordon(double length, int n, double mass, double p) {
  return make_klein_gordon(Geometry{1, length, 1.0, n, 1}, mass, p);
}

ModelSpec make_boussinesq(double length, int n, double a, double nu, int m,
                          std::vector<double> poly, bool nonlinear, double r0_range) {
  if (!(a >= 0.0)) throw std::invalid_argument("boussinesq: a must be >= 0");
  if (!(nu > 0.0)) throw std::invalid_argument("boussinesq: nu must be positive");
  if (m < 1) throw std::invalid_argument("boussinesq: m must be >= 1");
  SpacePtr space = DiscreteSpace::interval(length, n);
  const SpdOperator lap = build_laplacian(space);
  SparseMatrix agram = diagonal_weights(*space, 1.0) + nu * lap.gram();
  ModelParams params;
  params.a = a;
  params.nu = nu;
  params.order = m;
  params.poly = poly;
  Nonlinearity nl = nonlinear ? Nonlinearity::polynomial(m, std::move(poly), *space, r0_range)
                              : Nonlinearity::zero();
  return finish(ModelKind::boussinesq, space, SpdOperator::inverse_shifted(lap, a, "(-lap)^-1+aI"),
                SpdOperator::from_gram(space, std::move(agram), "I-nu*lap"), std::move(nl),
                std::move(params));
}

ModelSpec make_plate(const Geometry& geo, std::optional<KirchhoffParams> kirchhoff,
                     std::optional<PointwiseLaw> source, double r0_range) {
  SpacePtr space = make_space(geo);
  Nonlinearity nl = Nonlinearity::zero();
  if (kirchhoff) {
    nl = Nonlinearity::kirchhoff_plate(space, *kirchhoff, source, r0_range);
  } else if (source) {
    if (source->lower.empty()) {
      nl = Nonlinearity::power(source->exponent);
    } else {
      const double m = source->exponent;
      if (m != std::floor(m)) throw std::invalid_argument("plate: polynomial source needs an integer exponent");
      nl = Nonlinearity::polynomial(static_cast<int>(m), source->lower, *space, r0_range);
    }
  }
  ModelParams params;
  params.kirchhoff = kirchhoff;
  params.source = std::move(source);
  return finish(ModelKind::plate, space, SpdOperator::identity(space), build_bilaplacian(space),
                std::move(nl), std::move(params));
}

ModelSpec make_nonlinear_boundary(double length, int n, double b, std::optional<PointwiseLaw> flux,
                                  BoundarySplit split, double r0_range) {
  if (!(b > 0.0)) throw std::invalid_argument("nonlinear_boundary: b must be positive");
  const EndCondition left = split == BoundarySplit::both_ends ? EndCondition::free : EndCondition::dirichlet;
  SpacePtr space = DiscreteSpace::interval_with_ends(length, n, left, EndCondition::free);
  SparseMatrix a = stiffness_gram(*space) + diagonal_weights(*space, b);
  ModelParams params;
  params.b = b;
  params.split = split;
  params.source = flux;
  Nonlinearity nl = flux ? Nonlinearity::boundary_scalar(*flux, *space, r0_range) : Nonlinearity::zero();
  return finish(ModelKind::nonlinear_boundary, space, SpdOperator::identity(space),
                SpdOperator::from_gram(space, std::move(a), "-lap_N+b"), std::move(nl),
                std::move(params));
}

ModelSpec make_scalar_ode(double a0, double p, bool nonlinear) {
  if (!(a0 > 0.0) || !(p > 0.0)) throw std::invalid_argument("scalar_ode: need a0 > 0 and p > 0");
  SpacePtr space = DiscreteSpace::point();
  SparseMatrix a = diagonal_weights(*space, a0);
  ModelParams params;
  params.stiffness = a0;
  params.exponent = p;
  return finish(ModelKind::scalar_ode, space, SpdOperator::identity(space),
                SpdOperator::from_gram(space, std::move(a), "a0"),
                nonlinear ? Nonlinearity::power(p) : Nonlinearity::zero(), std::move(params));
}

}  // namespace blowup
