#include "blowup/criteria.hpp"
#include "blowup/data_builder.hpp"
#include "blowup/spd_operator.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numbers>

using namespace blowup;
using blowup::testing::random_vector;

namespace {

Vector bump(const DiscreteSpace& s, double amp, double center, double width) {
  Vector v = Vector::Zero(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    const double r2 = std::pow((s.x(i) - center) / width, 2);
    if (r2 < 1.0) v[i] = amp * std::pow(1.0 - r2, 3);
  }
  return v;
}

Vector sine(const DiscreteSpace& s, double amp, int k) {
  Vector v(s.dim());
  for (int i = 0; i < s.dim(); ++i) v[i] = amp * std::sin(k * std::numbers::pi * s.x(i) / s.lx());
  return v;
}

}  // namespace

TEST_SUITE("criteria") {

TEST_CASE("energy of the zero state") {
  const ModelSpec m = make_klein_gordon(1.0, 20, 1.0, 2.0);
  CHECK(energy(m, Vector::Zero(20), Vector::Zero(20)) == 0.0);
}

TEST_CASE("time bound examples") {
  CHECK(levine_time_bound(1, 1, 1, 0) == 1.0);
  CHECK(levine_time_bound(2, 4, 0.5, 3) == 4.0);
  CHECK_THROWS_AS(levine_time_bound(1, 0, 1, 0), std::domain_error);
  CHECK_THROWS_AS(levine_time_bound(1, -1, 1, 0), std::domain_error);
}

TEST_CASE("time bound monotonicity") {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const double psi = rng.log_uniform(1e-3, 1e3), d = rng.log_uniform(1e-3, 1e3);
    const double a = rng.uniform(0.1, 2.0), t0 = rng.uniform(0, 5);
    const double base = levine_time_bound(psi, d, a, t0);
    CHECK(levine_time_bound(psi, d, a * 1.1, t0) < base);
    CHECK(levine_time_bound(psi, d * 1.1, a, t0) < base);
    CHECK(levine_time_bound(psi * 1.1, d, a, t0) > base);
  }
}

TEST_CASE("lower-bound curve") {
  const GrowthCurve c = GrowthCurve::at(0.0, 1.0, 1.0, 1.0);
  CHECK(c.blowup_time_upper == 1.0);
  CHECK(psi_lower_bound(c, 0.0) == 1.0);
  for (double t : {0.1, 0.5, 0.9, 0.999}) CHECK(psi_lower_bound(c, t) == doctest::Approx(1.0 / (1.0 - t)));
  CHECK_THROWS_AS(psi_lower_bound(c, 1.0), std::domain_error);
  CHECK_THROWS_AS(psi_lower_bound(c, -0.1), std::domain_error);

  const GrowthCurve g = GrowthCurve::at(2.0, 3.0, 0.7, 0.4);
  double prev = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = g.t0 + (g.blowup_time_upper - g.t0) * k / 1000.0;
    const double v = psi_lower_bound(g, t);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(psi_lower_bound(g, g.blowup_time_upper * (1 - 1e-12)) > 1e10);
}

TEST_CASE("Psi* threshold") {
  const ModelSpec m = make_scalar_ode(1.0, 2.0);
  CHECK(m.a0 == doctest::Approx(1.0));
  // 4(1 + 2 alpha) E0 / (alpha a0) with alpha = 1/2, a0 = 1, E0 = 1
  CHECK(t_star_threshold(m, 1.0, 0.0) == doctest::Approx(16.0));
  CHECK(t_star_threshold(m, -1.0, 0.0) < 0.0);
  CHECK(t_star_threshold(m, 0.0, 1e-12) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("linear models never satisfy the growth conditions") {
  const ModelSpec lin = make_klein_gordon(Geometry{1, 3.0, 1.0, 40, 1}, 1.0, 2.0, false);
  const ModelSpec plate = make_plate(Geometry{1, 1.0, 1.0, 30, 1}, std::nullopt, std::nullopt);
  Rng rng(3);
  for (const ModelSpec* m : {&lin, &plate}) {
    for (int k = 0; k < 200; ++k) {
      const Vector u0 = random_vector(rng, m->dim(), rng.log_uniform(1e-2, 1e2));
      const Vector u1 = random_vector(rng, m->dim(), rng.log_uniform(1e-2, 1e2));
      CHECK_FALSE(check_levine_conditions(*m, u0, u1).satisfied);
      CHECK_FALSE(check_levine_conditions(*m, u0, u0).satisfied);
    }
  }
}

TEST_CASE("reversed velocity fails the first condition") {
  const ModelSpec m = make_klein_gordon(2.0, 30, 1.0, 2.0);
  Rng rng(4);
  const Vector u0 = random_vector(rng, 30);
  const CriteriaReport r = check_levine_conditions(m, u0, -u0);
  CHECK(r.l1_value == doctest::Approx(-1.0));
  CHECK(r.dpsi0 == doctest::Approx(-2.0 * inner(*m.space, u0, u0)));
  CHECK_FALSE(r.satisfied);
  CHECK_FALSE(r.levine_time_bound.has_value());
}

TEST_CASE("zero u0 is rejected") {
  const ModelSpec m = make_klein_gordon(2.0, 30, 1.0, 2.0);
  CHECK_THROWS_AS(check_levine_conditions(m, Vector::Zero(30), Vector::Ones(30)), std::invalid_argument);
}

TEST_CASE("scalar instance reduces to hand algebra") {
  const ModelSpec m = make_scalar_ode(1.0, 2.0);
  // u0 = 2, u1 = 3: E = 9/2 + 2 - 4 = 2.5, rhs = 9/2
  const CriteriaReport r = check_levine_conditions(m, Vector::Constant(1, 2.0), Vector::Constant(1, 3.0));
  CHECK(r.energy0 == doctest::Approx(2.5));
  CHECK(r.l1_value == doctest::Approx(1.5));
  CHECK(r.l2_rhs == doctest::Approx(4.5));
  CHECK(r.satisfied);
  CHECK(*r.levine_time_bound == doctest::Approx(4.0 / (0.5 * 12.0)));
}

TEST_CASE("KG energy with u1 = u0^2 / sqrt 2") {
  const ModelSpec m = make_klein_gordon(10.0, 199, 1.5, 2.0);
  const DiscreteSpace& s = *m.space;
  const Vector u0 = bump(s, 3.0, 5.0, 1.5);
  const Vector u1 = u0.cwiseProduct(u0) / std::sqrt(2.0);
  const double grad2 = u0.dot(stiffness_gram(s) * u0);
  const double want = 0.5 * grad2 + 0.5 * 1.5 * 1.5 * inner(s, u0, u0);
  CHECK(energy(m, u0, u1) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("KG bump data against an independent evaluation") {
  const ModelSpec m = make_klein_gordon(20.0, 399, 1.0, 2.0);
  const DiscreteSpace& s = *m.space;
  const Vector u0 = bump(s, 3.0, 10.0, 1.5);
  const Vector u1 = u0.cwiseProduct(u0) / std::sqrt(2.0);
  // (u0, u1) = int u0^3 / sqrt 2 > [|grad u0|^2 + m^2 |u0|^2]^{1/2} |u0|
  double cube = 0.0;
  for (int i = 0; i < s.dim(); ++i) cube += s.weights()[i] * std::pow(u0[i], 3);
  const double grad2 = u0.dot(stiffness_gram(s) * u0);
  const double l2 = inner(s, u0, u0);
  const bool independent = cube / std::sqrt(2.0) > std::sqrt(grad2 + l2) * std::sqrt(l2);
  CHECK(independent);
  CHECK(check_kg_condition(m, u0, u1));
  CHECK(check_levine_conditions(m, u0, u1).satisfied);
}

TEST_CASE("KG bracket equals twice the energy") {
  const ModelSpec m = make_klein_gordon(3.0, 60, 0.8, 2.0);
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const Vector u0 = random_vector(rng, 60, rng.log_uniform(0.1, 10));
    const Vector u1 = random_vector(rng, 60, rng.log_uniform(0.1, 10));
    const double e = energy(m, u0, u1);
    CHECK(std::abs(kg_bracket(m, u0, u1) - 2 * e) <= 1e-10 * std::max(1.0, std::abs(2 * e)));
  }
}

TEST_CASE("KG condition agrees with the general criteria") {
  const ModelSpec m = make_klein_gordon(3.0, 60, 0.8, 2.0);
  Rng rng(10);
  int yes = 0;
  for (int k = 0; k < 1000; ++k) {
    Vector u0 = Vector::Zero(60);
    const double amp = rng.log_uniform(0.1, 10);
    for (int mode = 1; mode <= 4; ++mode) u0 += sine(*m.space, amp * rng.uniform(-1, 1) / mode, mode);
    const Vector u1 = rng.uniform() < 0.5 ? Vector(random_vector(rng, 60, rng.log_uniform(0.1, 10)))
                                          : Vector(rng.uniform(0.0, 3.0) * u0 + random_vector(rng, 60, 0.3));
    const bool kg = check_kg_condition(m, u0, u1);
    CHECK(kg == check_levine_conditions(m, u0, u1).satisfied);
    yes += kg;
  }
  CHECK(yes > 0);
  CHECK(yes < 1000);
}

TEST_CASE("KG with zero velocity and positive bracket fails") {
  const ModelSpec m = make_klein_gordon(3.0, 60, 0.8, 2.0);
  const Vector u0 = sine(*m.space, 0.5, 1);
  REQUIRE(kg_bracket(m, u0, Vector::Zero(60)) > 0.0);
  CHECK_FALSE(check_kg_condition(m, u0, Vector::Zero(60)));
  CHECK_THROWS(kg_bracket(make_scalar_ode(1, 2), Vector::Ones(1), Vector::Ones(1)));
}

TEST_CASE("scaled bump family has a sharp threshold") {
  const ModelSpec m = make_klein_gordon(20.0, 399, 1.0, 2.0);
  const Vector shape = bump(*m.space, 1.0, 10.0, 1.5);
  auto ok = [&](double c) {
    const Vector u0 = c * shape;
    return check_kg_condition(m, u0, u0.cwiseProduct(u0) / std::sqrt(2.0));
  };
  double lo = 1e-3, hi = 100.0;
  REQUIRE_FALSE(ok(lo));
  REQUIRE(ok(hi));
  for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  for (int k = 1; k <= 100; ++k) CHECK(ok(hi * (1 + 0.05 * k)));
  for (int k = 1; k <= 20; ++k) CHECK_FALSE(ok(lo * (1 - 0.04 * k)));
}

TEST_CASE("reflection of the grid leaves the criteria unchanged") {
  const ModelSpec m = make_klein_gordon(3.0, 61, 0.8, 2.0);
  const ModelSpec b = make_boussinesq(1.0, 41, 0.5, 1.0, 2, {0.0, -1.0});
  Rng rng(14);
  for (const ModelSpec* model : {&m, &b}) {
    for (int k = 0; k < 50; ++k) {
      const Vector u0 = random_vector(rng, model->dim(), 2.0);
      const Vector u1 = 0.8 * u0 + random_vector(rng, model->dim(), 0.5);
      const CriteriaReport r = check_levine_conditions(*model, u0, u1);
      const CriteriaReport q = check_levine_conditions(*model, u0.reverse(), u1.reverse());
      CHECK(q.satisfied == r.satisfied);
      CHECK(q.l1_value == doctest::Approx(r.l1_value).epsilon(1e-12));
      CHECK(q.l2_lhs == doctest::Approx(r.l2_lhs).epsilon(1e-11));
      CHECK(q.l2_rhs == doctest::Approx(r.l2_rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("nonlinear-boundary condition examples") {
  const ModelSpec m = make_nonlinear_boundary(1.0, 41, 1.0, PointwiseLaw{2.0, {}});
  const DiscreteSpace& s = *m.space;
  SUBCASE("zero velocity with positive energy") {
    const Vector u0 = Vector::Constant(41, 0.3);
    REQUIRE(nb_energy(m, u0, Vector::Zero(41)) > 0.0);
    CHECK_FALSE(check_nb_condition(m, u0, Vector::Zero(41)));
  }
  SUBCASE("nonpositive middle term") {
    // Large constant: the boundary potential 2 u^4 / 4 beats b/2 |u|^2.
    const Vector u0 = Vector::Constant(41, 3.0);
    const Vector u1 = 0.1 * u0;
    const double mid = 2 * nb_energy(m, u0, u1) + nb_R0(m) / (1 + 2 * m.alpha());
    REQUIRE(mid <= 0.0);
    REQUIRE(inner(s, u0, u1) / inner(s, u0, u0) > mid);
    CHECK_FALSE(check_nb_condition(m, u0, u1));
  }
  SUBCASE("constructed data") {
    const Vector u0 = Vector::Constant(41, 1.3);
    CHECK(check_nb_condition(m, u0, u0));
  }
  SUBCASE("boundary energy pieces") {
    Rng rng(2);
    const Vector u0 = random_vector(rng, 41), u1 = random_vector(rng, 41);
    const double g = 0.25 * (std::pow(u0[0], 4) + std::pow(u0[40], 4));
    const double want = 0.5 * inner(s, u1, u1) + 0.5 * u0.dot(stiffness_gram(s) * u0) + 0.5 * inner(s, u0, u0) - g;
    CHECK(nb_energy(m, u0, u1) == doctest::Approx(want).epsilon(1e-13));
    CHECK(nb_energy(m, u0, u1) == doctest::Approx(energy(m, u0, u1)).epsilon(1e-13));
  }
  CHECK(nb_R0(make_nonlinear_boundary(1.0, 41, 1.0, PointwiseLaw{2.0, {0.0, 0.0}})) == 0.0);
  CHECK_THROWS(check_nb_condition(m, Vector::Zero(41), Vector::Ones(41)));
}

TEST_CASE("nb R0 counts the flux points") {
  // s^3 - s + 0.5 at alpha = 1/2: margin s^2 - 1.5 s, r0 = 9/16
  const PointwiseLaw law{2.0, {0.5, -1.0}};
  const ModelSpec both = make_nonlinear_boundary(1.0, 21, 1.0, law, BoundarySplit::both_ends, 10.0);
  const ModelSpec right = make_nonlinear_boundary(1.0, 21, 1.0, law, BoundarySplit::right_end_only, 10.0);
  CHECK(both.alpha() == 0.5);
  CHECK_THROWS(make_nonlinear_boundary(1.0, 21, 1.0, PointwiseLaw{2.0, {1.0}}));
  CHECK(both.flux_boundary_measure() == 2.0);
  CHECK(right.flux_boundary_measure() == 1.0);
  const double r0 = both.nl.pointwise_r0_value();
  CHECK(r0 == doctest::Approx(0.5625).epsilon(1e-9));
  CHECK(nb_R0(both) == doctest::Approx(2 * r0));
  CHECK(nb_R0(right) == doctest::Approx(r0));
  CHECK(both.R0() == doctest::Approx(0.5 * nb_R0(both)));
}

}  // TEST_SUITE

TEST_SUITE("data_builder") {

namespace {

ModelSpec bsq(double a = 1.0) { return make_boussinesq(1.0, 64, a, 1.0, 2); }

}  // namespace

TEST_CASE("c1 threshold examples") {
  CHECK(c1_threshold(1.0, 1.0, 0.0, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(c1_threshold(0.5, 2.0, 0.0, 2) == doctest::Approx(4.0));
  CHECK(c1_threshold(0.5, 2.0, 0.7, 2) == doctest::Approx(c1_threshold_alpha(0.5, 2.0, 0.7, 0.5)));
  CHECK_THROWS(c1_threshold(0.0, 1.0, 0.0, 2));
  CHECK_THROWS(c1_threshold(1.0, 0.0, 0.0, 2));
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const double theta = rng.uniform(0.01, 1.0), K2 = rng.log_uniform(1e-2, 1e3), r0 = rng.uniform(0, 5);
    const int m = 1 + k % 4;
    const double c1 = c1_threshold(theta, K2, r0, m) * (1.0 + 1e-6);
    CHECK(0.5 * c1 * c1 * theta * theta > K2 + 2 * r0 / (m + 2));
    CHECK(c1_threshold(theta, K2 * 1.5, r0, m) > c1_threshold(theta, K2, r0, m));
  }
}

TEST_CASE("seed normalization") {
  const ModelSpec m = bsq();
  const DiscreteSpace& s = *m.space;
  const Vector v = sine(s, 2.0, 1);
  const SeedPair same = normalize_pair(m, v, 3.0 * v);
  CHECK(same.theta == doctest::Approx(1.0).epsilon(1e-13));

  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    const Vector a = bump(s, rng.uniform(0.5, 2), rng.uniform(0.3, 0.7), rng.uniform(0.15, 0.3));
    const Vector b = bump(s, rng.uniform(0.5, 2), rng.uniform(0.3, 0.7), rng.uniform(0.15, 0.3));
    const SeedPair p = normalize_pair(m, a, b);
    CHECK(std::abs(m.P.quad_form(p.u_hat0) - 1.0) <= 1e-12);
    CHECK(std::abs(m.P.quad_form(p.u_hat1) - 1.0) <= 1e-12);
    CHECK(p.theta > 0.0);
    CHECK(p.theta < 1.0);
  }

  CHECK_THROWS_AS(normalize_pair(m, v, Vector::Zero(64)), std::invalid_argument);
  CHECK_THROWS_AS(normalize_pair(m, v, -v), std::invalid_argument);
  // P-orthogonal: two sine modes are eigenvectors of P
  CHECK_THROWS_AS(normalize_pair(m, sine(s, 1, 1), sine(s, 1, 2)), std::invalid_argument);
}

TEST_CASE("H root matches the energy target") {
  const ModelSpec m = bsq();
  const SeedPair pair = normalize_pair(m, sine(*m.space, 1, 1), bump(*m.space, 1, 0.5, 0.3));
  for (double K2 : {1.0, 10.0, 100.0}) {
    const double c1 = 1.01 * c1_threshold_alpha(pair.theta, K2, m.R0(), m.alpha());
    REQUIRE(h_function(m, pair, c1, K2, 0.0) > 0.0);
    const HRoot r = solve_H_root(m, pair, c1, K2);
    CHECK(r.c0 > 0.0);
    CHECK(r.residual <= 1e-10 * std::max(1.0, K2));
    CHECK(energy(m, r.c0 * pair.u_hat0, c1 * pair.u_hat1) == doctest::Approx(K2).epsilon(1e-8));
    CHECK(r.sign_changes == 1);
  }
}

TEST_CASE("bisection agrees with a nested grid scan") {
  const ModelSpec m = bsq(0.0);
  const SeedPair pair = normalize_pair(m, sine(*m.space, 1, 1), sine(*m.space, 1, 1) + bump(*m.space, 0.3, 0.4, 0.2));
  const double K2 = 10.0;
  const double c1 = 1.01 * c1_threshold_alpha(pair.theta, K2, m.R0(), m.alpha());
  const HRoot r = solve_H_root(m, pair, c1, K2);
  double lo = 0.0, hi = r.bracket_hi;
  for (int level = 0; level < 4; ++level) {
    const int cells = 1000;
    double prev = h_function(m, pair, c1, K2, lo);
    for (int k = 1; k <= cells; ++k) {
      const double c = lo + (hi - lo) * k / cells;
      const double h = h_function(m, pair, c1, K2, c);
      if ((prev > 0) != (h > 0)) {
        const double step = (hi - lo) / cells;
        hi = c;
        lo = c - step;
        break;
      }
      prev = h;
    }
  }
  CHECK(std::abs(0.5 * (lo + hi) - r.c0) <= 1e-9 * std::max(1.0, r.c0));
}

TEST_CASE("positive-energy data for K2 in {1, 10, 100}") {
  for (double a : {0.0, 1.0}) {
    const ModelSpec m = bsq(a);
    const SeedPair pair = normalize_pair(m, sine(*m.space, 1, 1), bump(*m.space, 1, 0.45, 0.3));
    double prev_c1 = 0.0;
    for (double K2 : {1.0, 10.0, 100.0}) {
      const BuiltData d = build_positive_energy_data(m, pair, K2);
      CHECK(d.achieved_energy == doctest::Approx(K2).epsilon(1e-8));
      CHECK(d.report.satisfied);
      const double pu0u1 = inner(*m.space, m.P.apply(d.u0), d.u1);
      CHECK(0.5 * pu0u1 * pu0u1 / m.P.quad_form(d.u0) > K2 + 2 * m.R0() / (2 + 2));
      CHECK(d.u0 == d.c0 * pair.u_hat0);
      CHECK(d.u1 == d.c1 * pair.u_hat1);
      CHECK(d.c1 > prev_c1);
      prev_c1 = d.c1;
    }
  }
}

TEST_CASE("builder with a lower-order polynomial") {
  const ModelSpec m = make_boussinesq(1.0, 64, 0.5, 1.0, 2, {0.0, -1.0});
  const SeedPair pair = normalize_pair(m, sine(*m.space, 1, 1), bump(*m.space, 1, 0.5, 0.3));
  const BuiltData d = build_positive_energy_data(m, pair, 10.0);
  CHECK(d.report.satisfied);
  CHECK(d.achieved_energy == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("nonpositive targets are rejected") {
  const ModelSpec m = bsq();
  const SeedPair pair = normalize_pair(m, sine(*m.space, 1, 1), sine(*m.space, 1, 1));
  CHECK_THROWS_AS(build_positive_energy_data(m, pair, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_positive_energy_data(m, pair, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_H_root(m, pair, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("linear models give no root") {
  const ModelSpec m = make_boussinesq(1.0, 32, 1.0, 1.0, 2, {}, false);
  const SeedPair pair = normalize_pair(m, sine(*m.space, 1, 1), sine(*m.space, 1, 1));
  CHECK_THROWS_AS(solve_H_root(m, pair, 2.0, 1.0), NumericalError);
}

}  // TEST_SUITE
