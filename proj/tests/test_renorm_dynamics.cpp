#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "fracspec/ifs_measure.hpp"
#include "fracspec/renorm_dynamics.hpp"
#include "fracspec/sturm_liouville.hpp"

using namespace fracspec;

TEST_CASE("projective distance") {
  ProjPoint a{{1.0, 2.0, 3.0}};
  ProjPoint b{{2.0, 4.0, 6.0}};       // same point, different scale
  ProjPoint c{{cplx(0, 1), cplx(0, 2), cplx(0, 3)}};  // complex rescale
  ProjPoint d{{1.0, 2.0, 4.0}};

  CHECK(proj_distance(a, b) < 1e-15);
  CHECK(proj_distance(a, c) < 1e-15);
  CHECK(proj_distance(a, d) > 1e-3);
  CHECK(proj_distance(a, d) == doctest::Approx(proj_distance(d, a)).epsilon(1e-12));

  ProjPoint zero{{0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(zero.normalized(), std::invalid_argument);
}

TEST_CASE("fixed points of the quadratic map") {
  for (double delta : {0.5, 1.0, 2.0 / 3.0}) {
    ProjPoint x0{{0.0, 1.0, 0.0}};
    ProjPoint e1{{1.0, 0.0, 0.0}};
    CAPTURE(delta);
    CHECK(proj_distance(rho_apply(x0, delta), x0) < 1e-15);
    CHECK(proj_distance(rho_apply(e1, delta), e1) < 1e-15);
  }
}

TEST_CASE("map is well defined on projective classes") {
  ProjPoint p{{0.7, -1.3, 0.4}};
  ProjPoint im = rho_apply(p, 0.5);
  for (cplx beta : {cplx(2.0), cplx(0.0, 1.0), cplx(-3.0)}) {
    ProjPoint q{{beta * p.h[0], beta * p.h[1], beta * p.h[2]}};
    CHECK(proj_distance(rho_apply(q, 0.5), im) < 1e-13);
  }
}

TEST_CASE("coordinates at the symmetric parameter") {
  // at delta = 1 the map reduces to [x(x+y) - z^2, y(x+y) - z^2, z^2]
  for (const ProjPoint& p :
       {ProjPoint{{1.0, 1.0, 1.0}}, ProjPoint{{2.0, -0.3, 0.7}},
        ProjPoint{{0.1, 0.2, 0.9}}}) {
    cplx u = p.h[0] + p.h[1];
    ProjPoint expect{{p.h[0] * u - p.h[2] * p.h[2],
                      p.h[1] * u - p.h[2] * p.h[2], p.h[2] * p.h[2]}};
    CHECK(proj_distance(rho_apply(p, 1.0), expect) < 1e-14);
  }
}

TEST_CASE("exceptional line and indeterminacy point") {
  CHECK(in_D(ProjPoint{{1.0, -0.5, 3.0}}, 0.5));
  CHECK(in_D(ProjPoint{{1.0, -1.0, 7.0}}, 1.0));
  CHECK_FALSE(in_D(ProjPoint{{1.0, 1.0, 1.0}}, 1.0));

  // the indeterminacy point itself dies at step 0
  try {
    rho_apply(ProjPoint{{1.0, -2.0, 0.0}}, 2.0);
    FAIL("expected IndeterminacyError");
  } catch (const IndeterminacyError& e) {
    CHECK(e.step == 0);
    CHECK(std::string(e.what()).find("indeterminacy") != std::string::npos);
  }

  // on the invariant line z = 0 the map sends [1,-1,0] onto the
  // indeterminacy point of delta = 2, so the second step must fail
  try {
    rho_iterate(ProjPoint{{1.0, -1.0, 0.0}}, 2, 2.0);
    FAIL("expected IndeterminacyError");
  } catch (const IndeterminacyError& e) {
    CHECK(e.step == 1);
  }

  // a regular point of D (away from the indeterminacy point) maps fine
  ProjPoint reg = rho_apply(ProjPoint{{1.0, -1.0, 7.0}}, 1.0);
  CHECK(std::isfinite(reg.h[0].real()));

  CHECK_THROWS_AS(rho_apply(ProjPoint{{1.0, 1.0, 1.0}}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("iteration composes the map") {
  ProjPoint p{{1.0, -2.0, 1.0}};
  double delta = 2.0;
  ProjPoint twice = rho_apply(rho_apply(p, delta), delta);
  CHECK(proj_distance(rho_iterate(p, 2, delta), twice) < 1e-13);
  CHECK(proj_distance(rho_iterate(p, 0, delta), p) < 1e-15);
  CHECK_THROWS_AS(rho_iterate(p, -1, delta), std::invalid_argument);
}

TEST_CASE("basin probes") {
  // the attracting point reports immediately
  OrbitReport r0 = basin_probe(ProjPoint{{0.0, 1.0, 0.0}}, 2.0, 100);
  CHECK(r0.outcome == OrbitOutcome::converged_x0);
  CHECK(r0.steps == 0);

  // the secular ladder start swirls into the attractor
  OrbitReport r1 = basin_probe(ProjPoint{{1.0, -2.0, 1.0}}, 2.0, 200);
  CHECK(r1.outcome == OrbitOutcome::converged_x0);
  CHECK(r1.steps > 0);
  CHECK(r1.steps < 50);
  CHECK(proj_distance(r1.terminal, ProjPoint{{0.0, 1.0, 0.0}}) < 1e-6);

  // a fixed point that is not the attractor is reported as such
  OrbitReport r2 = basin_probe(ProjPoint{{1.0, 0.0, 0.0}}, 1.0, 100);
  CHECK(r2.outcome == OrbitOutcome::fixed_point);

  OrbitReport r3 = basin_probe(ProjPoint{{1.0, 1.0, 1.0}}, 1.0, 100);
  CHECK(r3.outcome == OrbitOutcome::fixed_point);

  // outcome labels are printable and distinct
  CHECK(std::string(to_string(OrbitOutcome::converged_x0)) !=
        std::string(to_string(OrbitOutcome::budget_exhausted)));
  CHECK(std::string(to_string(OrbitOutcome::fixed_point)) !=
        std::string(to_string(OrbitOutcome::cycling)));
}

TEST_CASE("secular vector interlocks with the map") {
  // rho^p applied to phi(gamma^{-(p+1)} lambda) climbs back to
  // phi(gamma^{-1} lambda): the dynamics reproduce the lambda-scaling of
  // the propagator entries
  SLConstants c = make_constants(1.0 / 3.0);
  MeasureGrid g = build_grid(15, c);
  double lambda = 20.0;
  ProjPoint target = phi(lambda / c.gamma, g);
  for (int p = 1; p <= 4; ++p) {
    ProjPoint start = phi(lambda * std::pow(c.gamma, -(p + 1)), g);
    ProjPoint walked = rho_iterate(start, p, c.delta);
    CAPTURE(p);
    CHECK(proj_distance(walked, target) < 1e-8);
  }

  // the zero-energy vector is the symmetric fixed point at delta = 1
  SLConstants h = make_constants(0.5);
  MeasureGrid gh = build_grid(10, h);
  ProjPoint p0 = phi(0.0, gh);
  CHECK(proj_distance(p0, ProjPoint{{1.0, 1.0, 1.0}}) < 1e-12);
  CHECK(proj_distance(rho_apply(p0, h.delta), p0) < 1e-12);
}
