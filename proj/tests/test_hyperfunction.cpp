#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fracspec/hyperfunction.hpp"

using namespace fracspec;

TEST_CASE("boundary pair: representatives and domains") {
  Hyperfunction h = delta_T();
  CHECK(h.eval_inside(cplx(0.5)).real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(h.eval_inside(cplx(0.0)).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.eval_outside(cplx(2.0)).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.eval_outside(cplx(5.0)).real() == doctest::Approx(0.25).epsilon(1e-15));

  // the two representatives agree up to sign of the pole factor
  cplx zi(0.3, 0.2), zo(1.4, -0.7);
  CHECK(std::abs(h.eval_inside(zi) - 1.0 / (1.0 - zi)) < 1e-15);
  CHECK(std::abs(h.eval_outside(zo) - 1.0 / (zo - 1.0)) < 1e-15);

  CHECK_THROWS_AS(h.eval_inside(cplx(2.0)), std::domain_error);
  CHECK_THROWS_AS(h.eval_outside(cplx(0.5)), std::domain_error);
  // the unit circle itself belongs to neither side
  CHECK_THROWS_AS(h.eval_inside(cplx(0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(h.eval_outside(cplx(0.0, 1.0)), std::domain_error);
}

// For real positive w the remainder saturates the geometric bound exactly,
// and for small w the analytic tail drops below the rounding noise of the
// term-by-term sum, so the comparison needs a small floating-point margin on
// top of the analytic bound in both regimes.
static double fp_slack(double bound) { return bound * 1e-7 + 1e-13; }

TEST_CASE("partial sums approach the matching representative") {
  Hyperfunction h = delta_T();
  for (double w : {0.1, 0.3, 0.7}) {
    for (int P : {5, 10, 20, 40}) {
      cplx partial = bilateral_partial(cplx(w), P, Side::inside);
      double bound = geometric_tail_bound(w, P, Side::inside);
      CAPTURE(w);
      CAPTURE(P);
      CHECK(std::abs(partial - h.eval_inside(cplx(w))) <=
            bound + fp_slack(bound));
      CHECK(bound < 1.0);
    }
  }
  for (double w : {1.5, 4.0, 9.0}) {
    for (int P : {5, 10, 20, 40}) {
      cplx partial = bilateral_partial(cplx(w), P, Side::outside);
      double bound = geometric_tail_bound(w, P, Side::outside);
      CAPTURE(w);
      CAPTURE(P);
      CHECK(std::abs(partial - h.eval_outside(cplx(w))) <=
            bound + fp_slack(bound));
    }
  }

  // complex arguments too
  cplx wc(0.2, 0.4);
  cplx partial = bilateral_partial(wc, 30, Side::inside);
  double cb = geometric_tail_bound(std::abs(wc), 30, Side::inside);
  CHECK(std::abs(partial - 1.0 / (1.0 - wc)) <= cb + fp_slack(cb));

  CHECK_THROWS_AS(bilateral_partial(cplx(0.5), -1, Side::inside),
                  std::invalid_argument);
  CHECK_THROWS_AS(geometric_tail_bound(1.5, 10, Side::inside),
                  std::domain_error);
  CHECK_THROWS_AS(geometric_tail_bound(0.5, 10, Side::outside),
                  std::domain_error);
}

TEST_CASE("series on the wrong side blows up") {
  // the one-sided sums only converge against their own representative;
  // pushing the expansion to P = 60 on the mismatched side must diverge
  for (double w : {0.3, 0.7}) {
    cplx v = bilateral_partial(cplx(w), 60, Side::outside);
    CAPTURE(w);
    CHECK(std::abs(v) > 1e6);
  }
  for (double w : {1.5, 4.0}) {
    cplx v = bilateral_partial(cplx(w), 60, Side::inside);
    CAPTURE(w);
    CHECK(std::abs(v) > 1e6);
  }
}

TEST_CASE("scale substitution routes by the sign of Re(s)") {
  Hyperfunction h = delta_T();

  // gamma = 4, s = 2: w = 1/4, inside; geometric value 4/3
  CHECK(std::abs(substitute_gamma(h, 4.0, cplx(2.0)) - cplx(4.0 / 3.0)) <
        1e-14);
  // gamma = 5, s = -2: w = 5, outside; value 1/(5-1)
  CHECK(std::abs(substitute_gamma(h, 5.0, cplx(-2.0)) - cplx(0.25)) < 1e-14);
  // complex s with positive real part picks the inside branch
  cplx s(2.0, 1.0);
  cplx w = std::exp(-(s / 2.0) * std::log(4.0));
  CHECK(std::abs(substitute_gamma(h, 4.0, s) - 1.0 / (1.0 - w)) < 1e-14);

  CHECK_THROWS_AS(substitute_gamma(h, 4.0, cplx(0.0, 2.0)), std::domain_error);
  CHECK_THROWS_AS(substitute_gamma(h, 1.0, cplx(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(substitute_gamma(h, 0.5, cplx(2.0)), std::invalid_argument);
}

TEST_CASE("half-plane factorization carries both factors") {
  HalfPlaneFactorization f;
  f.hyper = delta_T();
  f.gamma = 4.0;
  f.scalar = [](cplx) { return cplx(10.0); };
  f.scalar_converges = [](cplx s) { return s.real() > 1.0; };
  f.label = "toy";

  FactorizationValue v = f.evaluate(cplx(2.0));
  CHECK(v.side == Side::inside);
  CHECK_FALSE(v.formal);
  CHECK(std::abs(v.hyper_factor - cplx(4.0 / 3.0)) < 1e-14);
  CHECK(std::abs(v.scalar_factor - cplx(10.0)) < 1e-14);
  CHECK(std::abs(v.value - v.hyper_factor * v.scalar_factor) < 1e-14);

  // below the convergence abscissa the product is marked formal
  FactorizationValue g = f.evaluate(cplx(-2.0));
  CHECK(g.side == Side::outside);
  CHECK(g.formal);
  CHECK(std::abs(g.hyper_factor - cplx(1.0 / 3.0)) < 1e-14);

  CHECK_THROWS_AS(f.evaluate(cplx(0.0, 1.0)), std::domain_error);
}
