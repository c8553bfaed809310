#include "fracspec/hyperfunction.hpp"

#include <cmath>
#include <stdexcept>

namespace fracspec {

cplx Hyperfunction::eval_inside(cplx z) const {
  if (!inside_ok(z))
    throw std::domain_error("point not in the inside representative's domain (" +
                            description + ")");
  return upper(z);
}

cplx Hyperfunction::eval_outside(cplx z) const {
  if (!outside_ok(z))
    throw std::domain_error("point not in the outside representative's domain (" +
                            description + ")");
  return lower(z);
}

Hyperfunction delta_T() {
  Hyperfunction h;
  h.upper = [](cplx z) { return 1.0 / (1.0 - z); };
  h.lower = [](cplx z) { return 1.0 / (z - 1.0); };
  h.inside_ok = [](cplx z) { return std::abs(z) < 1.0; };
  h.outside_ok = [](cplx z) { return std::abs(z) > 1.0; };
  h.description = "[1/(1-z), 1/(z-1)] unit comb pair";
  return h;
}

cplx bilateral_partial(cplx w, int P, Side side) {
  if (P < 0) throw std::invalid_argument("P must be >= 0");
  cplx sum = 0.0;
  if (side == Side::inside) {
    cplx t = 1.0;  // w^0
    for (int p = 0; p <= P; ++p) {
      sum += t;
      t *= w;
    }
  } else {
    cplx wi = 1.0 / w;
    cplx t = wi;  // w^{-1}
    for (int p = 1; p <= P; ++p) {
      sum += t;
      t *= wi;
    }
  }
  return sum;
}

double geometric_tail_bound(double abs_w, int P, Side side) {
  if (P < 0) throw std::invalid_argument("P must be >= 0");
  if (side == Side::inside) {
    if (!(abs_w < 1.0))
      throw std::domain_error("inside tail bound needs |w| < 1");
    return std::pow(abs_w, P + 1) / (1.0 - abs_w);
  }
  if (!(abs_w > 1.0))
    throw std::domain_error("outside tail bound needs |w| > 1");
  double r = 1.0 / abs_w;
  return std::pow(r, P + 1) / (1.0 - r);
}

cplx substitute_gamma(const Hyperfunction& h, double gamma, cplx s) {
  if (!(gamma > 1.0))
    throw std::invalid_argument("substitution needs gamma > 1");
  if (s.real() == 0.0)
    throw std::domain_error("Re(s) = 0 puts gamma^{-s/2} on the unit circle "
                            "where the pair does not glue");
  cplx w = std::exp(-(s / 2.0) * std::log(gamma));
  return s.real() > 0.0 ? h.eval_inside(w) : h.eval_outside(w);
}

FactorizationValue HalfPlaneFactorization::evaluate(cplx s) const {
  if (!(gamma > 1.0))
    throw std::invalid_argument("factorization needs gamma > 1");
  if (s.real() == 0.0)
    throw std::domain_error("Re(s) = 0 puts gamma^{-s/2} on the unit circle "
                            "where the pair does not glue");
  FactorizationValue out;
  out.side = s.real() > 0.0 ? Side::inside : Side::outside;
  cplx w = std::exp(-(s / 2.0) * std::log(gamma));
  out.hyper_factor =
      out.side == Side::inside ? hyper.eval_inside(w) : hyper.eval_outside(w);
  out.scalar_factor = scalar(s);
  out.formal = !scalar_converges(s);
  out.value = out.hyper_factor * out.scalar_factor;
  return out;
}

}  // namespace fracspec
