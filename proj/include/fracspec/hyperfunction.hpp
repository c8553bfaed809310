#pragma once

// Boundary-value pairs on the unit circle and the half-plane factorizations
// built from them.  A Hyperfunction here is the concrete object: one analytic
// representative inside |z| < 1, one outside, glued formally across the
// circle.  The geometric series for 1/(1-z) converges on exactly one side of
// the circle at a time, which is the whole point: substituting z = gamma^{-s/2}
// turns "which side" into "which half-plane of s".

#include <complex>
#include <functional>
#include <string>

namespace fracspec {

using cplx = std::complex<double>;

enum class Side { inside, outside };

struct Hyperfunction {
  std::function<cplx(cplx)> upper;       // representative valid on |z| < 1
  std::function<cplx(cplx)> lower;       // representative valid on |z| > 1
  std::function<bool(cplx)> inside_ok;   // domain predicate for `upper`
  std::function<bool(cplx)> outside_ok;  // domain predicate for `lower`
  std::string description;

  cplx eval_inside(cplx z) const;   // throws std::domain_error outside |z| < 1
  cplx eval_outside(cplx z) const;  // throws std::domain_error inside |z| <= 1
};

// The standard pair [1/(1-z), 1/(z-1)] whose jump across the circle is the
// unit Dirac comb generator.
Hyperfunction delta_T();

// Partial sums of the two one-sided geometric expansions:
//   inside:  sum_{p=0}^{P}   w^p     (converges iff |w| < 1)
//   outside: sum_{p=-P}^{-1} w^p     (converges iff |w| > 1)
// Evaluating the wrong side is permitted; it simply diverges, and tests use
// that as the divergence witness.
cplx bilateral_partial(cplx w, int P, Side side);

// Exact remainder bound for the matching side's geometric tail.
// inside:  |w|^{P+1} / (1 - |w|);  outside: |w|^{-(P+1)} / (1 - 1/|w|).
// Throws std::domain_error if |w| is on the wrong side (or on the circle).
double geometric_tail_bound(double abs_w, int P, Side side);

// Evaluate h at w = gamma^{-s/2}, picking the representative by the sign of
// Re(s): Re(s) > 0 lands inside the circle, Re(s) < 0 outside.  Re(s) = 0 is
// the circle itself where the pair does not glue -> std::domain_error.
cplx substitute_gamma(const Hyperfunction& h, double gamma, cplx s);

struct FactorizationValue {
  cplx value;         // hyper_factor * scalar_factor
  Side side;          // which representative the substitution selected
  bool formal;        // true when the scalar factor's series does not
                      // converge at this s (the product is then a formal
                      // analytic continuation, not a convergent sum)
  cplx hyper_factor;
  cplx scalar_factor;
};

// A zeta-type function presented as (boundary pair at gamma^{-s/2}) x (scalar
// factor of s).  The scalar factor usually converges only on a right
// half-plane; `scalar_converges` records where.
struct HalfPlaneFactorization {
  Hyperfunction hyper;
  double gamma = 0.0;
  std::function<cplx(cplx)> scalar;
  std::function<bool(cplx)> scalar_converges;
  std::string label;

  FactorizationValue evaluate(cplx s) const;
};

}  // namespace fracspec
