#pragma once
#include <complex>
#include <vector>

#include "fracspec/zeta_value.hpp"

namespace fracspec {

using cplx = std::complex<double>;

// polynomial with R(0) = 0 and multiplier c = R'(0) > 1; d_R is the
// similarity exponent 2 log N / log c of its preimage tree
struct Poly1 {
  std::vector<double> coefficients;  // a0, a1, a2, ... ; a0 must be 0
  int degree = 0;
  double c = 0.0;
  double d_R = 0.0;
};

Poly1 make_poly(const std::vector<double>& coefficients);
Poly1 make_decimation_poly();  // z(5 - 4z)

cplx poly_eval(const Poly1& p, cplx z);

struct PreimageLevel {
  int level = 0;
  std::vector<cplx> points;  // all of R^{-n}{z0}, N^n entries
};

// exact quadratic-formula preimage tree of depth n (degree 2 only);
// materialization capped at n = 22
PreimageLevel preimages(const Poly1& p, cplx z0, int n);

struct PolyZetaOptions {
  int max_level = 24;          // hard stop (2^n leaves per level)
  double increment_tol = 1e-10;
  bool formal_truncation = false;  // skip the Re(s) > d_R domain check and
                                   // return a fixed-depth partial sum with
                                   // infinite tail (formal manipulation
                                   // outside the convergence half-plane)
};

// zeta of the polynomial at base point z0:
//   lim_n  sum over R^{-n}{z0} of (c^n z)^{-s/2}   (principal branch).
// Stops at the first level whose increment is below increment_tol (or at
// max_level, reporting the unconverged remainder in tail_estimate). Leaves
// numerically equal to 0 (|z| < 1e-14) are excluded; their count per final
// level is written to *zero_leaves_excluded when given.
ZetaValue zeta_poly_truncated(const Poly1& p, cplx z0, cplx s,
                              const PolyZetaOptions& opts = {},
                              long* zero_leaves_excluded = nullptr);

}  // namespace fracspec
