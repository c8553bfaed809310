#pragma once

// The quadratic renormalization map on projective 2-space whose dynamics
// carry the spectral data of the self-similar string operators.  Points are
// homogeneous triples [x : y : z]; the map is
//
//   rho([x, y, z]) = [ x*u - z^2/delta,  delta*y*u - delta*z^2,  z^2 ],
//   u = x + y/delta,
//
// degree 2 and defined everywhere except the single indeterminacy point
// [1 : -delta : 0], where all three components vanish.  The line
// D = { x + y/delta = 0 } collapses in one step, and the fixed point
// x0 = [0 : 1 : 0] attracts the orbits the spectral theory cares about.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "fracspec/ifs_measure.hpp"

namespace fracspec {

using cplx = std::complex<double>;

struct ProjPoint {
  std::array<cplx, 3> h;

  // Scale so the largest-modulus coordinate is 1.  Throws on [0,0,0].
  ProjPoint normalized() const;
};

// Chordal distance on CP^2: ||p ^ q|| / (||p|| ||q||), scale-invariant,
// zero iff the two triples are proportional.
double proj_distance(const ProjPoint& p, const ProjPoint& q);

struct IndeterminacyError : std::runtime_error {
  int step;  // which iterate hit the indeterminacy point (0 = the input)
  explicit IndeterminacyError(int step_);
};

ProjPoint rho_apply(const ProjPoint& pt, double delta);
ProjPoint rho_apply(const ProjPoint& pt, const SLConstants& c);

// p-fold composition; IndeterminacyError.step reports the failing iterate.
ProjPoint rho_iterate(const ProjPoint& pt, int p, double delta);

// Is pt on the collapsing line D = { x + y/delta = 0 }?
bool in_D(const ProjPoint& pt, double delta, double tol = 1e-12);

enum class OrbitOutcome {
  converged_x0,      // reached the attracting fixed point [0 : 1 : 0]
  fixed_point,       // stalled at some other fixed point (e.g. [1 : 0 : 0])
  cycling,           // revisited a recent point without being fixed
  budget_exhausted,  // none of the above within max_iter steps
};

const char* to_string(OrbitOutcome o);

struct OrbitReport {
  ProjPoint start;
  ProjPoint terminal;
  int steps = 0;
  OrbitOutcome outcome = OrbitOutcome::budget_exhausted;
};

// Iterate rho from `pt` and classify where the orbit goes.  delta > 1 is
// allowed (useful as a diagnostic even though the string construction only
// produces delta <= 1).  IndeterminacyError propagates with its step index.
OrbitReport basin_probe(const ProjPoint& pt, double delta, int max_iter = 200);

}  // namespace fracspec
