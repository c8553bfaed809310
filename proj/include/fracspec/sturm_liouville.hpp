#pragma once

// Second-order string operators d/dmu d/dx for the self-similar measure mu,
// handled through 2x2 transfer matrices.  The propagator carries (f, f')
// across [0,1] through alternating mass kicks and gap drifts; its entries at
// rescaled arguments generate the renormalization dynamics (see
// renorm_dynamics.hpp), its secular combination vanishes exactly on the
// generating set S, and the full spectra of the operator family H_n are
// gamma-power translates of S.

#include <complex>
#include <optional>
#include <vector>

#include "fracspec/ifs_measure.hpp"
#include "fracspec/renorm_dynamics.hpp"
#include "fracspec/spectrum.hpp"

namespace fracspec {

using cplx = std::complex<double>;

struct Propagator {
  cplx a, b, c, d;  // [[a, b], [c, d]], maps (f, f') at 0 to (f, f') at 1
  cplx det() const { return a * d - b * c; }
};

Propagator mat_mul(const Propagator& lhs, const Propagator& rhs);

// Transfer matrix of the discrete string at spectral parameter lambda:
// kick(m0*lambda), then for each subsequent grid point drift(dx) followed by
// kick(m*lambda).  Every factor has determinant exactly 1.
Propagator propagator(cplx lambda, const MeasureGrid& grid);

// Entries of the symmetric Dirichlet-to-Neumann form of the chain:
// q00 = a/b, q11 = d/b, q01 = -1/b.  Throws std::runtime_error when
// |b(lambda)| < 1e-12 (lambda is then a Dirichlet eigenvalue of the chain
// and the form has a pole).
struct TraceForm {
  cplx q00, q01, q11;
};

TraceForm trace_form(cplx lambda, const MeasureGrid& grid);

// Candidate embeddings of the propagator into projective space.  The
// letters name which entries fill the slots: e.g. AD1 = [a, d, 1],
// ADB = [a, d, b].  phi_calibrate measures the functional-equation residual
// rho(phi(lambda)) vs phi(gamma*lambda) for all four and picks the winner
// (AD1 for this map family).
enum class PhiConvention { AD1, DA1, ADB, DAB };

ProjPoint phi(cplx lambda, const MeasureGrid& grid,
              PhiConvention convention = PhiConvention::AD1);

struct PhiCalibration {
  PhiConvention chosen;
  std::array<double, 4> residuals;  // indexed by PhiConvention order
};

PhiCalibration phi_calibrate(const SLConstants& c, int level);

// First k elements of the generating set S: the zeros of the secular
// function g(lambda) = a(lambda/gamma) + delta^{-1} d(lambda/gamma), found
// by an adaptive scan in sqrt(lambda) (bracket by stepping a tenth of the
// last root gap, then bisect to 1e-10 relative).  min_rel_gap and
// max_gap_ratio monitor how close the scan came to missing a root.
struct GeneratingSet {
  std::vector<double> values;  // ascending, length k
  SLConstants constants;
  int level = 0;
  double min_rel_gap = 0.0;    // smallest (l_{j+1}-l_j)/l_{j+1} over the list
  double max_gap_ratio = 0.0;  // largest ratio of consecutive sqrt-gaps
  long evaluations = 0;        // secular-function evaluations spent
};

GeneratingSet generating_set(int k, const SLConstants& c, int level);

// Spectrum of H_n (finite n) or of the fully extended operator (n absent)
// within the scaling window p in [p_min, p_max]: values gamma^p * l for l in
// S, each with multiplicity 1.  Finite n requires p_min >= -n.
SpectrumList spectrum_Hn(std::optional<int> n, int p_min, int p_max,
                         const GeneratingSet& S);

// Independent check on the scan: lowest k Dirichlet eigenvalues of the
// discrete string via a symmetric tridiagonal eigensolve.  Uses plain
// half-cell mass lumping (NOT the centroid-split grid), so it shares no
// quadrature choices with the propagator path.  Requires level >= 8.
SpectrumList eigensolve_H0_oracle(int k, int level, const SLConstants& c);

// Dilate an H_0 eigenfunction to the blown-up interval [0, alpha^{-p}]:
// points alpha^{-p} x_i, values unchanged, masses b^{-p} m_i.  The result is
// an eigenfunction of H_p with eigenvalue gamma^{-p} lambda.
struct ExtendedEigenfunction {
  std::vector<double> points;
  std::vector<double> values;
  std::vector<double> masses;
};

ExtendedEigenfunction eigenfunction_extend(const std::vector<double>& values,
                                           const MeasureGrid& grid, int p,
                                           const SLConstants& c);

// Discrete Dirichlet Rayleigh quotient of sampled values on a weighted grid.
double rayleigh_quotient(const std::vector<double>& points,
                         const std::vector<double>& values,
                         const std::vector<double>& masses);

// Self-similarity of the propagator as matrices: compares the transfer
// matrix on the stretched level-level_lhs grid (points alpha^{-n} x_i,
// masses b^{-n} m_i) at lambda against the conjugated unit-interval matrix
// D_{alpha^n} Gamma^{(level_rhs)}(gamma^n lambda) D_{alpha^{-n}}.  Returns
// the max relative entry deviation; identical levels agree to rounding.
double self_similar_rescaling_check(double lambda, int n, int level_lhs,
                                    int level_rhs, const SLConstants& c);

}  // namespace fracspec
