#pragma once
#include <complex>
#include <string>

namespace fracspec {

enum class ZetaMethod { direct_sum, closed_form, factorized };

std::string to_string(ZetaMethod m);

// one zeta evaluation. `value` is the best estimate: for direct sums over a
// spectrum with a fitted growth law it includes the integral tail correction,
// and tail_estimate is then the uncertainty of that correction; for plain
// truncated sums value == partial_sum and tail_estimate bounds the remainder.
// partial_sum is always the raw truncated sum (monotone in the cutoff for
// real s and positive spectra), so convergence stays observable.
struct ZetaValue {
  std::complex<double> s;
  std::complex<double> value;
  std::complex<double> partial_sum;
  long terms_used = 0;
  double tail_estimate = 0.0;
  ZetaMethod method = ZetaMethod::direct_sum;
};

}  // namespace fracspec
