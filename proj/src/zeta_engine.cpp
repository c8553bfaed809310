#include "fracspec/zeta_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "fracspec/sg_decimation.hpp"

namespace fracspec {

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx cpow(double base, cplx e) {  // base > 0
  return std::exp(e * std::log(base));
}
}  // namespace

std::string to_string(ZetaMethod m) {
  switch (m) {
    case ZetaMethod::direct_sum: return "direct_sum";
    case ZetaMethod::closed_form: return "closed_form";
    case ZetaMethod::factorized: return "factorized";
  }
  return "?";
}

GrowthFit fit_growth(const std::vector<double>& values) {
  const size_t K = values.size();
  if (K < 20)
    throw std::invalid_argument("growth fit needs at least 20 eigenvalues");
  size_t j0 = std::max<size_t>(1, K / 10);  // top decade, 1-based
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t cnt = 0;
  for (size_t j = j0; j <= K; ++j) {
    if (!(values[j - 1] > 0.0))
      throw std::invalid_argument("growth fit needs positive eigenvalues");
    double x = std::log(double(j)), y = std::log(values[j - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double det = cnt * sxx - sx * sx;
  GrowthFit fit;
  fit.beta = (cnt * sxy - sx * sy) / det;
  fit.C = std::exp((sy - fit.beta * sx) / cnt);
  for (size_t j = j0; j <= K; ++j) {
    double model = fit.C * std::pow(double(j), fit.beta);
    fit.max_rel_dev =
        std::max(fit.max_rel_dev, std::abs(values[j - 1] - model) / model);
  }
  return fit;
}

namespace {

// shared truncation machinery over an expanded (per-eigenvalue) ascending
// list; see the header comment on ZetaValue for the value/partial split
ZetaValue zeta_from_values(const std::vector<double>& vals, cplx s) {
  ZetaValue zv;
  zv.s = s;
  zv.method = ZetaMethod::direct_sum;
  zv.terms_used = long(vals.size());
  cplx sum = 0.0;
  if (s.imag() == 0.0) {
    double acc = 0.0, sig = s.real();
    for (double v : vals) acc += std::pow(v, -sig / 2.0);
    sum = acc;
  } else {
    for (double v : vals) sum += std::exp(-(s / 2.0) * std::log(v));
  }
  zv.partial_sum = sum;
  zv.value = sum;
  if (vals.size() < 20) {
    zv.tail_estimate = kNaN;  // too few terms to even fit a growth law
    return zv;
  }
  GrowthFit fit = fit_growth(vals);
  double sig = s.real();
  double e = fit.beta * sig / 2.0;  // tail terms decay like j^{-e}
  if (!(fit.beta > 0.0) || !(e > 1.0)) {
    zv.tail_estimate = kInf;  // series divergent (or fit degenerate)
    return zv;
  }
  double J = double(vals.size());
  // midpoint integral of the fitted law over (J+1/2, inf)
  double corr = std::pow(fit.C, -sig / 2.0) * std::pow(J + 0.5, 1.0 - e) / (e - 1.0);
  double fhatJ = std::pow(fit.C * std::pow(J, fit.beta), -sig / 2.0);
  double unc = 0.5 * fhatJ + (sig / 2.0) * fit.max_rel_dev * corr;
  if (s.imag() == 0.0) {
    zv.value = sum + corr;
    zv.tail_estimate = unc;
  } else {
    // phases unknown: keep the partial sum, report the modulus bound
    zv.tail_estimate = corr + unc;
  }
  return zv;
}

}  // namespace

ZetaValue zeta_spectral(const SpectrumList& spec, cplx s, double cutoff) {
  if (cutoff < 0.0) throw std::invalid_argument("cutoff must be >= 0");
  std::vector<double> vals;
  vals.reserve(spec.entries.size());
  for (const auto& e : spec.entries) {
    if (e.value < -1e-9)
      throw std::invalid_argument("negative eigenvalue in spectrum: " +
                                  std::to_string(e.value));
    if (e.value <= cutoff) continue;
    for (int r = 0; r < e.multiplicity; ++r) vals.push_back(e.value);
  }
  std::sort(vals.begin(), vals.end());
  if (vals.empty()) throw std::invalid_argument("no eigenvalues above cutoff");
  return zeta_from_values(vals, s);
}

ZetaValue zeta_S(const GeneratingSet& S, cplx s) {
  return zeta_from_values(S.values, s);
}

ZetaValue zeta_rho(const GeneratingSet& S, cplx s) {
  cplx w = cpow(S.constants.gamma, -s / 2.0);
  if (std::abs(1.0 - w) < 1e-12)
    throw std::domain_error("pole of the scaling resummation: gamma^{-s/2} = 1");
  ZetaValue zs = zeta_S(S, s);
  cplx f = 1.0 / (1.0 - w);
  ZetaValue zv;
  zv.s = s;
  zv.method = ZetaMethod::closed_form;
  zv.value = f * zs.value;
  zv.partial_sum = f * zs.partial_sum;
  zv.tail_estimate = std::abs(f) * zs.tail_estimate;
  zv.terms_used = zs.terms_used;
  return zv;
}

ZetaValue zeta_rho_direct(const GeneratingSet& S, cplx s, int p_max) {
  if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
  ZetaValue zs = zeta_S(S, s);
  cplx w = cpow(S.constants.gamma, -s / 2.0);
  cplx sum = 0.0, wp = 1.0;
  for (int p = 0; p <= p_max; ++p) {
    sum += wp * zs.partial_sum;
    wp *= w;
  }
  double aw = std::abs(w);
  ZetaValue zv;
  zv.s = s;
  zv.method = ZetaMethod::direct_sum;
  zv.value = sum;
  zv.partial_sum = sum;
  zv.terms_used = zs.terms_used * (p_max + 1);
  if (aw < 1.0) {
    double lam_tail = std::abs(zs.value - zs.partial_sum) + zs.tail_estimate;
    zv.tail_estimate = std::pow(aw, p_max + 1) / (1.0 - aw) * std::abs(zs.partial_sum) +
                       lam_tail / (1.0 - aw);
  } else {
    zv.tail_estimate = kInf;  // scaling sum itself divergent here
  }
  return zv;
}

ZetaValue zeta_Hn_closed(const GeneratingSet& S, int n, cplx s) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  ZetaValue zr = zeta_rho(S, s);
  cplx f = cpow(S.constants.gamma, double(n) * s / 2.0);
  zr.value *= f;
  zr.partial_sum *= f;
  zr.tail_estimate *= std::abs(f);
  return zr;
}

FactorizationValue zeta_Hinf(const GeneratingSet& S, cplx s) {
  GrowthFit fit = fit_growth(S.values);
  double sigma_min = 2.0 / fit.beta;  // where zeta_S stops converging
  HalfPlaneFactorization f;
  f.hyper = delta_T();
  f.gamma = S.constants.gamma;
  f.label = "zeta_Hinf = [comb pair](gamma^{-s/2}) * zeta_S(s)";
  f.scalar = [&S](cplx ss) { return zeta_S(S, ss).value; };
  f.scalar_converges = [sigma_min](cplx ss) { return ss.real() > sigma_min; };
  return f.evaluate(s);
}

// ---- gasket side ------------------------------------------------------------

namespace {

// scaled branch limits over the class W_j(z0): W_0 = {z0}, W_j = plus-branch
// images of the full preimage level j-1 (the minus-branch children repeat
// their parent's eigenvalue one 5-shift down, so only the plus closure is new)
std::vector<std::vector<double>> class_limits(double z0, int j_max) {
  std::vector<std::vector<double>> lims(j_max + 1);
  lims[0] = {scaled_branch_limit(z0)};
  std::vector<double> level = {z0};  // R^{-i}(z0), i = j-1
  for (int j = 1; j <= j_max; ++j) {
    lims[j].reserve(level.size());
    for (double w : level) {
      double root = std::sqrt(25.0 - 16.0 * w);
      lims[j].push_back(scaled_branch_limit((5.0 + root) / 8.0));
    }
    if (j == j_max) break;
    std::vector<double> next;
    next.reserve(2 * level.size());
    for (double w : level) {
      double root = std::sqrt(25.0 - 16.0 * w);
      next.push_back(2.0 * w / (5.0 + root));
      next.push_back((5.0 + root) / 8.0);
    }
    level = std::move(next);
  }
  return lims;
}

const double kGasketDim = std::log(9.0) / std::log(5.0);

}  // namespace

ZetaValue sg_zeta_direct(cplx s, int L_max, double C_norm) {
  if (!(s.real() > kGasketDim))
    throw std::domain_error("Re(s) must exceed log 9 / log 5 = " +
                            std::to_string(kGasketDim));
  if (L_max < 3 || L_max > 12)
    throw std::invalid_argument("L_max must be in [3, 12]");
  if (!(C_norm > 0.0)) throw std::invalid_argument("C_norm must be positive");

  auto lim34 = class_limits(0.75, L_max - 1);
  auto lim54 = class_limits(1.25, L_max - 1);
  const cplx half = -s / 2.0;
  const double log5 = std::log(5.0), logC = std::log(C_norm);

  long terms = 0;
  std::vector<cplx> inc(L_max + 1, cplx(0.0));
  for (int L = 1; L <= L_max; ++L) {
    cplx dl = 0.0;
    for (int m = 1; m <= L; ++m) {
      int j = L - m;
      double p3 = std::pow(3.0, m - 1);
      double mult34 = (p3 + 3.0) / 2.0;
      double mult54 = (m >= 2) ? (p3 - 1.0) / 2.0 : 0.0;
      for (double r : lim34[j]) {
        dl += mult34 * std::exp(half * (logC + L * log5 + std::log(r)));
        ++terms;
      }
      if (mult54 > 0.0)
        for (double r : lim54[j]) {
          dl += mult54 * std::exp(half * (logC + L * log5 + std::log(r)));
          ++terms;
        }
    }
    inc[L] = dl;
  }

  ZetaValue zv;
  zv.s = s;
  zv.method = ZetaMethod::direct_sum;
  zv.terms_used = terms;
  cplx sum = 0.0;
  for (int L = 1; L <= L_max; ++L) sum += inc[L];
  zv.value = sum;
  zv.partial_sum = sum;
  double a1 = std::abs(inc[L_max]), a0 = std::abs(inc[L_max - 1]);
  double r = (a0 > 0.0) ? a1 / a0 : 1.0;
  zv.tail_estimate = (r < 1.0) ? 2.0 * a1 * r / (1.0 - r) : kInf;
  return zv;
}

ZetaValue sg_zeta_factorized(cplx s, const PolyZetaOptions& opts) {
  if (!opts.formal_truncation && !(s.real() > kGasketDim))
    throw std::domain_error("Re(s) must exceed log 9 / log 5 = " +
                            std::to_string(kGasketDim));
  cplx q = cpow(5.0, -s / 2.0);
  if (std::abs(1.0 - 3.0 * q) < 1e-12)
    throw std::domain_error(
        "pole: 1 - 3 * 5^{-s/2} = 0 (the spectral-dimension line)");
  if (std::abs(1.0 - q) < 1e-12)
    throw std::domain_error("pole: 5^{-s/2} = 1");

  Poly1 R = make_decimation_poly();
  ZetaValue z34 = zeta_poly_truncated(R, 0.75, s, opts);
  ZetaValue z54 = zeta_poly_truncated(R, 1.25, s, opts);
  cplx f1 = (q / 2.0) * (1.0 / (1.0 - 3.0 * q) + 3.0 / (1.0 - q));
  cplx f2 = (q * q / 2.0) * (3.0 / (1.0 - 3.0 * q) - 1.0 / (1.0 - q));

  ZetaValue zv;
  zv.s = s;
  zv.method = ZetaMethod::factorized;
  zv.value = f1 * z34.value + f2 * z54.value;
  zv.partial_sum = f1 * z34.partial_sum + f2 * z54.partial_sum;
  zv.tail_estimate =
      std::abs(f1) * z34.tail_estimate + std::abs(f2) * z54.tail_estimate;
  zv.terms_used = z34.terms_used + z54.terms_used;
  return zv;
}

SgCalibration sg_calibrate() {
  SgCalibration cal;
  double target = sg_zeta_factorized(4.0).value.real();  // = 8/75
  cal.res_C1 =
      std::abs(sg_zeta_direct(4.0, 8, 1.0).value.real() - target) / target;
  cal.res_C32 =
      std::abs(sg_zeta_direct(4.0, 8, 1.5).value.real() - target) / target;
  cal.chosen_C = (cal.res_C1 <= cal.res_C32) ? 1.0 : 1.5;
  return cal;
}

FactorizationValue infinite_sg_zeta(cplx s) {
  HalfPlaneFactorization f;
  f.hyper = delta_T();
  f.gamma = 5.0;
  f.label = "zeta_blowup = [comb pair](5^{-s/2}) * zeta_cell(s)";
  f.scalar = [](cplx ss) {
    PolyZetaOptions o;
    o.formal_truncation = !(ss.real() > kGasketDim);
    return sg_zeta_factorized(ss, o).value;
  };
  f.scalar_converges = [](cplx ss) { return ss.real() > kGasketDim; };
  return f.evaluate(s);
}

// ---- classical references ---------------------------------------------------

cplx riemann_reference(cplx s) {
  if (!(s.real() > 1.0))
    throw std::domain_error("Euler-Maclaurin reference needs Re(s) > 1");
  const double N = 20.0;
  cplx sum = 0.0;
  for (int n = 1; n < 20; ++n) sum += cpow(double(n), -s);
  sum += cpow(N, 1.0 - s) / (s - 1.0);
  sum += 0.5 * cpow(N, -s);
  // B_{2k}/(2k)! for k = 1..6
  const double bfac[6] = {1.0 / 12.0,       -1.0 / 720.0,
                          1.0 / 30240.0,    -1.0 / 1209600.0,
                          1.0 / 47900160.0, -691.0 / 1307674368000.0};
  cplx poch = s;  // s (s+1) ... (s+top)
  int top = 0;
  for (int k = 1; k <= 6; ++k) {
    while (top < 2 * k - 2) {
      ++top;
      poch *= s + double(top);
    }
    sum += bfac[k - 1] * poch * cpow(N, -(s + double(2 * k - 1)));
  }
  return sum;
}

double riemann_identity_check(const GeneratingSet& S, cplx s) {
  if (S.constants.alpha != 0.5)
    throw std::invalid_argument(
        "the classical identity needs the midpoint measure (alpha = 1/2)");
  cplx lhs = cpow(M_PI, s) * zeta_rho(S, s).value;
  return std::abs(lhs - riemann_reference(s));
}

// ---- fractal strings --------------------------------------------------------

std::vector<double> cantor_string_lengths(int n_max) {
  if (n_max < 1 || n_max > 22)
    throw std::invalid_argument("n_max must be in [1, 22]");
  std::vector<double> out;
  out.reserve((size_t(1) << n_max) - 1);
  long mult = 1;
  double len = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    len /= 3.0;
    for (long i = 0; i < mult; ++i) out.push_back(len);
    mult *= 2;
  }
  return out;
}

SpectrumList assemble_string_spectrum(const std::vector<double>& lengths,
                                      int j_max) {
  if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
  if (lengths.empty()) throw std::invalid_argument("no lengths");
  if (double(lengths.size()) * j_max > 2e6)
    throw std::invalid_argument(
        "assembled spectrum too large; use the folded string_factorization");
  std::vector<double> vals;
  vals.reserve(lengths.size() * size_t(j_max));
  for (double l : lengths) {
    if (!(l > 0.0)) throw std::invalid_argument("lengths must be positive");
    for (int j = 1; j <= j_max; ++j) {
      double f = M_PI * j / l;
      vals.push_back(f * f);
    }
  }
  std::sort(vals.begin(), vals.end());
  // relative grouping (exact collisions like 3/(1/3) = 1/(1/9) do occur)
  SpectrumList out;
  out.provenance = Provenance::oracle;
  for (double v : vals) {
    if (!out.entries.empty() &&
        v - out.entries.back().value <= 1e-12 * v)
      out.entries.back().multiplicity += 1;
    else
      out.entries.push_back({v, 1});
  }
  return out;
}

namespace {

StringFactorizationReport string_report(const std::map<double, long>& folded,
                                        cplx direct, double direct_tail,
                                        cplx s) {
  cplx len_sum = 0.0;
  for (const auto& [l, cnt] : folded) len_sum += double(cnt) * cpow(l, s);
  StringFactorizationReport rep;
  rep.direct = direct;
  rep.direct_tail = direct_tail;
  rep.factorized = cpow(M_PI, -s) * riemann_reference(s) * len_sum;
  rep.residual = std::abs(rep.direct - rep.factorized);
  return rep;
}

}  // namespace

StringFactorizationReport string_factorization(
    const std::vector<double>& lengths, int j_max, cplx s) {
  if (!(s.real() > 1.0))
    throw std::domain_error("frequency-side sum needs Re(s) > 1");
  if (j_max < 10) throw std::invalid_argument("j_max must be >= 10");
  std::map<double, long> folded;
  for (double l : lengths) {
    if (!(l > 0.0)) throw std::invalid_argument("lengths must be positive");
    ++folded[l];
  }
  // truncated j-sum with midpoint tail, shared by every length
  cplx jsum = 0.0;
  for (int j = 1; j <= j_max; ++j) jsum += cpow(double(j), -s);
  double J = j_max + 0.5;
  jsum += cpow(J, 1.0 - s) / (s - 1.0);
  // midpoint-rule error bound: integral of |f''|/24 past J
  double sig = s.real();
  double jerr = std::abs(s * (s + 1.0)) / 24.0 * std::pow(J, -sig - 1.0) / (sig + 1.0);

  cplx direct = 0.0;
  double dtail = 0.0;
  for (const auto& [l, cnt] : folded) {
    cplx scale = double(cnt) * cpow(M_PI / l, -s);
    direct += scale * jsum;
    dtail += std::abs(scale) * jerr;
  }
  return string_report(folded, direct, dtail, s);
}

StringFactorizationReport string_factorization(const SpectrumList& assembled,
                                               const std::vector<double>& lengths,
                                               cplx s) {
  if (!(s.real() > 1.0))
    throw std::domain_error("frequency-side sum needs Re(s) > 1");
  cplx direct = 0.0;
  for (const auto& e : assembled.entries) {
    if (!(e.value > 0.0))
      throw std::invalid_argument("assembled spectrum must be positive");
    direct += double(e.multiplicity) * cpow(e.value, -s / 2.0);
  }
  std::map<double, long> folded;
  for (double l : lengths) ++folded[l];
  // no per-length tail correction possible: the cutoff structure is lost
  return string_report(folded, direct, kNaN, s);
}

}  // namespace fracspec
