#include "fracspec/sturm_liouville.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracspec {

Propagator mat_mul(const Propagator& lhs, const Propagator& rhs) {
  return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
          lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

namespace {

template <typename T>
struct M2 {
  T a, b, c, d;
};

// kick(m0*lambda), then (drift, kick) per point, accumulated in place.
// drift(dx) on the left:  a += dx*c, b += dx*d
// kick(m)   on the left:  c -= m*a,  d -= m*b
template <typename T>
M2<T> propagate_impl(T lambda, const std::vector<double>& x,
                     const std::vector<double>& m) {
  M2<T> g{T(1), T(0), T(0), T(1)};
  T k = m[0] * lambda;
  g.c -= k * g.a;
  g.d -= k * g.b;
  for (size_t i = 1; i < x.size(); ++i) {
    double dx = x[i] - x[i - 1];
    g.a += dx * g.c;
    g.b += dx * g.d;
    k = m[i] * lambda;
    g.c -= k * g.a;
    g.d -= k * g.b;
  }
  return g;
}

}  // namespace

Propagator propagator(cplx lambda, const MeasureGrid& grid) {
  if (grid.points.size() < 2 || grid.points.size() != grid.masses.size())
    throw std::invalid_argument("grid needs matching points/masses, >= 2 points");
  if (lambda.imag() == 0.0) {
    auto g = propagate_impl<double>(lambda.real(), grid.points, grid.masses);
    return {g.a, g.b, g.c, g.d};
  }
  auto g = propagate_impl<cplx>(lambda, grid.points, grid.masses);
  return {g.a, g.b, g.c, g.d};
}

TraceForm trace_form(cplx lambda, const MeasureGrid& grid) {
  Propagator g = propagator(lambda, grid);
  if (std::abs(g.b) < 1e-12)
    throw std::runtime_error(
        "trace form pole: b(lambda) vanishes (chain Dirichlet eigenvalue)");
  return {g.a / g.b, -1.0 / g.b, g.d / g.b};
}

ProjPoint phi(cplx lambda, const MeasureGrid& grid, PhiConvention convention) {
  Propagator g = propagator(lambda, grid);
  switch (convention) {
    case PhiConvention::AD1: return {{g.a, g.d, 1.0}};
    case PhiConvention::DA1: return {{g.d, g.a, 1.0}};
    case PhiConvention::ADB: return {{g.a, g.d, g.b}};
    case PhiConvention::DAB: return {{g.d, g.a, g.b}};
  }
  throw std::logic_error("bad convention");
}

PhiCalibration phi_calibrate(const SLConstants& c, int level) {
  MeasureGrid grid = build_grid(level, c);
  const double probes[] = {0.2, 0.5, 0.9};
  PhiCalibration cal;
  double best = std::numeric_limits<double>::infinity();
  for (int ci = 0; ci < 4; ++ci) {
    auto conv = static_cast<PhiConvention>(ci);
    double worst = 0.0;
    try {
      for (double lam : probes) {
        ProjPoint lhs = rho_apply(phi(lam, grid, conv), c);
        ProjPoint rhs = phi(c.gamma * lam, grid, conv);
        worst = std::max(worst, proj_distance(lhs, rhs));
      }
    } catch (const std::exception&) {
      worst = std::numeric_limits<double>::infinity();
    }
    cal.residuals[ci] = worst;
    if (worst < best) {
      best = worst;
      cal.chosen = conv;
    }
  }
  return cal;
}

namespace {

struct SecularScanner {
  const MeasureGrid* grid;
  double alpha;
  long evals = 0;
  long budget = 0;
  int k_target = 0;
  const std::vector<double>* roots;

  // secular combination alpha*a + (1-alpha)*d at mu = u^2 (real fast path);
  // proportional to a(lambda/gamma) + delta^{-1} d(lambda/gamma), lambda = gamma*mu
  double operator()(double u) {
    if (++evals > budget)
      throw std::runtime_error(
          "secular scan budget exhausted after " + std::to_string(evals) +
          " evaluations; found " + std::to_string(roots->size()) + " of " +
          std::to_string(k_target) + " roots (last near lambda = " +
          std::to_string(roots->empty() ? 0.0 : roots->back() * roots->back()) +
          ")");
    auto g = propagate_impl<double>(u * u, grid->points, grid->masses);
    return alpha * g.a + (1.0 - alpha) * g.d;
  }
};

struct Bracket {
  double root, uhi, fhi;
};

// bisect [ulo, uhi] with f(ulo)=flo, f(uhi)=fhi of opposite sign, to
// 1e-10 relative in lambda = u^2 (so 5e-11 relative in u)
Bracket bisect(SecularScanner& h, double ulo, double uhi, double flo,
               double fhi) {
  for (int it = 0; it < 200 && (uhi - ulo) > 5e-11 * uhi; ++it) {
    double um = 0.5 * (ulo + uhi);
    double fm = h(um);
    if ((fm < 0.0) == (flo < 0.0)) {
      ulo = um;
      flo = fm;
    } else {
      uhi = um;
      fhi = fm;
    }
  }
  return {0.5 * (ulo + uhi), uhi, fhi};
}

}  // namespace

GeneratingSet generating_set(int k, const SLConstants& c, int level) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (level < 6 || level > 24)
    throw std::invalid_argument("grid level must be in [6, 24]");
  MeasureGrid grid = build_grid(level, c);

  std::vector<double> ur;  // roots in u = sqrt(mu)
  SecularScanner h{&grid, c.alpha, 0, 10000 + 1000L * k, k, &ur};
  int rescans = 0;

  // first root: geometric probe until the first sign change
  double uprev = 0.0, fprev = h(0.0);
  double ucur = 0.25;
  Bracket b{};
  while (true) {
    double fcur = h(ucur);
    if ((fcur < 0.0) != (fprev < 0.0) || fcur == 0.0) {
      b = bisect(h, uprev, ucur, fprev, fcur);
      ur.push_back(b.root);
      break;
    }
    uprev = ucur;
    fprev = fcur;
    ucur *= 1.25;
  }

  // walk upward in steps of a tenth of the last gap; gaps only widen for
  // this family, so the step cannot jump a full gap -- but a ratio monitor
  // rescans anyway if consecutive gaps look inconsistent
  double upos = b.uhi, fpos = b.fhi;
  double du = ur[0] / 10.0;
  while (int(ur.size()) < k) {
    double unext = upos + du;
    double fnext = h(unext);
    if ((fnext < 0.0) == (fpos < 0.0) && fnext != 0.0) {
      upos = unext;
      fpos = fnext;
      continue;
    }
    b = bisect(h, upos, unext, fpos, fnext);
    double last = ur.back();
    ur.push_back(b.root);
    size_t n = ur.size();
    if (n >= 3) {
      double gnow = ur[n - 1] - ur[n - 2];
      double gprev = ur[n - 2] - ur[n - 3];
      if (gnow > 2.5 * gprev && rescans < 64) {
        // suspiciously wide: sweep the gap on a fine lattice for missed roots
        ++rescans;
        double lo = last, hi = b.root;
        double step = (hi - lo) / 200.0;
        double su = lo + 0.5 * step, sf = h(su);
        std::vector<double> found;
        for (int j = 1; j < 200; ++j) {
          double tu = lo + (j + 0.5) * step;
          double tf = h(tu);
          if ((tf < 0.0) != (sf < 0.0) || tf == 0.0)
            found.push_back(bisect(h, su, tu, sf, tf).root);
          su = tu;
          sf = tf;
        }
        for (double r : found) ur.insert(ur.end() - 1, r);
        std::sort(ur.begin(), ur.end());
      }
    }
    du = (ur.back() - ur[ur.size() - 2]) / 10.0;
    upos = b.uhi;
    fpos = b.fhi;
  }
  ur.resize(k);

  GeneratingSet out;
  out.constants = c;
  out.level = level;
  out.evaluations = h.evals;
  out.values.reserve(k);
  for (double u : ur) out.values.push_back(c.gamma * u * u);
  out.min_rel_gap = std::numeric_limits<double>::infinity();
  for (int j = 1; j < k; ++j)
    out.min_rel_gap = std::min(
        out.min_rel_gap,
        (out.values[j] - out.values[j - 1]) / out.values[j]);
  if (k == 1) out.min_rel_gap = 1.0;
  out.max_gap_ratio = 0.0;
  for (int j = 2; j < k; ++j) {
    double g1 = ur[j] - ur[j - 1], g0 = ur[j - 1] - ur[j - 2];
    if (g0 > 0.0) out.max_gap_ratio = std::max(out.max_gap_ratio, g1 / g0);
  }
  return out;
}

SpectrumList spectrum_Hn(std::optional<int> n, int p_min, int p_max,
                         const GeneratingSet& S) {
  if (p_min > p_max) throw std::invalid_argument("need p_min <= p_max");
  if (n && p_min < -*n)
    throw std::invalid_argument(
        "H_" + std::to_string(*n) + " only admits scaling exponents p >= " +
        std::to_string(-*n) + ", got p_min = " + std::to_string(p_min));
  std::vector<double> vals;
  vals.reserve(size_t(p_max - p_min + 1) * S.values.size());
  for (int p = p_min; p <= p_max; ++p) {
    double f = std::pow(S.constants.gamma, p);
    for (double l : S.values) vals.push_back(f * l);
  }
  std::sort(vals.begin(), vals.end());
  SpectrumList out;
  out.provenance = Provenance::renormalized;
  out.level = S.level;
  out.entries.reserve(vals.size());
  for (double v : vals) out.entries.push_back({v, 1});
  return out;
}

SpectrumList eigensolve_H0_oracle(int k, int level, const SLConstants& c) {
  if (level < 8)
    throw std::invalid_argument("oracle needs level >= 8");
  if (level > 14)
    throw std::invalid_argument("oracle dense solve capped at level 14");
  auto cells = enumerate_cells(level, c);
  const long N = long(cells.size());  // 2^level
  if (k < 1 || k > N - 1)
    throw std::invalid_argument("k must be in [1, 2^level - 1]");

  // interior points x_1..x_{N-1}; plain half-cell mass lumping, sharing no
  // quadrature choices with build_grid's centroid split
  Eigen::VectorXd diag(N - 1), sub(N - 2);
  std::vector<double> lump(N - 1), w(N);
  for (long i = 0; i < N; ++i) w[i] = cells[i].right - cells[i].left;
  for (long i = 1; i < N; ++i)
    lump[i - 1] = 0.5 * (cells[i - 1].mass + cells[i].mass);
  for (long i = 1; i < N; ++i) {
    diag[i - 1] = (1.0 / w[i - 1] + 1.0 / w[i]) / lump[i - 1];
    if (i < N - 1)
      sub[i - 1] = -1.0 / (w[i] * std::sqrt(lump[i - 1] * lump[i]));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("tridiagonal eigensolve failed");

  std::vector<double> lowest(es.eigenvalues().data(),
                             es.eigenvalues().data() + k);
  SpectrumList out = group_spectrum(lowest, 1e-9, Provenance::oracle, level);
  return out;
}

ExtendedEigenfunction eigenfunction_extend(const std::vector<double>& values,
                                           const MeasureGrid& grid, int p,
                                           const SLConstants& c) {
  if (values.size() != grid.points.size())
    throw std::invalid_argument("values must be sampled on the grid points");
  if (p < 0) throw std::invalid_argument("p must be >= 0");
  double sx = std::pow(1.0 / c.alpha, p);
  double sm = std::pow(1.0 / c.b, p);
  ExtendedEigenfunction ext;
  ext.points.reserve(grid.points.size());
  ext.masses.reserve(grid.masses.size());
  for (double x : grid.points) ext.points.push_back(sx * x);
  for (double m : grid.masses) ext.masses.push_back(sm * m);
  ext.values = values;
  return ext;
}

double rayleigh_quotient(const std::vector<double>& points,
                         const std::vector<double>& values,
                         const std::vector<double>& masses) {
  if (points.size() != values.size() || points.size() != masses.size() ||
      points.size() < 2)
    throw std::invalid_argument("points/values/masses must match, >= 2 entries");
  double num = 0.0, den = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    double df = values[i] - values[i - 1];
    num += df * df / (points[i] - points[i - 1]);
  }
  for (size_t i = 0; i < points.size(); ++i)
    den += values[i] * values[i] * masses[i];
  if (den == 0.0) throw std::invalid_argument("zero function");
  return num / den;
}

double self_similar_rescaling_check(double lambda, int n, int level_lhs,
                                    int level_rhs, const SLConstants& c) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  MeasureGrid gl = build_grid(level_lhs, c);
  double sx = std::pow(1.0 / c.alpha, n);
  double sm = std::pow(1.0 / c.b, n);
  std::vector<double> pts(gl.points), ms(gl.masses);
  for (auto& x : pts) x *= sx;
  for (auto& m : ms) m *= sm;
  auto lhs = propagate_impl<double>(lambda, pts, ms);

  MeasureGrid gr = build_grid(level_rhs, c);
  auto r = propagate_impl<double>(std::pow(c.gamma, n) * lambda, gr.points,
                                  gr.masses);
  double an = std::pow(c.alpha, n);
  double ra = r.a, rb = r.b / an, rc = r.c * an, rd = r.d;

  double mx = std::max({std::abs(ra), std::abs(rb), std::abs(rc), std::abs(rd),
                        std::abs(lhs.a), std::abs(lhs.b), std::abs(lhs.c),
                        std::abs(lhs.d)});
  double dev = std::max({std::abs(lhs.a - ra), std::abs(lhs.b - rb),
                         std::abs(lhs.c - rc), std::abs(lhs.d - rd)});
  return dev / std::max(1.0, mx);
}

}  // namespace fracspec
