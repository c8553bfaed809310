#include "fracspec/poly_zeta.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracspec {

Poly1 make_poly(const std::vector<double>& coefficients) {
  if (coefficients.size() < 2)
    throw std::invalid_argument("need degree >= 1");
  if (coefficients[0] != 0.0)
    throw std::invalid_argument("R(0) = 0 required (constant coefficient must vanish)");
  if (coefficients.back() == 0.0)
    throw std::invalid_argument("leading coefficient must be nonzero");
  Poly1 p;
  p.coefficients = coefficients;
  p.degree = int(coefficients.size()) - 1;
  p.c = coefficients[1];
  if (!(p.c > 1.0))
    throw std::invalid_argument("multiplier c = R'(0) must exceed 1, got " +
                                std::to_string(p.c));
  p.d_R = 2.0 * std::log(double(p.degree)) / std::log(p.c);
  return p;
}

Poly1 make_decimation_poly() { return make_poly({0.0, 5.0, -4.0}); }

cplx poly_eval(const Poly1& p, cplx z) {
  cplx v = 0.0;
  for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it)
    v = v * z + *it;
  return v;
}

// both solutions of a2 z^2 + a1 z = w, cancellation-safe
static void quad_preimages(double a1, double a2, cplx w, cplx& r1, cplx& r2) {
  cplx sq = std::sqrt(cplx(a1 * a1) + 4.0 * a2 * w);
  cplx u = (-a1 + sq) / (2.0 * a2);
  cplx v = (-a1 - sq) / (2.0 * a2);
  if (std::abs(u) >= std::abs(v)) {
    r1 = u;
    r2 = (std::abs(u) > 0.0) ? (-w / a2) / u : v;
  } else {
    r1 = (std::abs(v) > 0.0) ? (-w / a2) / v : u;
    r2 = v;
  }
}

PreimageLevel preimages(const Poly1& p, cplx z0, int n) {
  if (p.degree != 2)
    throw std::invalid_argument("preimage solver supports degree 2 only, got degree " +
                                std::to_string(p.degree));
  if (n < 0) throw std::invalid_argument("level must be >= 0");
  if (n > 22) throw std::runtime_error("preimage materialization capped at level 22");
  double a1 = p.coefficients[1], a2 = p.coefficients[2];
  std::vector<cplx> cur = {z0};
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> next;
    next.reserve(2 * cur.size());
    for (cplx w : cur) {
      cplx r1, r2;
      quad_preimages(a1, a2, w, r1, r2);
      next.push_back(r1);
      next.push_back(r2);
    }
    cur = std::move(next);
  }
  return {n, std::move(cur)};
}

namespace {

struct ZetaDfs {
  double a1, a2;
  cplx half_s;  // s/2
  double log_c;
  std::vector<cplx> sums;     // per level
  std::vector<long> zeros;    // excluded zero leaves per level
  int target = 0;

  void walk(cplx w, int depth) {
    if (std::abs(w) < 1e-14) {
      zeros[depth] += 1;
    } else {
      // (c^depth * w)^{-s/2} on the principal branch
      sums[depth] += std::exp(-half_s * (double(depth) * log_c + std::log(w)));
    }
    if (depth == target) return;
    cplx r1, r2;
    quad_preimages(a1, a2, w, r1, r2);
    walk(r1, depth + 1);
    walk(r2, depth + 1);
  }
};

}  // namespace

ZetaValue zeta_poly_truncated(const Poly1& p, cplx z0, cplx s,
                              const PolyZetaOptions& opts,
                              long* zero_leaves_excluded) {
  if (p.degree != 2)
    throw std::invalid_argument("zeta preimage tree supports degree 2 only");
  if (!opts.formal_truncation && !(s.real() > p.d_R))
    throw std::domain_error("Re(s) must exceed d_R = " + std::to_string(p.d_R));

  ZetaDfs dfs;
  dfs.a1 = p.coefficients[1];
  dfs.a2 = p.coefficients[2];
  dfs.half_s = s / 2.0;
  dfs.log_c = std::log(p.c);

  if (opts.formal_truncation) {
    // fixed-depth formal partial sum; no convergence claim
    int depth = std::min(12, opts.max_level);
    dfs.target = depth;
    dfs.sums.assign(depth + 1, cplx(0.0));
    dfs.zeros.assign(depth + 1, 0);
    dfs.walk(z0, 0);
    ZetaValue zv;
    zv.s = s;
    zv.method = ZetaMethod::direct_sum;
    zv.value = dfs.sums[depth];
    zv.partial_sum = dfs.sums[depth];
    zv.terms_used = (1L << depth) - dfs.zeros[depth];
    zv.tail_estimate = std::numeric_limits<double>::infinity();
    if (zero_leaves_excluded) *zero_leaves_excluded = dfs.zeros[depth];
    return zv;
  }

  // deepen in stages; each stage rewalks the tree, total cost <= 2x final
  for (int target : {8, 12, 16, 20, opts.max_level}) {
    if (target > opts.max_level) target = opts.max_level;
    dfs.target = target;
    dfs.sums.assign(target + 1, cplx(0.0));
    dfs.zeros.assign(target + 1, 0);
    dfs.walk(z0, 0);

    int stop = -1;
    double inc = 0.0, prev_inc = 0.0;
    for (int n = 1; n <= target; ++n) {
      double d = std::abs(dfs.sums[n] - dfs.sums[n - 1]);
      if (d < opts.increment_tol) {
        stop = n;
        inc = d;
        prev_inc = (n >= 2) ? std::abs(dfs.sums[n - 1] - dfs.sums[n - 2]) : 0.0;
        break;
      }
    }
    bool last_stage = (target == opts.max_level);
    if (stop < 0 && !last_stage) continue;

    ZetaValue zv;
    zv.s = s;
    zv.method = ZetaMethod::direct_sum;
    if (stop < 0) {
      // unconverged at the cap: geometric extrapolation of the remainder
      stop = target;
      inc = std::abs(dfs.sums[stop] - dfs.sums[stop - 1]);
      prev_inc = std::abs(dfs.sums[stop - 1] - dfs.sums[stop - 2]);
      double r = (prev_inc > 0.0) ? inc / prev_inc : 1.0;
      zv.tail_estimate = (r < 1.0) ? inc * r / (1.0 - r)
                                   : std::numeric_limits<double>::infinity();
    } else {
      zv.tail_estimate = inc;  // safe bound while increments keep shrinking
      (void)prev_inc;
    }
    zv.value = dfs.sums[stop];
    zv.partial_sum = dfs.sums[stop];
    zv.terms_used = (1L << stop) - dfs.zeros[stop];
    if (zero_leaves_excluded) *zero_leaves_excluded = dfs.zeros[stop];
    return zv;
  }
  throw std::logic_error("unreachable");
}

}  // namespace fracspec
