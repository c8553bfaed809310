#include "fracspec/renorm_dynamics.hpp"

#include <cmath>
#include <vector>

namespace fracspec {

ProjPoint ProjPoint::normalized() const {
  int best = 0;
  double mx = std::abs(h[0]);
  for (int i = 1; i < 3; ++i) {
    double m = std::abs(h[i]);
    if (m > mx) {
      mx = m;
      best = i;
    }
  }
  if (mx == 0.0)
    throw std::invalid_argument("[0,0,0] is not a projective point");
  cplx piv = h[best];
  return {{h[0] / piv, h[1] / piv, h[2] / piv}};
}

double proj_distance(const ProjPoint& p, const ProjPoint& q) {
  // wedge minors of the 2x3 matrix [p; q]
  cplx w0 = p.h[1] * q.h[2] - p.h[2] * q.h[1];
  cplx w1 = p.h[2] * q.h[0] - p.h[0] * q.h[2];
  cplx w2 = p.h[0] * q.h[1] - p.h[1] * q.h[0];
  double wedge = std::sqrt(std::norm(w0) + std::norm(w1) + std::norm(w2));
  double np = std::sqrt(std::norm(p.h[0]) + std::norm(p.h[1]) + std::norm(p.h[2]));
  double nq = std::sqrt(std::norm(q.h[0]) + std::norm(q.h[1]) + std::norm(q.h[2]));
  if (np == 0.0 || nq == 0.0)
    throw std::invalid_argument("[0,0,0] is not a projective point");
  return wedge / (np * nq);
}

IndeterminacyError::IndeterminacyError(int step_)
    : std::runtime_error("rho hit the indeterminacy point [1 : -delta : 0] at step " +
                         std::to_string(step_)),
      step(step_) {}

static ProjPoint rho_once(const ProjPoint& pt, double delta, int step) {
  ProjPoint v = pt.normalized();  // keeps iterates O(1); the map is homogeneous
  const cplx x = v.h[0], y = v.h[1], z = v.h[2];
  const cplx u = x + y / delta;
  ProjPoint img{{x * u - z * z / delta, delta * y * u - delta * z * z, z * z}};
  double mx = std::max({std::abs(img.h[0]), std::abs(img.h[1]), std::abs(img.h[2])});
  if (mx < 1e-12) throw IndeterminacyError(step);
  return img;
}

ProjPoint rho_apply(const ProjPoint& pt, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  return rho_once(pt, delta, 0);
}

ProjPoint rho_apply(const ProjPoint& pt, const SLConstants& c) {
  return rho_apply(pt, c.delta);
}

ProjPoint rho_iterate(const ProjPoint& pt, int p, double delta) {
  if (p < 0) throw std::invalid_argument("iteration count must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  ProjPoint cur = pt;
  for (int k = 0; k < p; ++k) cur = rho_once(cur, delta, k);
  return cur;
}

bool in_D(const ProjPoint& pt, double delta, double tol) {
  ProjPoint v = pt.normalized();
  return std::abs(v.h[0] + v.h[1] / delta) < tol;
}

const char* to_string(OrbitOutcome o) {
  switch (o) {
    case OrbitOutcome::converged_x0: return "converged_x0";
    case OrbitOutcome::fixed_point: return "fixed_point";
    case OrbitOutcome::cycling: return "cycling";
    case OrbitOutcome::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

OrbitReport basin_probe(const ProjPoint& pt, double delta, int max_iter) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const ProjPoint x0{{0.0, 1.0, 0.0}};
  OrbitReport rep;
  rep.start = pt.normalized();

  ProjPoint cur = rep.start;
  std::vector<ProjPoint> recent;  // short memory for cycle detection
  for (int k = 0; k <= max_iter; ++k) {
    if (proj_distance(cur, x0) < 1e-8) {
      rep.outcome = OrbitOutcome::converged_x0;
      rep.terminal = cur;
      rep.steps = k;
      return rep;
    }
    if (k == max_iter) break;
    ProjPoint next = rho_once(cur, delta, k).normalized();
    if (proj_distance(next, cur) < 1e-13) {
      rep.outcome = OrbitOutcome::fixed_point;
      rep.terminal = next;
      rep.steps = k + 1;
      return rep;
    }
    for (const auto& past : recent) {
      if (proj_distance(next, past) < 1e-12) {
        rep.outcome = OrbitOutcome::cycling;
        rep.terminal = next;
        rep.steps = k + 1;
        return rep;
      }
    }
    recent.push_back(cur);
    if (recent.size() > 8) recent.erase(recent.begin());
    cur = next;
  }
  rep.outcome = OrbitOutcome::budget_exhausted;
  rep.terminal = cur;
  rep.steps = max_iter;
  return rep;
}

}  // namespace fracspec
