#include "fracspec/sg_decimation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace fracspec {

namespace {

// triangular-lattice integer coordinates: vertex = p*e1 + q*e2 in units of
// 2^-m, e1 = (1,0), e2 = (1/2, sqrt(3)/2). Midpoints stay integral because
// corner coordinates at level m are multiples of 2^m... halved m times.
struct LatticeBuilder {
  int m;
  std::map<std::pair<long, long>, int> index;
  std::vector<std::pair<long, long>> coords;
  std::vector<std::pair<int, int>> edges;

  int vertex(long p, long q) {
    auto it = index.find({p, q});
    if (it != index.end()) return it->second;
    int id = int(coords.size());
    index.insert({{p, q}, id});
    coords.push_back({p, q});
    return id;
  }

  void triangle(std::pair<long, long> a, std::pair<long, long> b,
                std::pair<long, long> c, int depth) {
    if (depth == m) {
      int ia = vertex(a.first, a.second);
      int ib = vertex(b.first, b.second);
      int ic = vertex(c.first, c.second);
      edges.push_back({ia, ib});
      edges.push_back({ib, ic});
      edges.push_back({ic, ia});
      return;
    }
    std::pair<long, long> ab{(a.first + b.first) / 2, (a.second + b.second) / 2};
    std::pair<long, long> bc{(b.first + c.first) / 2, (b.second + c.second) / 2};
    std::pair<long, long> ca{(c.first + a.first) / 2, (c.second + a.second) / 2};
    triangle(a, ab, ca, depth + 1);
    triangle(ab, b, bc, depth + 1);
    triangle(ca, bc, c, depth + 1);
  }
};

}  // namespace

PreGasket build_pregasket(int m) {
  if (m < 0) throw std::invalid_argument("pre-gasket level must be >= 0");
  if (m > 8) {
    long long dim = 3LL * ((long long)std::pow(3.0, m) + 1) / 2;
    throw std::runtime_error("pre-gasket level " + std::to_string(m) +
                             " exceeds the desk-scale cap 8 (vertex count " +
                             std::to_string(dim) + ")");
  }
  LatticeBuilder lb{m, {}, {}, {}};
  long scale = 1L << m;
  std::pair<long, long> A{0, 0}, B{scale, 0}, C{0, scale};
  // register the corners first so their indices are 0,1,2
  lb.vertex(A.first, A.second);
  lb.vertex(B.first, B.second);
  lb.vertex(C.first, C.second);
  lb.triangle(A, B, C, 0);

  PreGasket g;
  g.level = m;
  g.boundary = {0, 1, 2};
  const double s3h = std::sqrt(3.0) / 2.0;
  g.vertices.reserve(lb.coords.size());
  for (auto& [p, q] : lb.coords)
    g.vertices.push_back(
        {(double(p) + 0.5 * double(q)) / double(scale), double(q) * s3h / double(scale)});
  g.adjacency.assign(g.vertices.size(), {});
  for (auto& [i, j] : lb.edges) {
    g.adjacency[i].push_back(j);
    g.adjacency[j].push_back(i);
  }
  return g;
}

GraphLaplacianMatrix assemble_dirichlet_laplacian(const PreGasket& g) {
  int nv = int(g.vertices.size());
  // interior = everything but the first 3 (corner) vertices
  std::vector<int> interior_id(nv, -1);
  int n = 0;
  for (int v = 0; v < nv; ++v) {
    bool is_b = v == g.boundary[0] || v == g.boundary[1] || v == g.boundary[2];
    if (!is_b) interior_id[v] = n++;
  }
  GraphLaplacianMatrix L;
  L.size = n;
  L.entries.assign(std::size_t(n) * n, 0.0);
  for (int v = 0; v < nv; ++v) {
    int i = interior_id[v];
    if (i < 0) continue;
    L.entries[std::size_t(i) * n + i] = 1.0;
    for (int w : g.adjacency[v]) {
      int j = interior_id[w];
      if (j >= 0) L.entries[std::size_t(i) * n + j] -= 0.25;
    }
  }
  return L;
}

SpectrumList eigensolve_direct(int m) {
  if (m < 1) throw std::invalid_argument("need level >= 1 for a nonempty interior");
  PreGasket g = build_pregasket(m);
  GraphLaplacianMatrix L = assemble_dirichlet_laplacian(g);
  Eigen::MatrixXd M(L.size, L.size);
  for (int i = 0; i < L.size; ++i)
    for (int j = 0; j < L.size; ++j) M(i, j) = L.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense symmetric eigensolve failed to converge at level " +
                             std::to_string(m));
  std::vector<double> vals(es.eigenvalues().data(),
                           es.eigenvalues().data() + L.size);
  return group_spectrum(std::move(vals), 1e-9, Provenance::oracle, m);
}

double decimation_R(double z) { return z * (5.0 - 4.0 * z); }

const std::array<double, 3> forbidden_B = {1.25, 0.5, 1.5};

static bool in_forbidden(double z) {
  for (double b : forbidden_B)
    if (std::abs(z - b) < 1e-12) return true;
  return false;
}

SpectrumList decimation_spectrum(int m, bool verify_against_oracle) {
  if (m < 1) throw std::invalid_argument("need level >= 1");
  if (m > 8) throw std::runtime_error("decimation level capped at 8");

  std::vector<std::pair<double, long>> spec = {{0.5, 1}, {1.25, 2}};
  double pow3 = 3.0;  // 3^k at k = 1
  for (int k = 1; k < m; ++k) {
    std::vector<std::pair<double, long>> next;
    for (auto& [v, mu] : spec) {
      double disc = 25.0 - 16.0 * v;
      if (disc < 0.0)
        throw std::runtime_error("negative discriminant in preimage step");
      double root = std::sqrt(disc);
      double minus = 2.0 * v / (5.0 + root);
      double plus = (5.0 + root) / 8.0;
      if (!in_forbidden(minus)) next.push_back({minus, mu});
      if (!in_forbidden(plus)) next.push_back({plus, mu});
    }
    // values born at level k+1
    next.push_back({1.25, long((pow3 + 3.0) / 2.0)});
    next.push_back({1.5, long((3.0 * pow3 - 3.0) / 2.0)});
    pow3 *= 3.0;
    std::sort(next.begin(), next.end());
    spec = std::move(next);
  }

  SpectrumList out;
  out.provenance = Provenance::decimation;
  out.level = m;
  for (auto& [v, mu] : spec) {
    if (!out.entries.empty() && v - out.entries.back().value < 1e-12)
      out.entries.back().multiplicity += int(mu);
    else
      out.entries.push_back({v, int(mu)});
  }

  if (verify_against_oracle && m <= 5) {
    SpectrumList oracle = eigensolve_direct(m);
    double dev = spectrum_max_deviation(out, oracle);
    if (!(dev < 1e-9)) {
      std::string detail = "structure mismatch";
      for (std::size_t i = 0;
           i < std::min(out.entries.size(), oracle.entries.size()); ++i)
        if (std::abs(out.entries[i].value - oracle.entries[i].value) > 1e-9 ||
            out.entries[i].multiplicity != oracle.entries[i].multiplicity) {
          detail = "first offending eigenvalue " +
                   std::to_string(oracle.entries[i].value);
          break;
        }
      throw std::runtime_error("decimation spectrum disagrees with the oracle at level " +
                               std::to_string(m) + ": " + detail);
    }
  }
  return out;
}

double branch_inverse(double z, int m) {
  if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
  for (int i = 0; i < m; ++i) {
    double disc = 25.0 - 16.0 * z;
    if (disc < 0.0)
      throw std::domain_error("minus branch undefined: 25 - 16z < 0 at z = " +
                              std::to_string(z));
    z = 2.0 * z / (5.0 + std::sqrt(disc));
  }
  return z;
}

double scaled_branch_limit(double z) {
  if (z < 0.0 || 25.0 - 16.0 * z < 0.0)
    throw std::domain_error("branch limit needs 0 <= z <= 25/16, got " +
                            std::to_string(z));
  // t_m = 5^m R_-^{-m}(z) by the ratio recurrence t <- t * 10/(5+sqrt(25-16w)),
  // which never forms 5^m explicitly
  double t = z, w = z;
  for (int it = 0; it < 200; ++it) {
    double root = std::sqrt(25.0 - 16.0 * w);
    double tn = t * 10.0 / (5.0 + root);
    double inc = std::abs(tn - t);
    w = 2.0 * w / (5.0 + root);
    t = tn;
    if (inc < 1e-12) return t;
  }
  throw std::runtime_error("branch limit did not converge within 200 iterations");
}

SpectrumList infinite_sg_spectrum(int n_min, int n_max, int j_max, double z0) {
  if (!(z0 == 0.75 || z0 == 1.25))
    throw std::invalid_argument("z0 must be 3/4 or 5/4");
  if (n_min > n_max) throw std::invalid_argument("need n_min <= n_max");
  if (j_max < 0) throw std::invalid_argument("need j_max >= 0");
  if (j_max > 20) throw std::runtime_error("preimage depth capped at 20");

  std::vector<double> level = {z0}, rvals;
  for (int j = 0;; ++j) {
    for (double w : level) rvals.push_back(scaled_branch_limit(w));
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

  std::vector<double> vals;
  vals.reserve(rvals.size() * std::size_t(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    double p5 = std::pow(5.0, n);
    for (double r : rvals) vals.push_back(p5 * r);
  }
  std::sort(vals.begin(), vals.end());

  SpectrumList out;
  out.provenance = Provenance::renormalized;
  std::size_t i = 0;
  while (i < vals.size()) {
    std::size_t j = i + 1;
    while (j < vals.size() && vals[j] - vals[j - 1] <= 1e-9 * vals[j]) ++j;
    out.entries.push_back({vals[i], int(j - i)});  // representative: cluster min
    i = j;
  }
  return out;
}

}  // namespace fracspec
