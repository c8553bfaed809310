#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fracspec/sg_decimation.hpp"

using namespace fracspec;

TEST_CASE("pre-gasket sizes and degrees") {
  // |V_m| = 3(3^m + 1)/2, interior = (3^{m+1} - 3)/2
  long pow3 = 1;
  for (int m = 0; m <= 6; ++m) {
    PreGasket g = build_pregasket(m);
    CHECK(g.level == m);
    CHECK(long(g.vertices.size()) == 3 * (pow3 + 1) / 2);
    CHECK(long(g.interior_count()) == (3 * pow3 - 3) / 2);
    pow3 *= 3;

    // corners have degree 2, interior vertices degree 4
    for (size_t v = 0; v < g.adjacency.size(); ++v) {
      bool corner = (int(v) == g.boundary[0] || int(v) == g.boundary[1] ||
                     int(v) == g.boundary[2]);
      size_t expect = (m == 0) ? 2 : (corner ? 2 : 4);
      CHECK(g.adjacency[v].size() == expect);
    }

    // adjacency is symmetric and irreflexive
    for (size_t v = 0; v < g.adjacency.size(); ++v)
      for (int w : g.adjacency[v]) {
        CHECK(w != int(v));
        const auto& back = g.adjacency[size_t(w)];
        CHECK(std::count(back.begin(), back.end(), int(v)) == 1);
      }
  }
  CHECK_THROWS_AS(build_pregasket(-1), std::invalid_argument);
  CHECK_THROWS_AS(build_pregasket(9), std::runtime_error);
}

TEST_CASE("direct eigensolve: smallest cells") {
  SpectrumList s1 = eigensolve_direct(1);
  REQUIRE(s1.entries.size() == 2);
  CHECK(s1.total_count() == 3);
  CHECK(s1.entries[0].value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s1.entries[0].multiplicity == 1);
  CHECK(s1.entries[1].value == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(s1.entries[1].multiplicity == 2);

  CHECK(eigensolve_direct(2).total_count() == 12);
  CHECK(eigensolve_direct(3).total_count() == 39);
  CHECK_THROWS_AS(eigensolve_direct(0), std::invalid_argument);
}

TEST_CASE("forward map and forbidden values") {
  // R(z) = z(5 - 4z)
  CHECK(decimation_R(0.0) == 0.0);
  CHECK(decimation_R(0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(decimation_R(0.75) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(decimation_R(1.25) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(decimation_R(1.0) == doctest::Approx(1.0).epsilon(1e-15));

  REQUIRE(forbidden_B.size() == 3);
  std::vector<double> b(forbidden_B.begin(), forbidden_B.end());
  std::sort(b.begin(), b.end());
  CHECK(b[0] == 0.5);
  CHECK(b[1] == 1.25);
  CHECK(b[2] == 1.5);
}

TEST_CASE("decimation recursion reproduces the dense solve") {
  for (int m = 1; m <= 4; ++m) {
    SpectrumList rec = decimation_spectrum(m, false);
    SpectrumList ora = eigensolve_direct(m);
    CAPTURE(m);
    CHECK(rec.total_count() == ora.total_count());
    CHECK(spectrum_max_deviation(rec, ora) < 1e-9);
  }
  // with verification on, a mismatch would throw; m = 5 exercises the
  // largest dense solve
  SpectrumList s5 = decimation_spectrum(5, true);
  CHECK(s5.total_count() == 363);
  CHECK_THROWS_AS(decimation_spectrum(0), std::invalid_argument);
  CHECK_THROWS_AS(decimation_spectrum(9), std::runtime_error);
}

TEST_CASE("level-2 spectrum in closed form") {
  // lifting {1/2, 5/4 x2} through the quadratic and adding the new
  // eigenvalues gives six distinct values with known surds
  double s17 = std::sqrt(17.0), s5 = std::sqrt(5.0);
  std::vector<std::pair<double, int>> expect = {
      {(5.0 - s17) / 8.0, 1}, {(5.0 - s5) / 8.0, 2}, {(5.0 + s5) / 8.0, 2},
      {(5.0 + s17) / 8.0, 1}, {1.25, 3},             {1.5, 3}};
  SpectrumList s2 = decimation_spectrum(2);
  REQUIRE(s2.entries.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(s2.entries[i].value == doctest::Approx(expect[i].first).epsilon(1e-12));
    CHECK(s2.entries[i].multiplicity == expect[i].second);
  }
}

// Neumann variant as an independent cross-check of the lifting rules: the
// whole-graph normalized operator I - D^{-1/2} A D^{-1/2} obeys the same
// decimation map, with 0 surviving and its own replacement counts.
static std::map<double, long> neumann_by_formula(int m) {
  std::map<double, long> cur;
  cur[0.0] = 1;
  cur[1.5] = 2;
  long pow3 = 1;  // 3^{k-1} inside the loop
  for (int k = 1; k <= m; ++k) {
    std::map<double, long> next;
    for (const auto& [val, mult] : cur) {
      // both branches of R(z) = val, dropping branches that land in the
      // forbidden set
      double disc = std::sqrt(25.0 - 16.0 * val);
      for (double pre : {(5.0 - disc) / 8.0, (5.0 + disc) / 8.0}) {
        bool forbidden = false;
        for (double f : forbidden_B)
          if (std::abs(pre - f) < 1e-12) forbidden = true;
        if (!forbidden) next[pre] += mult;
      }
    }
    next[1.5] += (3 * pow3 + 3) / 2;
    if (k >= 2) next[1.25] += (pow3 - 1) / 2;
    pow3 *= 3;
    cur = std::move(next);
  }
  return cur;
}

TEST_CASE("normalized whole-graph spectrum matches the lifting formula") {
  for (int m = 1; m <= 3; ++m) {
    PreGasket g = build_pregasket(m);
    int n = int(g.vertices.size());
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    for (int v = 0; v < n; ++v)
      for (int w : g.adjacency[size_t(v)]) {
        double dv = double(g.adjacency[size_t(v)].size());
        double dw = double(g.adjacency[size_t(w)].size());
        L(v, w) = -1.0 / std::sqrt(dv * dw);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    REQUIRE(es.info() == Eigen::Success);

    std::map<double, long> formula = neumann_by_formula(m);
    std::vector<double> expect;
    for (const auto& [val, mult] : formula)
      for (long i = 0; i < mult; ++i) expect.push_back(val);
    std::sort(expect.begin(), expect.end());

    CAPTURE(m);
    REQUIRE(size_t(es.eigenvalues().size()) == expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
      CHECK(std::abs(es.eigenvalues()[long(i)] - expect[i]) < 1e-9);
  }
}

TEST_CASE("contracting branch: exact preimages") {
  // branch_inverse(z, 1) solves R(w) = z taking the root below 5/8
  CHECK(branch_inverse(0.0, 1) == 0.0);
  CHECK(branch_inverse(1.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
  double s13 = std::sqrt(13.0);
  CHECK(branch_inverse(0.75, 1) ==
        doctest::Approx((5.0 - s13) / 8.0).epsilon(1e-15));
  CHECK(branch_inverse(0.75, 0) == 0.75);
  CHECK_THROWS_AS(branch_inverse(0.75, -1), std::invalid_argument);
  // 25 - 16z < 0 leaves the real branch
  CHECK_THROWS_AS(branch_inverse(2.0, 1), std::domain_error);
}

TEST_CASE("scaled branch limit: value, monotonicity, semi-conjugacy") {
  CHECK(scaled_branch_limit(0.0) == 0.0);

  // 5^m R_-^{-m}(z) converges to the limit function
  for (double z : {0.3, 0.75, 1.25, 1.5}) {
    double lim = scaled_branch_limit(z);
    double v29 = std::pow(5.0, 29) * branch_inverse(z, 29);
    double v30 = std::pow(5.0, 30) * branch_inverse(z, 30);
    CAPTURE(z);
    CHECK(std::abs(v30 - v29) < 1e-10 * std::abs(lim));
    CHECK(std::abs(v30 - lim) < 1e-9 * std::abs(lim));
  }

  // strictly increasing on [0, 25/16]
  double prev = -1.0;
  for (int i = 0; i <= 50; ++i) {
    double z = 25.0 / 16.0 * double(i) / 50.0;
    double v = scaled_branch_limit(z);
    CHECK(v > prev);
    prev = v;
  }

  // 5 * limit(R_-^{-1}(z)) = limit(z)
  for (int i = 1; i <= 25; ++i) {
    double z = 25.0 / 16.0 * double(i) / 25.0;
    double lhs = 5.0 * scaled_branch_limit(branch_inverse(z, 1));
    double rhs = scaled_branch_limit(z);
    CAPTURE(z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }

  CHECK_THROWS_AS(scaled_branch_limit(-0.1), std::domain_error);
  CHECK_THROWS_AS(scaled_branch_limit(1.6), std::domain_error);
}

TEST_CASE("unbounded-cell spectrum: window shift is exact scaling") {
  SpectrumList w0 = infinite_sg_spectrum(-2, 3, 6, 0.75);
  SpectrumList w1 = infinite_sg_spectrum(-1, 4, 6, 0.75);
  REQUIRE(w0.entries.size() == w1.entries.size());
  for (size_t i = 0; i < w0.entries.size(); ++i) {
    CHECK(std::abs(5.0 * w0.entries[i].value - w1.entries[i].value) <=
          1e-10 * w1.entries[i].value);
    CHECK(w0.entries[i].multiplicity == w1.entries[i].multiplicity);
  }

  // values are sorted, positive, and the 5/4 family is also accepted
  CHECK(w0.entries.front().value > 0.0);
  for (size_t i = 0; i + 1 < w0.entries.size(); ++i)
    CHECK(w0.entries[i].value < w0.entries[i + 1].value);
  SpectrumList alt = infinite_sg_spectrum(0, 2, 4, 1.25);
  CHECK(alt.entries.size() > 0);

  CHECK_THROWS_AS(infinite_sg_spectrum(0, 2, 4, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(infinite_sg_spectrum(2, 0, 4, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(infinite_sg_spectrum(0, 2, 21, 0.75), std::runtime_error);
}
