#pragma once
#include <array>
#include <vector>

#include "fracspec/spectrum.hpp"

namespace fracspec {

// level-m Sierpinski pre-gasket graph. Vertex coordinates are kept on the
// triangular integer lattice (units of 2^-m along the two edge directions)
// so that identification of shared vertices is exact.
struct PreGasket {
  int level = 0;
  std::vector<std::array<double, 2>> vertices;  // plane coordinates
  std::array<int, 3> boundary{};                // corner vertex indices
  std::vector<std::vector<int>> adjacency;
  int interior_count() const {
    return static_cast<int>(vertices.size()) - 3;
  }
};

// 0 <= m <= 8
PreGasket build_pregasket(int m);

// dense probabilistic Dirichlet Laplacian I - A/4 on interior vertices,
// row-major
struct GraphLaplacianMatrix {
  int size = 0;
  std::vector<double> entries;
  double at(int i, int j) const { return entries[std::size_t(i) * size + j]; }
};

GraphLaplacianMatrix assemble_dirichlet_laplacian(const PreGasket& g);

// full Dirichlet spectrum at level m by dense symmetric eigensolve,
// multiplicities grouped at 1e-9 (the oracle); m >= 1
SpectrumList eigensolve_direct(int m);

// decimation polynomial and the forbidden set
double decimation_R(double z);                   // z (5 - 4z)
extern const std::array<double, 3> forbidden_B;  // {5/4, 1/2, 3/2}

// Dirichlet spectrum at level m generated by the preimage recursion:
// level-1 seed {1/2 x1, 5/4 x2}; each value contributes both preimages of
// R at the next level except members of B; new values 5/4 and 3/2 enter
// with multiplicities (3^{k-1}+3)/2 and (3^k-3)/2 at level k. The pattern
// is asserted against the oracle for m <= 5 (verify flag).
SpectrumList decimation_spectrum(int m, bool verify_against_oracle = true);

// m-fold composition of the minus branch of R^{-1}; the branch through 0.
// Rationalized form 2z / (5 + sqrt(25 - 16z)) to avoid cancellation.
double branch_inverse(double z, int m);

// the renormalized branch limit:  lim_m 5^m R_-^{-m}(z); increment
// stopping rule 1e-12, at most 200 iterations
double scaled_branch_limit(double z);

// truncation of the two-sided union  { 5^n * limit(R^{-j}(z0)) } for
// n_min <= n <= n_max, 0 <= j <= j_max, z0 in {3/4, 5/4}; values deduplicated
// at relative tolerance 1e-9 (minus-branch children repeat their parent one
// 5-shift down), cluster representative = cluster minimum
SpectrumList infinite_sg_spectrum(int n_min, int n_max, int j_max, double z0);

}  // namespace fracspec
