#pragma once
#include <vector>

namespace fracspec {

// parameter pack of the two-map interval IFS: Psi1(x) = a*x,
// Psi2(x) = (1-a)*x + a, with measure weights b (left) and 1-b (right)
struct SLConstants {
  double alpha;
  double b;      // 1 - alpha
  double delta;  // alpha / (1 - alpha)
  double gamma;  // 1 / (alpha (1 - alpha))
};

// alpha in (0, 1/2]; keeps delta <= 1 (pure point spectrum regime)
SLConstants make_constants(double alpha);

// word over {1, 2} naming the cell Psi_{i1...in}([0,1]); empty = whole interval
struct CellWord {
  std::vector<int> letters;
};

struct Cell {
  double left;
  double right;
  double mass;
};

// measure of the cell: product of b (letter 1) / 1-b (letter 2)
double cell_mass(const CellWord& word, const SLConstants& c);

// endpoints of the named cell
Cell cell_bounds(const CellWord& word, const SLConstants& c);

// all 2^n level-n cells in left-to-right order; shared endpoints are
// bitwise identical between neighbours (each split point is computed once)
std::vector<Cell> enumerate_cells(int n, const SLConstants& c);

// first and second moments of the self-similar measure (closed form from
// the self-similarity relation); moment1 is also the in-cell centroid of
// every cell in local coordinates
double measure_moment1(const SLConstants& c);
double measure_moment2(const SLConstants& c);

// atomic level-n approximation: cell endpoints as points, each cell's mass
// split (1-X) to its left endpoint and X to its right (X = in-cell centroid),
// so every cell's 0th and 1st moments are exact. Endpoints 0 and 1 carry
// their one-sided share. masses sum to 1.
struct MeasureGrid {
  int level = 0;
  std::vector<double> points;
  std::vector<double> masses;
};

MeasureGrid build_grid(int n, const SLConstants& c);

}  // namespace fracspec
