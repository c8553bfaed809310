#include "fracspec/ifs_measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracspec {

SLConstants make_constants(double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("alpha must be > 0, got " + std::to_string(alpha));
  if (!(alpha <= 0.5))
    throw std::invalid_argument(
        "alpha must be <= 1/2 so that delta = alpha/(1-alpha) <= 1, got " +
        std::to_string(alpha));
  SLConstants c;
  c.alpha = alpha;
  c.b = 1.0 - alpha;
  c.delta = alpha / (1.0 - alpha);
  c.gamma = 1.0 / (alpha * (1.0 - alpha));
  return c;
}

static void check_letters(const CellWord& word) {
  for (int l : word.letters)
    if (l != 1 && l != 2)
      throw std::invalid_argument("cell word letters must be 1 or 2");
}

double cell_mass(const CellWord& word, const SLConstants& c) {
  check_letters(word);
  double m = 1.0;
  for (int l : word.letters) m *= (l == 1) ? c.b : (1.0 - c.b);
  return m;
}

Cell cell_bounds(const CellWord& word, const SLConstants& c) {
  check_letters(word);
  // both maps are increasing affine, so the word refines [l, r] in place
  double l = 0.0, r = 1.0;
  for (int k : word.letters) {
    double m = l + c.alpha * (r - l);
    if (k == 1)
      r = m;
    else
      l = m;
  }
  return {l, r, cell_mass(word, c)};
}

static void subdivide(double l, double r, double mass, int depth, int n,
                      const SLConstants& c, std::vector<Cell>& out) {
  if (depth == n) {
    out.push_back({l, r, mass});
    return;
  }
  double m = l + c.alpha * (r - l);  // split point, computed once and shared
  subdivide(l, m, mass * c.b, depth + 1, n, c, out);
  subdivide(m, r, mass * (1.0 - c.b), depth + 1, n, c, out);
}

std::vector<Cell> enumerate_cells(int n, const SLConstants& c) {
  if (n < 0) throw std::invalid_argument("level must be >= 0");
  if (n > 24)
    throw std::runtime_error("level " + std::to_string(n) +
                             " would enumerate 2^" + std::to_string(n) +
                             " cells; capped at 24");
  std::vector<Cell> cells;
  cells.reserve(std::size_t{1} << n);
  subdivide(0.0, 1.0, 1.0, 0, n, c, cells);
  return cells;
}

double measure_moment1(const SLConstants& c) {
  // X = b*(a X) + a*((1-a) X + a)  =>  X = a^2 / (1 - 2 a (1-a))
  double a = c.alpha;
  return a * a / (1.0 - 2.0 * a * (1.0 - a));
}

double measure_moment2(const SLConstants& c) {
  double a = c.alpha, X = measure_moment1(c);
  double num = 2.0 * a * a * (1.0 - a) * X + a * a * a;
  double den = 1.0 - c.b * a * a - a * (1.0 - a) * (1.0 - a);
  return num / den;
}

MeasureGrid build_grid(int n, const SLConstants& c) {
  auto cells = enumerate_cells(n, c);
  MeasureGrid g;
  g.level = n;
  g.points.reserve(cells.size() + 1);
  g.masses.assign(cells.size() + 1, 0.0);
  g.points.push_back(0.0);
  for (const auto& cell : cells) g.points.push_back(cell.right);

  double X = measure_moment1(c);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    g.masses[i] += (1.0 - X) * cells[i].mass;
    g.masses[i + 1] += X * cells[i].mass;
  }
  return g;
}

}  // namespace fracspec
