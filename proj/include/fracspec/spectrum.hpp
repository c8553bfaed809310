#pragma once
#include <string>
#include <vector>

namespace fracspec {

enum class Provenance { oracle, decimation, renormalized };

std::string to_string(Provenance p);

struct SpectrumEntry {
  double value;
  int multiplicity;
};

// sorted eigenvalue/multiplicity pairs; level is the refinement level the
// list belongs to (-1 when not applicable)
struct SpectrumList {
  std::vector<SpectrumEntry> entries;
  Provenance provenance = Provenance::oracle;
  int level = -1;

  int total_count() const {
    int n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
  }
};

// collapse a sorted-or-not list of raw eigenvalues into (value, multiplicity)
// pairs; values closer than tol (absolute) are merged, representative is the
// group mean
SpectrumList group_spectrum(std::vector<double> raw, double tol,
                            Provenance prov, int level = -1);

// largest |a-b| over paired entries, or +inf on structural mismatch
// (different group counts or multiplicities)
double spectrum_max_deviation(const SpectrumList& a, const SpectrumList& b);

}  // namespace fracspec
