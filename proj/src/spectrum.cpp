#include "fracspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracspec {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::decimation: return "decimation";
    case Provenance::renormalized: return "renormalized";
  }
  return "?";
}

SpectrumList group_spectrum(std::vector<double> raw, double tol,
                            Provenance prov, int level) {
  std::sort(raw.begin(), raw.end());
  SpectrumList out;
  out.provenance = prov;
  out.level = level;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    double sum = raw[i];
    while (j < raw.size() && raw[j] - raw[i] <= tol) {
      sum += raw[j];
      ++j;
    }
    out.entries.push_back({sum / double(j - i), int(j - i)});
    i = j;
  }
  return out;
}

double spectrum_max_deviation(const SpectrumList& a, const SpectrumList& b) {
  if (a.entries.size() != b.entries.size())
    return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].multiplicity != b.entries[i].multiplicity)
      return std::numeric_limits<double>::infinity();
    dev = std::max(dev, std::abs(a.entries[i].value - b.entries[i].value));
  }
  return dev;
}

}  // namespace fracspec
