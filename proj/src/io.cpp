#include "fracspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fracspec {

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string spectrum_csv(const SpectrumList& spec) {
  std::string out = "value,multiplicity\n";
  for (const auto& e : spec.entries) {
    out += fmt_g17(e.value);
    out += ',';
    out += std::to_string(e.multiplicity);
    out += '\n';
  }
  return out;
}

std::string generating_set_csv(const GeneratingSet& S) {
  std::string out = "index,lambda\n";
  for (size_t i = 0; i < S.values.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += fmt_g17(S.values[i]);
    out += '\n';
  }
  return out;
}

std::string zeta_rows_csv(const std::vector<ZetaValue>& rows) {
  std::string out =
      "s_re,s_im,value_re,value_im,partial_re,partial_im,tail,terms,method\n";
  for (const auto& z : rows) {
    out += fmt_g17(z.s.real());
    out += ',';
    out += fmt_g17(z.s.imag());
    out += ',';
    out += fmt_g17(z.value.real());
    out += ',';
    out += fmt_g17(z.value.imag());
    out += ',';
    out += fmt_g17(z.partial_sum.real());
    out += ',';
    out += fmt_g17(z.partial_sum.imag());
    out += ',';
    out += fmt_g17(z.tail_estimate);
    out += ',';
    out += std::to_string(z.terms_used);
    out += ',';
    out += to_string(z.method);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace fracspec
