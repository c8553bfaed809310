#pragma once

// Deterministic text serialization: fixed %.17g everywhere, no locale, no
// timestamps, so identical runs produce byte-identical files.

#include <string>
#include <vector>

#include "fracspec/spectrum.hpp"
#include "fracspec/sturm_liouville.hpp"
#include "fracspec/zeta_value.hpp"

namespace fracspec {

std::string fmt_g17(double x);

// value,multiplicity rows with a header line
std::string spectrum_csv(const SpectrumList& spec);

// index,lambda rows
std::string generating_set_csv(const GeneratingSet& S);

// s_re,s_im,value_re,value_im,partial_re,partial_im,tail,terms,method
std::string zeta_rows_csv(const std::vector<ZetaValue>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fracspec
