// report_io.hpp — JSON and CSV encodings of analysis results

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ptliou/lemma.hpp"
#include "ptliou/spectral.hpp"

namespace ptl {

/// 17 significant digits, so every double round-trips exactly.
std::string format_double(double x);

nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const LemmaReport& report);
nlohmann::json to_json(const ScanResult& scan);
nlohmann::json to_json(const SpectrumResult& spectrum);
nlohmann::json to_json(const VMatrix& v, const EnergyEigenbasis& basis);

/// Columns: index, re_L, im_L, re_Lprime, im_Lprime.
void write_spectrum_csv(std::ostream& os, const SpectrumResult& spectrum);
/// Columns: lambda, n_imag_axis, classification.
void write_scan_csv(std::ostream& os, const ScanResult& scan);

}  // namespace ptl
