#pragma once

#include <string>

#include "zsnft/reference.hpp"
#include "zsnft/scattering.hpp"
#include "zsnft/signal.hpp"

namespace zsnft {

/// Signal CSV: header "t,q_re,q_im", floats with 17 significant digits so a
/// write/read round-trip is lossless.
void write_signal_csv(const std::string& path, const Signal& s);
Signal read_signal_csv(const std::string& path, int sigma);

/// Spectrum CSV: header "xi,a_re,a_im,b_re,b_im,r_re,r_im,h_err". Flagged
/// reflection coefficients are written as nan.
void write_spectrum_csv(const std::string& path, const ScatteringResult& res);

/// JSON run summary (format_version 1): scheme, M, N, sigma, E_c, max h_err,
/// wall time.
std::string summary_json(const ScatteringResult& res, const EnergyResult& ec);
void write_text_file(const std::string& path, const std::string& content);

void write_convergence_csv(const std::string& path, const ConvergenceReport& report);
std::string convergence_json(const ConvergenceReport& report);

/// 17-significant-digit float formatting used by every CSV writer.
std::string format_g17(double v);

}  // namespace zsnft
