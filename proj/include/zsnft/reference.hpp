#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "zsnft/scattering.hpp"
#include "zsnft/signal.hpp"

namespace zsnft {

/// Chirped hyperbolic secant test signal q(t) = A sech(t)^{1+iC}.
struct ChirpedSechSpec {
  double A{1.0};
  double C{0.0};
  double L{30.0};
  std::size_t M{1024};
};

Signal chirped_sech_signal(const ChirpedSechSpec& spec, int sigma = +1);

/// Brute-force reference: TES4 at M/2 and M combined by 4th-order Richardson
/// extrapolation, (16 v_M - v_{M/2}) / 15. The error estimate is the maximum
/// scaled step-to-step change max(|v_M - v_{M/2}| / max(1, |v_M|)) over the
/// grid and over both a and b.
struct OracleSpectrum {
  std::vector<Cx> a, b;
  double err_estimate{0.0};
  bool converged{false};
};
OracleSpectrum oracle_spectrum(const Signal& fine, const EvalGrid& grid, double tol);

/// Closed-form spectrum of the chirped sech potential (Gamma-function ratios
/// of the hypergeometric-solvable problem). Must be validated against
/// oracle_spectrum via validate_analytic_sech before being used as ground
/// truth.
std::pair<Cx, Cx> analytic_spectrum_sech(double A, double C, double xi, int sigma);

/// Validation gate: compares the closed form against the Richardson oracle on
/// xi in [-20, 20]. Throws std::runtime_error with a diagnostic when the
/// maximum scaled deviation exceeds `gate_tol` (default 1e-6) at oracle
/// tolerance `oracle_tol` (default 1e-8).
void validate_analytic_sech(double A, double C, int sigma, double gate_tol = 1e-6,
                            double oracle_tol = 1e-8);

/// error[E_c] = |comp - exact| / |phi0|, phi0 = exact when |exact| > 1 else 1.
double error_ec(double ec_comp, double ec_exact);

/// RMSE[phi] = sqrt(mean |comp - exact|^2 / |phi0|^2), phi0 as above.
double rmse(const std::vector<Cx>& comp, const std::vector<Cx>& exact);
double rmse(const std::vector<double>& comp, const std::vector<double>& exact);

struct ConvergenceCell {
  std::size_t M{0};
  double rmse_a{0.0}, rmse_b{0.0}, rmse_r{0.0};
  double max_h_err{0.0};
  double wall_seconds{0.0};
};

struct SchemeConvergence {
  Scheme scheme{Scheme::bo};
  std::vector<ConvergenceCell> cells;
  // Least-squares slopes of log2 RMSE vs log2 M over the pre-roundoff regime
  // (RMSE > 1e-12); valid only when at least two cells qualify.
  double slope_a{0.0}, slope_b{0.0}, slope_r{0.0};
  bool slopes_valid{false};
};

struct ConvergenceReport {
  ChirpedSechSpec signal;
  int sigma{+1};
  std::vector<SchemeConvergence> per_scheme;
  double oracle_estimate{0.0};
  bool oracle_converged{false};
};

enum class ReferenceKind { oracle, analytic };

/// Run each scheme at each M of the strictly increasing M_list against the
/// reference spectrum and collect RMSEs, invariant errors, timings and fitted
/// orders. The oracle reference is computed once at oracle_factor * max M;
/// the analytic reference passes through its validation gate first.
ConvergenceReport convergence_study(const ChirpedSechSpec& base, int sigma,
                                    double xi_min, double xi_max, std::size_t n_xi,
                                    const std::vector<Scheme>& schemes,
                                    const std::vector<std::size_t>& M_list,
                                    std::size_t oracle_factor = 4,
                                    ReferenceKind reference = ReferenceKind::oracle);

/// Fitted slope of -log2(y) against log2(x); used for order estimates.
double fit_log2_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace zsnft
