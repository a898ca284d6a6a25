#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsnft/mat2.hpp"
#include "zsnft/signal.hpp"

namespace zsnft {

enum class Scheme { bo, tes4, tes4sb, ftes4sb };

std::string scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& name);

/// One spectral point of the output: Jost coefficients a, b, the reflection
/// coefficient r = b/a (flagged invalid when |a| = 0), and the quadratic
/// invariant error |1 - |a|^2 - sigma |b|^2|.
struct SpectralPoint {
  Cx zeta{};
  Cx a{}, b{}, r{};
  double h_err{0.0};
  bool r_valid{true};
};

struct ScatteringResult {
  std::vector<SpectralPoint> points;
  Scheme scheme{Scheme::bo};
  std::size_t M{0};
  std::size_t N{0};
  int sigma{+1};
  double wall_seconds{0.0};
};

/// |1 - |a|^2 - sigma |b|^2|
double invariant_error(Cx a, Cx b, int sigma);

/// Per-point sequential transfer products. The state runs from -L - tau/2 to
/// L + tau/2 (each step maps t_n - tau/2 -> t_n + tau/2), so with the Jost
/// start (e^{-i zeta t}, 0): a = T11 e^{i zeta (M+1) tau}, b = T21.
/// `zeta_override` replaces the real grid by arbitrary complex points
/// (upper-half-plane evaluation); only this path accepts Im(zeta) != 0.
/// Scheme ftes4sb is not a conventional scheme here; use run_fast.
ScatteringResult run_conventional(const Signal& s, const EvalGrid& grid, Scheme scheme,
                                  const std::vector<Cx>* zeta_override = nullptr);

/// Fast path: per-step polynomials -> binary tree product -> grid evaluation,
/// then the same boundary-phase extraction as run_conventional.
ScatteringResult run_fast(const Signal& s, const EvalGrid& grid);

/// Continuous-spectrum energy by the trace formula
///   E_c = (sigma / pi) * Int ln(1 + sigma |r|^2) dxi
/// integrated with the trapezoid rule on the result's grid. For sigma = -1
/// the integrand needs |r| < 1; otherwise the result is flagged invalid.
struct EnergyResult {
  double value{0.0};
  bool valid{true};
};
EnergyResult continuous_energy(const ScatteringResult& res, int sigma);

}  // namespace zsnft
