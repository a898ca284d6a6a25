#include "zsnft/reference.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zsnft/gamma.hpp"

namespace zsnft {

Signal chirped_sech_signal(const ChirpedSechSpec& spec, int sigma) {
  if (!(spec.A > 0.0)) throw std::invalid_argument("chirped_sech_signal: A must be positive");
  if (spec.M < 2) throw std::invalid_argument("chirped_sech_signal: M >= 2 required");
  Signal s;
  s.L = spec.L;
  s.sigma = sigma;
  s.samples.resize(spec.M + 1);
  const double tau = 2.0 * spec.L / static_cast<double>(spec.M);
  for (std::size_t n = 0; n <= spec.M; ++n) {
    const double t = -spec.L + tau * static_cast<double>(n);
    const double sech = 1.0 / std::cosh(t);
    const double phase = spec.C * std::log(sech);
    s.samples[n] = spec.A * sech * Cx(std::cos(phase), std::sin(phase));
  }
  return s;
}

namespace {

Signal decimate_by_two(const Signal& s) {
  Signal c;
  c.L = s.L;
  c.sigma = s.sigma;
  c.samples.reserve(s.M() / 2 + 1);
  for (std::size_t n = 0; n < s.samples.size(); n += 2) c.samples.push_back(s.samples[n]);
  return c;
}

double scaled_dev(Cx x, Cx ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

}  // namespace

OracleSpectrum oracle_spectrum(const Signal& fine, const EvalGrid& grid, double tol) {
  validate(fine);
  if (fine.M() % 2 != 0)
    throw std::invalid_argument("oracle_spectrum: fine signal must have even M");

  const Signal coarse = decimate_by_two(fine);
  const ScatteringResult rc = run_conventional(coarse, grid, Scheme::tes4);
  const ScatteringResult rf = run_conventional(fine, grid, Scheme::tes4);

  OracleSpectrum o;
  const std::size_t n = grid.size();
  o.a.resize(n);
  o.b.resize(n);
  double est = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    o.a[j] = (16.0 * rf.points[j].a - rc.points[j].a) / 15.0;
    o.b[j] = (16.0 * rf.points[j].b - rc.points[j].b) / 15.0;
    est = std::max(est, scaled_dev(rc.points[j].a, rf.points[j].a));
    est = std::max(est, scaled_dev(rc.points[j].b, rf.points[j].b));
  }
  o.err_estimate = est;
  o.converged = est <= tol;
  return o;
}

std::pair<Cx, Cx> analytic_spectrum_sech(double A, double C, double xi, int sigma) {
  // From the hypergeometric reduction of the scattering problem for
  // q(t) = A sech(t)^{1+iC}: with D = sqrt(sigma A^2 - C^2/4),
  //   a = G((1-iC)/2 - i xi) G((1+iC)/2 - i xi)
  //         / [G(1/2 - i xi - D) G(1/2 - i xi + D)],
  //   b = 2^{-iC} / A * G((1-iC)/2 - i xi) G((1-iC)/2 + i xi)
  //         / [G(-iC/2 + D) G(-iC/2 - D)].
  // Both expressions are even in D, so the sqrt branch is immaterial.
  const Cx I(0.0, 1.0);
  const Cx D = std::sqrt(Cx(static_cast<double>(sigma) * A * A - C * C / 4.0));
  const Cx izeta = I * xi;

  const Cx a = std::exp(log_gamma(Cx(0.5, -C / 2.0) - izeta) +
                        log_gamma(Cx(0.5, C / 2.0) - izeta) -
                        log_gamma(Cx(0.5) - izeta - D) - log_gamma(Cx(0.5) - izeta + D));
  const Cx b = std::exp(Cx(0.0, -C * std::log(2.0))) / A *
               std::exp(log_gamma(Cx(0.5, -C / 2.0) - izeta) +
                        log_gamma(Cx(0.5, -C / 2.0) + izeta) -
                        log_gamma(Cx(0.0, -C / 2.0) + D) - log_gamma(Cx(0.0, -C / 2.0) - D));
  return {a, b};
}

void validate_analytic_sech(double A, double C, int sigma, double gate_tol,
                            double oracle_tol) {
  // L = 30 keeps the tail below 1e-12 A; grow M until the Richardson estimate
  // meets the requested oracle tolerance.
  constexpr double L = 30.0;
  constexpr std::size_t n_xi = 161;
  std::size_t M = 1 << 13;
  OracleSpectrum o;
  EvalGrid grid;
  for (;; M *= 2) {
    if (M > (1 << 18))
      throw std::runtime_error("validate_analytic_sech: oracle did not converge to tolerance");
    const Signal s = chirped_sech_signal({A, C, L, M}, sigma);
    grid = make_uniform_grid(-20.0, 20.0, n_xi, s.tau());
    o = oracle_spectrum(s, grid, oracle_tol);
    if (o.converged) break;
  }

  double worst = 0.0;
  double worst_xi = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto [a, b] = analytic_spectrum_sech(A, C, grid.xi[j], sigma);
    const double d = std::max(scaled_dev(a, o.a[j]), scaled_dev(b, o.b[j]));
    if (d > worst) {
      worst = d;
      worst_xi = grid.xi[j];
    }
  }
  if (worst > gate_tol) {
    std::ostringstream msg;
    msg << "analytic_spectrum_sech failed its oracle gate: A=" << A << " C=" << C
        << " sigma=" << sigma << " max scaled deviation " << worst << " at xi=" << worst_xi
        << " (gate " << gate_tol << ", oracle estimate " << o.err_estimate << ")";
    throw std::runtime_error(msg.str());
  }
}

double error_ec(double ec_comp, double ec_exact) {
  const double phi0 = std::abs(ec_exact) > 1.0 ? ec_exact : 1.0;
  return std::abs(ec_comp - ec_exact) / std::abs(phi0);
}

double rmse(const std::vector<Cx>& comp, const std::vector<Cx>& exact) {
  if (comp.size() != exact.size() || comp.empty())
    throw std::invalid_argument("rmse: arrays must be equal nonzero length");
  double sum = 0.0;
  for (std::size_t j = 0; j < comp.size(); ++j) {
    const double phi0 = std::max(1.0, std::abs(exact[j]));
    sum += std::norm(comp[j] - exact[j]) / (phi0 * phi0);
  }
  return std::sqrt(sum / static_cast<double>(comp.size()));
}

double rmse(const std::vector<double>& comp, const std::vector<double>& exact) {
  if (comp.size() != exact.size() || comp.empty())
    throw std::invalid_argument("rmse: arrays must be equal nonzero length");
  double sum = 0.0;
  for (std::size_t j = 0; j < comp.size(); ++j) {
    const double phi0 = std::max(1.0, std::abs(exact[j]));
    const double d = (comp[j] - exact[j]) / phi0;
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(comp.size()));
}

double fit_log2_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_log2_slope: need at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log2(x[i]);
    const double ly = -std::log2(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const ChirpedSechSpec& base, int sigma,
                                    double xi_min, double xi_max, std::size_t n_xi,
                                    const std::vector<Scheme>& schemes,
                                    const std::vector<std::size_t>& M_list,
                                    std::size_t oracle_factor, ReferenceKind reference) {
  if (M_list.size() < 3)
    throw std::invalid_argument("convergence_study: need at least 3 grid sizes");
  for (std::size_t i = 1; i < M_list.size(); ++i)
    if (M_list[i] <= M_list[i - 1])
      throw std::invalid_argument("convergence_study: M_list must be strictly increasing");

  ConvergenceReport report;
  report.signal = base;
  report.sigma = sigma;

  const EvalGrid grid = make_uniform_grid(xi_min, xi_max, n_xi, 0.0);
  OracleSpectrum oracle;
  if (reference == ReferenceKind::oracle) {
    // One shared reference, well below the finest tested resolution.
    ChirpedSechSpec ospec = base;
    ospec.M = M_list.back() * oracle_factor;
    const Signal osig = chirped_sech_signal(ospec, sigma);
    EvalGrid og = grid;
    og.tau = osig.tau();
    oracle = oracle_spectrum(osig, og, 1e-10);
  } else {
    validate_analytic_sech(base.A, base.C, sigma);
    oracle.a.resize(grid.size());
    oracle.b.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto [a, b] = analytic_spectrum_sech(base.A, base.C, grid.xi[j], sigma);
      oracle.a[j] = a;
      oracle.b[j] = b;
    }
    oracle.converged = true;
  }
  report.oracle_estimate = oracle.err_estimate;
  report.oracle_converged = oracle.converged;

  std::vector<Cx> r_ref(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) r_ref[j] = oracle.b[j] / oracle.a[j];

  for (Scheme scheme : schemes) {
    SchemeConvergence sc;
    sc.scheme = scheme;
    for (std::size_t M : M_list) {
      ChirpedSechSpec spec = base;
      spec.M = M;
      const Signal s = chirped_sech_signal(spec, sigma);
      EvalGrid g = make_uniform_grid(xi_min, xi_max, n_xi, s.tau());
      const ScatteringResult res = (scheme == Scheme::ftes4sb)
                                       ? run_fast(s, g)
                                       : run_conventional(s, g, scheme);
      ConvergenceCell cell;
      cell.M = M;
      cell.wall_seconds = res.wall_seconds;
      std::vector<Cx> a(res.N), b(res.N), r(res.N);
      for (std::size_t j = 0; j < res.N; ++j) {
        a[j] = res.points[j].a;
        b[j] = res.points[j].b;
        r[j] = res.points[j].r;
        cell.max_h_err = std::max(cell.max_h_err, res.points[j].h_err);
      }
      cell.rmse_a = rmse(a, oracle.a);
      cell.rmse_b = rmse(b, oracle.b);
      cell.rmse_r = rmse(r, r_ref);
      sc.cells.push_back(cell);
    }

    // Fit only over the pre-roundoff regime.
    std::vector<double> xm, ya, yb, yr;
    for (const ConvergenceCell& c : sc.cells) {
      if (c.rmse_a > 1e-12 && c.rmse_b > 1e-12) {
        xm.push_back(static_cast<double>(c.M));
        ya.push_back(c.rmse_a);
        yb.push_back(c.rmse_b);
        yr.push_back(std::max(c.rmse_r, 1e-300));
      }
    }
    if (xm.size() >= 2) {
      sc.slope_a = fit_log2_slope(xm, ya);
      sc.slope_b = fit_log2_slope(xm, yb);
      sc.slope_r = fit_log2_slope(xm, yr);
      sc.slopes_valid = true;
    }
    report.per_scheme.push_back(std::move(sc));
  }
  return report;
}

}  // namespace zsnft
