// zsnft command-line interface: synthesize test signals, compute continuous
// NFT spectra, run convergence studies and timing benchmarks.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zsnft/io.hpp"
#include "zsnft/matpoly.hpp"
#include "zsnft/parallel.hpp"
#include "zsnft/reference.hpp"
#include "zsnft/scattering.hpp"
#include "zsnft/simd/kernels.hpp"

using namespace zsnft;

namespace {

struct SignalOpts {
  std::string input;        // CSV path; empty -> synthesize
  std::string kind{"chirped-sech"};
  double A{5.2}, C{4.0}, L{30.0};
  std::size_t M{4096};
  int sigma{+1};
};

void add_sigma_option(CLI::App* cmd, int& sigma) {
  cmd->add_option("--sigma", sigma, "dispersion sign: +1 (anomalous) or -1 (normal)")
      ->check(CLI::IsMember({1, -1}))
      ->default_val(1);
}

void add_signal_options(CLI::App* cmd, SignalOpts& o) {
  cmd->add_option("--input", o.input, "signal CSV (header t,q_re,q_im); overrides --signal");
  cmd->add_option("--signal", o.kind, "synthetic signal kind")
      ->check(CLI::IsMember({"chirped-sech", "zero"}));
  cmd->add_option("--A", o.A, "amplitude of the chirped sech");
  cmd->add_option("--C", o.C, "chirp of the chirped sech");
  cmd->add_option("--L", o.L, "half interval [-L, L]");
  cmd->add_option("--M", o.M, "number of grid steps (M+1 samples)");
  add_sigma_option(cmd, o.sigma);
}

Signal make_signal(const SignalOpts& o) {
  if (!o.input.empty()) return read_signal_csv(o.input, o.sigma);
  if (o.kind == "zero") {
    Signal s;
    s.L = o.L;
    s.sigma = o.sigma;
    s.samples.assign(o.M + 1, Cx(0.0));
    return s;
  }
  return chirped_sech_signal({o.A, o.C, o.L, o.M}, o.sigma);
}

std::vector<Scheme> parse_schemes(const std::string& csv) {
  std::vector<Scheme> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                       : comma - pos);
    if (!tok.empty()) {
      const auto s = parse_scheme(tok);
      if (!s) throw CLI::ValidationError("--scheme", "unknown scheme: " + tok);
      out.push_back(*s);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--scheme", "no scheme given");
  return out;
}

ScatteringResult run_scheme(const Signal& s, const EvalGrid& g, Scheme scheme) {
  return scheme == Scheme::ftes4sb ? run_fast(s, g) : run_conventional(s, g, scheme);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward nonlinear Fourier transforms for the Zakharov-Shabat problem"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = auto; ZSNFT_THREADS sets the default)");

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "write a synthetic signal CSV");
  SignalOpts synth_opts;
  std::string synth_kind_pos;
  std::string synth_out{"signal.csv"};
  synth->add_option("kind", synth_kind_pos, "chirped-sech | zero")->required();
  synth->add_option("--A", synth_opts.A, "amplitude");
  synth->add_option("--C", synth_opts.C, "chirp");
  synth->add_option("--L", synth_opts.L, "half interval");
  synth->add_option("--M", synth_opts.M, "grid steps");
  add_sigma_option(synth, synth_opts.sigma);
  synth->add_option("--out", synth_out, "output CSV path");

  // ---- compute ----
  auto* compute = app.add_subcommand("compute", "compute the continuous spectrum");
  SignalOpts comp_sig;
  add_signal_options(compute, comp_sig);
  std::string comp_scheme{"tes4sb"};
  double xi_min = -20.0, xi_max = 20.0;
  std::size_t n_xi = 1025;
  std::string comp_out{"spectrum.csv"}, comp_summary;
  compute->add_option("--scheme", comp_scheme, "bo | tes4 | tes4sb | ftes4sb")
      ->check(CLI::IsMember({"bo", "tes4", "tes4sb", "ftes4sb"}));
  compute->add_option("--xi-min", xi_min, "lower spectral bound");
  compute->add_option("--xi-max", xi_max, "upper spectral bound");
  compute->add_option("--n-xi", n_xi, "number of spectral points");
  compute->add_option("--out", comp_out, "spectrum CSV path");
  compute->add_option("--summary", comp_summary, "summary JSON path (default: <out>.json)");

  // ---- invariant ----
  auto* invariant = app.add_subcommand(
      "invariant", "per-xi quadratic-invariant error |1 - |a|^2 - sigma |b|^2|");
  SignalOpts inv_sig;
  add_signal_options(invariant, inv_sig);
  std::string inv_scheme{"tes4sb"};
  double inv_xi_min = -20.0, inv_xi_max = 20.0;
  std::size_t inv_n_xi = 1025;
  std::string inv_out{"invariant.csv"}, inv_summary;
  invariant->add_option("--scheme", inv_scheme, "bo | tes4 | tes4sb | ftes4sb")
      ->check(CLI::IsMember({"bo", "tes4", "tes4sb", "ftes4sb"}));
  invariant->add_option("--xi-min", inv_xi_min, "lower spectral bound");
  invariant->add_option("--xi-max", inv_xi_max, "upper spectral bound");
  invariant->add_option("--n-xi", inv_n_xi, "number of spectral points");
  invariant->add_option("--out", inv_out, "per-xi CSV path");
  invariant->add_option("--summary", inv_summary, "summary JSON path (default: <out>.json)");

  // ---- convergence ----
  auto* conv = app.add_subcommand("convergence", "grid-refinement error study");
  SignalOpts conv_sig;  // synthetic only
  conv->add_option("--A", conv_sig.A, "amplitude");
  conv->add_option("--C", conv_sig.C, "chirp");
  conv->add_option("--L", conv_sig.L, "half interval");
  add_sigma_option(conv, conv_sig.sigma);
  std::string conv_schemes{"bo,tes4,tes4sb,ftes4sb"};
  std::vector<std::size_t> conv_M;
  double conv_xi_min = -20.0, conv_xi_max = 20.0;
  std::size_t conv_n_xi = 1025;
  std::string conv_out{"convergence.csv"}, conv_json_path;
  std::string conv_ref{"oracle"};
  conv->add_option("--scheme", conv_schemes, "comma-separated scheme list");
  conv->add_option("--reference", conv_ref,
                   "reference spectrum: Richardson oracle or gated closed form")
      ->check(CLI::IsMember({"oracle", "analytic"}));
  conv->add_option("--M", conv_M, "grid sizes (>= 3, increasing)")->required();
  conv->add_option("--xi-min", conv_xi_min, "lower spectral bound");
  conv->add_option("--xi-max", conv_xi_max, "upper spectral bound");
  conv->add_option("--n-xi", conv_n_xi, "number of spectral points");
  conv->add_option("--out", conv_out, "report CSV path");
  conv->add_option("--json", conv_json_path, "report JSON path (default: <out>.json)");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "median wall time per (scheme, M)");
  SignalOpts bench_sig;
  bench->add_option("--A", bench_sig.A, "amplitude");
  bench->add_option("--C", bench_sig.C, "chirp");
  bench->add_option("--L", bench_sig.L, "half interval");
  add_sigma_option(bench, bench_sig.sigma);
  std::string bench_schemes{"tes4sb,ftes4sb"};
  std::vector<std::size_t> bench_M;
  double bench_xi_min = -20.0, bench_xi_max = 20.0;
  std::size_t bench_n_xi = 1025;
  std::size_t repeats = 3;
  std::string bench_out{"bench.csv"};
  bench->add_option("--scheme", bench_schemes, "comma-separated scheme list");
  bench->add_option("--M", bench_M, "grid sizes")->required();
  bench->add_option("--repeats", repeats, "timed repeats (median reported, >= 3)")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1000}));
  bench->add_option("--xi-min", bench_xi_min, "lower spectral bound");
  bench->add_option("--xi-max", bench_xi_max, "upper spectral bound");
  bench->add_option("--n-xi", bench_n_xi, "number of spectral points");
  bench->add_option("--out", bench_out, "timings CSV path");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) set_thread_count(threads);

  try {
    if (synth->parsed()) {
      SignalOpts o = synth_opts;
      o.kind = synth_kind_pos;
      if (o.kind != "chirped-sech" && o.kind != "zero") {
        std::cerr << "unknown signal kind: " << o.kind << "\n";
        return 1;
      }
      write_signal_csv(synth_out, make_signal(o));
      std::cout << "wrote " << synth_out << "\n";
      return 0;
    }

    if (compute->parsed() || invariant->parsed()) {
      const bool is_inv = invariant->parsed();
      const SignalOpts& so = is_inv ? inv_sig : comp_sig;
      const std::string& scheme_str = is_inv ? inv_scheme : comp_scheme;
      const double lo = is_inv ? inv_xi_min : xi_min;
      const double hi = is_inv ? inv_xi_max : xi_max;
      const std::size_t nx = is_inv ? inv_n_xi : n_xi;
      const std::string& out = is_inv ? inv_out : comp_out;
      std::string summary = is_inv ? inv_summary : comp_summary;
      if (summary.empty()) summary = out + ".json";

      const Signal s = make_signal(so);
      const EvalGrid g = make_uniform_grid(lo, hi, nx, s.tau());
      const Scheme scheme = *parse_scheme(scheme_str);
      const ScatteringResult res = run_scheme(s, g, scheme);
      const EnergyResult ec = continuous_energy(res, s.sigma);

      if (is_inv) {
        std::string csv = "xi,h_err\n";
        for (const SpectralPoint& p : res.points)
          csv += format_g17(p.zeta.real()) + "," + format_g17(p.h_err) + "\n";
        write_text_file(out, csv);
      } else {
        write_spectrum_csv(out, res);
      }
      write_text_file(summary, summary_json(res, ec));

      double max_h = 0.0;
      bool all_r_valid = true;
      for (const SpectralPoint& p : res.points) {
        max_h = std::max(max_h, p.h_err);
        all_r_valid = all_r_valid && p.r_valid;
      }
      std::cout << "scheme=" << scheme_name(scheme) << " M=" << res.M << " N=" << res.N
                << " sigma=" << res.sigma << " max_h_err=" << max_h
                << " wall=" << res.wall_seconds << "s\n";
      // Nonzero status when a validation flag was raised (invalid r or E_c).
      return (all_r_valid && (ec.valid || res.sigma == 1)) ? 0 : 2;
    }

    if (conv->parsed()) {
      std::vector<std::size_t> Ms = conv_M;
      std::sort(Ms.begin(), Ms.end());
      const ChirpedSechSpec spec{conv_sig.A, conv_sig.C, conv_sig.L, Ms.back()};
      const ConvergenceReport report = convergence_study(
          spec, conv_sig.sigma, conv_xi_min, conv_xi_max, conv_n_xi,
          parse_schemes(conv_schemes), Ms, 4,
          conv_ref == "analytic" ? ReferenceKind::analytic : ReferenceKind::oracle);
      write_convergence_csv(conv_out, report);
      const std::string jpath = conv_json_path.empty() ? conv_out + ".json" : conv_json_path;
      write_text_file(jpath, convergence_json(report));
      for (const SchemeConvergence& sc : report.per_scheme) {
        std::cout << scheme_name(sc.scheme) << ": ";
        if (sc.slopes_valid)
          std::cout << "slope_a=" << sc.slope_a << " slope_b=" << sc.slope_b << "\n";
        else
          std::cout << "slopes undefined (errors at roundoff level)\n";
      }
      return 0;
    }

    if (bench->parsed()) {
      const std::vector<Scheme> schemes = parse_schemes(bench_schemes);
      std::string csv = "scheme,M,N,median_seconds,repeats\n";
      nlohmann::json rows = nlohmann::json::array();
      for (const Scheme scheme : schemes) {
        for (const std::size_t M : bench_M) {
          const Signal s =
              chirped_sech_signal({bench_sig.A, bench_sig.C, bench_sig.L, M}, bench_sig.sigma);
          const EvalGrid g = make_uniform_grid(bench_xi_min, bench_xi_max, bench_n_xi, s.tau());
          run_scheme(s, g, scheme);  // warmup, discarded
          std::vector<double> times;
          for (std::size_t rep = 0; rep < repeats; ++rep)
            times.push_back(run_scheme(s, g, scheme).wall_seconds);
          const double med = median(times);
          csv += scheme_name(scheme) + "," + std::to_string(M) + "," +
                 std::to_string(bench_n_xi) + "," + format_g17(med) + "," +
                 std::to_string(repeats) + "\n";
          rows.push_back({{"scheme", scheme_name(scheme)},
                          {"M", M},
                          {"N", bench_n_xi},
                          {"median_seconds", med},
                          {"repeats", repeats}});
          std::cout << scheme_name(scheme) << " M=" << M << " median=" << med << "s\n";
        }
      }
      write_text_file(bench_out, csv);
      nlohmann::json j{{"format_version", 1}, {"rows", rows}};
      write_text_file(bench_out + ".json", j.dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
