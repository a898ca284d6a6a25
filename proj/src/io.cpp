#include "zsnft/io.hpp"

#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zsnft {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_signal_csv(const std::string& path, const Signal& s) {
  std::ostringstream os;
  os << "t,q_re,q_im\n";
  for (std::size_t n = 0; n < s.samples.size(); ++n)
    os << format_g17(s.t(n)) << ',' << format_g17(s.samples[n].real()) << ','
       << format_g17(s.samples[n].imag()) << '\n';
  write_text_file(path, os.str());
}

Signal read_signal_csv(const std::string& path, int sigma) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "t,q_re,q_im")
    throw std::runtime_error("bad signal CSV header in " + path);

  std::vector<double> ts;
  Signal s;
  s.sigma = sigma;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw std::runtime_error("bad signal CSV row: " + line);
    ts.push_back(t);
    s.samples.emplace_back(re, im);
  }
  if (ts.size() < 3) throw std::runtime_error("signal CSV needs at least 3 rows");
  s.L = -ts.front();
  if (std::abs(ts.back() + ts.front()) > 1e-9 * (1.0 + std::abs(ts.back())))
    throw std::runtime_error("signal CSV grid is not symmetric about 0");
  validate(s);
  return s;
}

void write_spectrum_csv(const std::string& path, const ScatteringResult& res) {
  std::ostringstream os;
  os << "xi,a_re,a_im,b_re,b_im,r_re,r_im,h_err\n";
  for (const SpectralPoint& p : res.points) {
    const double rr = p.r_valid ? p.r.real() : std::numeric_limits<double>::quiet_NaN();
    const double ri = p.r_valid ? p.r.imag() : std::numeric_limits<double>::quiet_NaN();
    os << format_g17(p.zeta.real()) << ',' << format_g17(p.a.real()) << ','
       << format_g17(p.a.imag()) << ',' << format_g17(p.b.real()) << ','
       << format_g17(p.b.imag()) << ',' << format_g17(rr) << ',' << format_g17(ri) << ','
       << format_g17(p.h_err) << '\n';
  }
  write_text_file(path, os.str());
}

std::string summary_json(const ScatteringResult& res, const EnergyResult& ec) {
  double max_h = 0.0;
  for (const SpectralPoint& p : res.points) max_h = std::max(max_h, p.h_err);
  nlohmann::json j{{"format_version", 1},
                   {"scheme", scheme_name(res.scheme)},
                   {"M", res.M},
                   {"N", res.N},
                   {"sigma", res.sigma},
                   {"max_h_err", max_h},
                   {"wall_seconds", res.wall_seconds},
                   {"ec_valid", ec.valid}};
  if (ec.valid)
    j["E_c"] = ec.value;
  else
    j["E_c"] = nullptr;
  return j.dump(2) + "\n";
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& report) {
  std::ostringstream os;
  os << "scheme,M,rmse_a,rmse_b,rmse_r,max_h_err,wall_seconds\n";
  for (const SchemeConvergence& sc : report.per_scheme)
    for (const ConvergenceCell& c : sc.cells)
      os << scheme_name(sc.scheme) << ',' << c.M << ',' << format_g17(c.rmse_a) << ','
         << format_g17(c.rmse_b) << ',' << format_g17(c.rmse_r) << ','
         << format_g17(c.max_h_err) << ',' << format_g17(c.wall_seconds) << '\n';
  write_text_file(path, os.str());
}

std::string convergence_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["signal"] = {{"kind", "chirped-sech"},
                 {"A", report.signal.A},
                 {"C", report.signal.C},
                 {"L", report.signal.L}};
  j["sigma"] = report.sigma;
  j["schemes"] = nlohmann::json::array();
  for (const SchemeConvergence& sc : report.per_scheme) {
    nlohmann::json cells = nlohmann::json::array();
    for (const ConvergenceCell& c : sc.cells)
      cells.push_back({{"M", c.M},
                       {"rmse_a", c.rmse_a},
                       {"rmse_b", c.rmse_b},
                       {"rmse_r", c.rmse_r},
                       {"max_h_err", c.max_h_err},
                       {"wall_seconds", c.wall_seconds}});
    // order estimates between successive grid sizes
    nlohmann::json pair_slopes = nlohmann::json::array();
    for (std::size_t i = 1; i < sc.cells.size(); ++i) {
      const double dm = std::log2(double(sc.cells[i].M) / double(sc.cells[i - 1].M));
      pair_slopes.push_back(
          {{"M_from", sc.cells[i - 1].M},
           {"M_to", sc.cells[i].M},
           {"slope_a", std::log2(sc.cells[i - 1].rmse_a / sc.cells[i].rmse_a) / dm},
           {"slope_b", std::log2(sc.cells[i - 1].rmse_b / sc.cells[i].rmse_b) / dm}});
    }
    nlohmann::json entry{{"scheme", scheme_name(sc.scheme)},
                         {"cells", cells},
                         {"pair_slopes", pair_slopes},
                         {"slopes_valid", sc.slopes_valid}};
    if (sc.slopes_valid) {
      entry["slope_a"] = sc.slope_a;
      entry["slope_b"] = sc.slope_b;
      entry["slope_r"] = sc.slope_r;
    }
    j["schemes"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

}  // namespace zsnft
