// Command-line driver. Kept in a header so tests can run commands in-process.
#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fractorus/fractorus.hpp"
#include "fractorus/verify.hpp"

namespace fractorus::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInvalidInput = 2 };

/// Thrown for any input that fails validation; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "pi/6", "2pi/3", "-3*pi/4", "pi" or plain radians.
inline double parse_alpha(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([+-]?)\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)",
                                  std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    double v = pi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      const double den = std::stod(m[3].str());
      if (den == 0.0) throw InputError("invalid alpha '" + text + "'");
      v /= den;
    }
    return m[1].str() == "-" ? -v : v;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("invalid alpha '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw InputError("invalid alpha '" + text + "'");
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      if constexpr (std::is_integral_v<T>) {
        out.push_back(static_cast<T>(std::stol(item, &used)));
      } else {
        out.push_back(static_cast<T>(std::stod(item, &used)));
      }
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("invalid ") + what + " list '" + text + "'");
    }
  }
  if (out.empty()) throw InputError(std::string("empty ") + what + " list");
  return out;
}

/// Options shared by every signal-producing command.
struct SignalOptions {
  std::string name = "sawtooth";
  std::string input;  // sample CSV, overrides name
  double sigma = 0.0;  // <= 0: command default as a fraction of the period
  int degree = 8;
  std::string mode = "1";
  std::uint64_t seed = verify::kDefaultSeed;
};

/// Sample CSV: a header row, then M^n rows whose last two columns are re, im.
inline PeriodicSignal read_samples_csv(const std::string& path, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::vector<cplx> values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto last = line.rfind(',');
    const auto prev = last == std::string::npos ? std::string::npos : line.rfind(',', last - 1);
    try {
      const std::string re = line.substr(prev == std::string::npos ? 0 : prev + 1,
                                         last - (prev == std::string::npos ? 0 : prev + 1));
      values.emplace_back(std::stod(re), std::stod(line.substr(last + 1)));
    } catch (const std::exception&) {
      throw InputError("malformed sample row in '" + path + "'");
    }
  }
  if (values.size() != grid.size()) {
    throw InputError("input has " + std::to_string(values.size()) + " samples, grid needs " +
                     std::to_string(grid.size()));
  }
  return PeriodicSignal(grid, std::move(values));
}

inline PeriodicSignal make_signal(const SignalOptions& opt, const GridSpec& grid,
                                  double default_sigma_fraction) {
  if (!opt.input.empty()) return read_samples_csv(opt.input, grid);
  if (opt.name == "sawtooth") return signals::sawtooth(grid);
  if (opt.name == "constant") return signals::constant(grid);
  if (opt.name == "gaussian") {
    const double sigma = opt.sigma > 0.0 ? opt.sigma : default_sigma_fraction * grid.period();
    return signals::gaussian_periodized(grid, sigma);
  }
  if (opt.name == "random") {
    if (opt.degree < 0 || grid.samples() < 2 * opt.degree + 2) {
      throw InputError("random signal degree must satisfy 0 <= degree and 2*degree + 2 <= M");
    }
    return signals::random_bandlimited(grid, opt.degree, opt.seed).signal;
  }
  if (opt.name == "kernel-mode") {
    std::vector<int> m0 = parse_list<int>(opt.mode, "mode");
    if (m0.size() == 1 && grid.dim() > 1) m0.assign(grid.dim(), m0[0]);
    if (static_cast<int>(m0.size()) != grid.dim()) throw InputError("mode dimension does not match --dim");
    return signals::kernel_mode(grid, m0);
  }
  throw InputError("unknown signal '" + opt.name + "'");
}

inline void add_signal_options(CLI::App* cmd, SignalOptions& s) {
  cmd->add_option("--signal", s.name, "sawtooth | constant | gaussian | random | kernel-mode");
  cmd->add_option("--input", s.input, "sample CSV (last two columns re, im)");
  cmd->add_option("--sigma", s.sigma, "Gaussian width (default depends on the command)");
  cmd->add_option("--degree", s.degree, "degree of the random band-limited signal");
  cmd->add_option("--mode", s.mode, "frequency m0 of kernel-mode, comma separated");
  cmd->add_option("--seed", s.seed, "seed for the random signal");
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path.string() + "'");
  return os;
}

// ------------------------------------------------------------------ coeffs

struct CoeffsConfig {
  std::string alpha = "pi/6";
  int dim = 1;
  int M = 1024;
  int N = 32;
  std::string output;
  SignalOptions signal;
};

inline int cmd_coeffs(const CoeffsConfig& cfg, std::ostream& out, std::ostream& err) {
  const GridSpec grid(cfg.dim, cfg.M, FracOrder(parse_alpha(cfg.alpha)));
  const PeriodicSignal f = make_signal(cfg.signal, grid, 0.25);
  const FracCoefficients c = analyze(f, cfg.N);

  if (cfg.output.empty()) {
    write_coefficients_csv(out, c);
  } else {
    auto os = open_output(cfg.output);
    write_coefficients_csv(os, c);
  }

  double l1 = 0.0;
  for (cplx v : f.values()) l1 += std::abs(v);
  l1 *= grid.cell_volume();
  double sup = 0.0;
  for (cplx v : c.data()) sup = std::max(sup, std::abs(v));
  const double bound = std::pow(grid.order().abs_csc(), 0.5 * cfg.dim) * l1;
  const bool pass = sup <= bound + 1e-10;
  err << (pass ? "PASS" : "FAIL") << " sup bound: max|c(m)| = " << io::format_double(sup)
      << " <= |csc|^(n/2) * L1 = " << io::format_double(bound) << '\n';
  return pass ? kOk : kCheckFailed;
}

// ----------------------------------------------------------------- recover

struct RecoverConfig {
  std::string alpha = "pi/6";
  int M = 2048;
  std::string Ns = "10,50,100,500";
  std::string out_dir = ".";
};

inline int cmd_recover(const RecoverConfig& cfg, std::ostream& out, std::ostream&) {
  const FracOrder order(parse_alpha(cfg.alpha));
  const GridSpec grid(1, cfg.M, order);
  const auto Ns = parse_list<int>(cfg.Ns, "N");
  const int jump_window = 2;
  for (int N : Ns) {
    if (N < 0) throw InputError("N must be >= 0");
    FracCoefficients c(order, 1, N);
    for (int m = -N; m <= N; ++m) c.at({m}) = signals::sawtooth_coefficient(m, order) * (1.0 - std::abs(m) / (N + 1.0));
    const PeriodicSignal recon = synthesize_grid(c, grid);

    const std::filesystem::path path =
        std::filesystem::path(cfg.out_dir) / ("recover_N" + std::to_string(N) + ".csv");
    auto os = open_output(path);
    os << "x,re_recon,im_recon,re_true,im_true\n";
    double away = 0.0;
    for (int j = 0; j < cfg.M; ++j) {
      const double x = grid.coord(j);
      const cplx t = signals::sawtooth_value(x, order);
      os << io::format_double(x) << ',' << io::format_double(recon[j].real()) << ','
         << io::format_double(recon[j].imag()) << ',' << io::format_double(t.real()) << ','
         << io::format_double(t.imag()) << '\n';
      if (std::min(j, cfg.M - j) > jump_window) away = std::max(away, std::abs(recon[j] - t));
    }
    out << "N=" << N << " file=" << path.string() << " max_error_off_jump=" << io::format_double(away)
        << " value_at_jump=" << io::format_double(std::abs(recon[0])) << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------ heat / dirichlet

struct PdeConfig {
  std::string alpha = "pi/3";
  int dim = 1;
  int M = 256;
  int N = -1;  // default: M/2 - 1
  double k = 0.01;
  std::string times = "0,0.1,0.2";
  double dt = 1e-3;
  double tolerance = 1e-4;
  std::string out_dir = ".";
  SignalOptions signal{.name = "gaussian"};
};

/// Residual around time t on a grid with M samples and step dt.
inline double residual_near(const PdeConfig& cfg, const Evolution& ev, double t, int M, double dt) {
  const GridSpec grid(cfg.dim, M, FracOrder(parse_alpha(cfg.alpha)));
  const PeriodicSignal f = make_signal(cfg.signal, grid, 0.5);
  const int N = cfg.N >= 0 ? std::min(cfg.N * M / cfg.M, M / 2 - 1) : M / 2 - 1;
  const double t0 = std::max(t, dt);
  return pde_residual(solve_field(analyze(f, N), grid, {t0 - dt, t0, t0 + dt}, ev));
}

inline int cmd_pde(const PdeConfig& cfg, bool heat, std::ostream& out, std::ostream& err) {
  const FracOrder order(parse_alpha(cfg.alpha));
  const GridSpec grid(cfg.dim, cfg.M, order);
  const int N = cfg.N >= 0 ? cfg.N : cfg.M / 2 - 1;
  const auto times = parse_list<double>(cfg.times, "time");
  for (double t : times) {
    if (t < 0.0) throw InputError("time must be >= 0");
  }
  if (!(cfg.dt > 0.0)) throw InputError("dt must be > 0");
  const Evolution ev = heat ? Evolution::heat(cfg.k) : Evolution::dirichlet();

  const PeriodicSignal f = make_signal(cfg.signal, grid, 0.5);
  const FracCoefficients coeffs = analyze(f, N);
  const Field field = solve_field(coeffs, grid, times, ev);

  const std::filesystem::path dir(cfg.out_dir);
  for (std::size_t i = 0; i < times.size(); ++i) {
    auto os = open_output(dir / ("field_t" + std::to_string(i) + ".csv"));
    write_field_level_csv(os, field, i);
  }
  nlohmann::ordered_json manifest = {
      {"problem", heat ? "heat" : "dirichlet"},
      {"alpha", order.alpha()},
      {"dim", cfg.dim},
      {"M", cfg.M},
      {"N", N},
      {"times", times},
      {"signal", cfg.signal.input.empty() ? cfg.signal.name : cfg.signal.input},
  };
  if (heat) manifest["k"] = cfg.k;
  {
    auto os = open_output(dir / "manifest.json");
    os << manifest.dump(2) << '\n';
  }

  double worst = 0.0, fine_worst = 0.0;
  for (double t : times) {
    worst = std::max(worst, residual_near(cfg, ev, t, cfg.M, cfg.dt));
    fine_worst = std::max(fine_worst, residual_near(cfg, ev, t, 2 * cfg.M, 0.5 * cfg.dt));
  }
  const double order_est = fine_worst > 0.0 ? std::log2(worst / fine_worst) : 0.0;
  nlohmann::ordered_json summary = {
      {"max_residual", worst}, {"order_estimate", order_est}, {"dt", cfg.dt}, {"tolerance", cfg.tolerance}};
  {
    auto os = open_output(dir / "residual.json");
    os << summary.dump(2) << '\n';
  }
  const bool pass = worst <= cfg.tolerance;
  out << (pass ? "PASS" : "FAIL") << " residual " << io::format_double(worst) << " (order estimate "
      << io::format_double(order_est) << ")\n";
  if (!pass) err << "residual above tolerance " << io::format_double(cfg.tolerance) << '\n';
  return pass ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ verify

struct VerifyConfig {
  std::uint64_t seed = verify::kDefaultSeed;
  std::string only;
  std::string fault;
  std::string output;
};

inline int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  verify::Options opt;
  opt.seed = cfg.seed;
  if (!cfg.only.empty()) {
    std::stringstream ss(cfg.only);
    std::string g;
    while (std::getline(ss, g, ',')) opt.only.push_back(g);
    std::vector<std::string> known;
    for (const auto& def : verify::all_checks()) known.push_back(verify::group_of(def.id));
    for (const auto& g2 : opt.only) {
      if (std::find(known.begin(), known.end(), g2) == known.end()) {
        throw InputError("unknown check group '" + g2 + "'");
      }
    }
  }
  if (!cfg.fault.empty()) {
    if (cfg.fault != "csc-sign") throw InputError("unknown fault '" + cfg.fault + "'");
    opt.fault_csc_sign = true;
  }
  err << "seed: " << cfg.seed << '\n';
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = verify::run(opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  int failed = 0;
  for (const auto& r : results) {
    checks.push_back({{"check_id", r.id},
                      {"paper_anchor", r.anchor},
                      {"status", r.pass ? "PASS" : "FAIL"},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance},
                      {"relation", r.relation}});
    if (!r.pass) ++failed;
    err << (r.pass ? "PASS " : "FAIL ") << r.id << '\n';
  }
  nlohmann::ordered_json report = {{"seed", cfg.seed},
                                   {"checks", checks},
                                   {"passed", static_cast<int>(results.size()) - failed},
                                   {"failed", failed}};
  if (cfg.output.empty()) {
    out << report.dump(2) << '\n';
  } else {
    auto os = open_output(cfg.output);
    os << report.dump(2) << '\n';
  }
  err << results.size() - failed << '/' << results.size() << " checks passed in "
      << io::format_double(std::round(secs * 100) / 100) << " s\n";
  return failed == 0 ? kOk : kCheckFailed;
}

// -------------------------------------------------------------------- main

/// Runs one command; args exclude the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Fourier series on the fractional torus"};
  app.require_subcommand(1);

  CoeffsConfig coeffs;
  auto* c = app.add_subcommand("coeffs", "fractional Fourier coefficients of a signal");
  c->add_option("--alpha", coeffs.alpha, "order: pi/6, 2pi/3 or radians");
  c->add_option("--dim", coeffs.dim, "dimension n");
  c->add_option("--M", coeffs.M, "samples per axis");
  c->add_option("--N", coeffs.N, "coefficient radius");
  c->add_option("--output", coeffs.output, "CSV path (default stdout)");
  add_signal_options(c, coeffs.signal);

  RecoverConfig recover;
  auto* r = app.add_subcommand("recover", "Fejer reconstruction of the sawtooth");
  r->add_option("--alpha", recover.alpha, "order");
  r->add_option("--M", recover.M, "output rows per file");
  r->add_option("--Ns", recover.Ns, "comma separated Fejer degrees");
  r->add_option("--out", recover.out_dir, "output directory");

  PdeConfig heat_cfg, dir_cfg;
  auto add_pde = [&](const char* name, const char* help, PdeConfig& p, bool heat) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--alpha", p.alpha, "order");
    s->add_option("--dim", p.dim, "dimension n");
    s->add_option("--M", p.M, "samples per axis");
    s->add_option("--N", p.N, "coefficient radius (default M/2 - 1)");
    if (heat) s->add_option("--k", p.k, "diffusivity");
    s->add_option("--times", p.times, "comma separated output times");
    s->add_option("--dt", p.dt, "time step of the residual stencil");
    s->add_option("--tolerance", p.tolerance, "largest acceptable relative residual");
    s->add_option("--out", p.out_dir, "output directory");
    add_signal_options(s, p.signal);
    return s;
  };
  auto* h = add_pde("heat", "fractional heat equation", heat_cfg, true);
  auto* d = add_pde("dirichlet", "fractional Dirichlet problem", dir_cfg, false);

  VerifyConfig ver;
  auto* v = app.add_subcommand("verify", "run the consolidated property checks");
  v->add_option("--seed", ver.seed, "seed for randomized checks");
  v->add_option("--only", ver.only, "comma separated check groups");
  v->add_option("--inject-fault", ver.fault, "deliberate fault: csc-sign");
  v->add_option("--output", ver.output, "JSON path (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (c->parsed()) return cmd_coeffs(coeffs, out, err);
    if (r->parsed()) return cmd_recover(recover, out, err);
    if (h->parsed()) return cmd_pde(heat_cfg, true, out, err);
    if (d->parsed()) return cmd_pde(dir_cfg, false, out, err);
    if (v->parsed()) return cmd_verify(ver, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace fractorus::cli
