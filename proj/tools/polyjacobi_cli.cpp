#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyjacobi/bounds.hpp"
#include "polyjacobi/harness.hpp"
#include "polyjacobi/operator_core.hpp"
#include "polyjacobi/spectral.hpp"

namespace {

using nlohmann::json;
using namespace polyjacobi;

constexpr int kExitPass = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitConvergenceFailure = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceConfig {
  int sigma = 1;
  std::vector<double> gammas;
  std::string operator_kind = "h_sigma";  // h_sigma | w_sigma
  std::vector<std::pair<std::int64_t, double>> b_entries;
  // (band i, index n, value)
  std::vector<std::tuple<int, std::int64_t, double>> deviation_entries;
  double tolerance = 1e-8;
  std::vector<std::string> theorems;  // empty: inferred from operator kind

  PolyJacobiCoefficients build(int sigma_override = 0,
                               double scale = 1.0) const {
    const int s = sigma_override > 0 ? sigma_override : sigma;
    Sequence b;
    for (const auto& [n, v] : b_entries) b = b + Sequence::delta(n, scale * v);
    std::vector<Sequence> devs(static_cast<std::size_t>(s));
    for (const auto& [band, n, v] : deviation_entries) {
      if (band < 1 || band > s)
        throw std::domain_error("deviation band " + std::to_string(band) +
                                " outside 1.." + std::to_string(s));
      devs[static_cast<std::size_t>(band - 1)] =
          devs[static_cast<std::size_t>(band - 1)] +
          Sequence::delta(n, scale * v);
    }
    return PolyJacobiCoefficients::make(s, std::move(b), std::move(devs));
  }

  std::vector<Theorem> theorem_list() const {
    std::vector<Theorem> out;
    if (theorems.empty()) {
      if (operator_kind == "h_sigma")
        out = {Theorem::thm2, Theorem::cor3};
      else
        out = {Theorem::thm4};
      return out;
    }
    for (const auto& t : theorems) {
      if (t == "thm2") out.push_back(Theorem::thm2);
      else if (t == "cor3") out.push_back(Theorem::cor3);
      else if (t == "thm4") out.push_back(Theorem::thm4);
      else throw ConfigError("unknown theorem '" + t + "'");
    }
    return out;
  }
};

InstanceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  static const std::vector<std::string> known = {
      "sigma", "gammas", "operator", "b", "deviations", "tolerance",
      "theorems"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");
  }
  InstanceConfig cfg;
  try {
    cfg.sigma = j.at("sigma").get<int>();
    if (cfg.sigma < 1 || cfg.sigma > kSigmaCap)
      throw ConfigError("key 'sigma': value out of [1, " +
                        std::to_string(kSigmaCap) + "]");
    if (j.contains("gammas")) {
      cfg.gammas = j["gammas"].get<std::vector<double>>();
      for (double g : cfg.gammas)
        if (!(g >= 1.0) || !std::isfinite(g))
          throw ConfigError("key 'gammas': each value must be >= 1");
    } else {
      cfg.gammas = {1.0};
    }
    if (j.contains("operator")) {
      cfg.operator_kind = j["operator"].get<std::string>();
      if (cfg.operator_kind != "h_sigma" && cfg.operator_kind != "w_sigma")
        throw ConfigError("key 'operator': must be h_sigma or w_sigma");
    }
    if (j.contains("b"))
      for (const auto& row : j["b"]) {
        if (!row.is_array() || row.size() != 2)
          throw ConfigError("key 'b': entries must be [index, value] pairs");
        cfg.b_entries.emplace_back(row[0].get<std::int64_t>(),
                                   row[1].get<double>());
      }
    if (j.contains("deviations"))
      for (const auto& row : j["deviations"]) {
        if (!row.is_array() || row.size() != 3)
          throw ConfigError(
              "key 'deviations': entries must be [band, index, value]");
        cfg.deviation_entries.emplace_back(row[0].get<int>(),
                                           row[1].get<std::int64_t>(),
                                           row[2].get<double>());
      }
    if (j.contains("tolerance")) {
      cfg.tolerance = j["tolerance"].get<double>();
      if (!(cfg.tolerance > 0.0)) throw ConfigError("key 'tolerance': must be > 0");
    }
    if (j.contains("theorems"))
      cfg.theorems = j["theorems"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  }
  if (cfg.operator_kind == "h_sigma" && !cfg.deviation_entries.empty())
    throw ConfigError("operator h_sigma admits no off-diagonal deviations");
  cfg.theorem_list();  // validate names early
  return cfg;
}

// Data goes to stdout or --out; diagnostics go to stderr.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

int cmd_stencil(int sigma) {
  const auto st = laplacian_stencil(sigma);
  const auto omegas = free_band_coefficients(sigma);
  std::string line = "stencil:";
  for (auto c : st.coeffs) line += " " + std::to_string(c);
  std::string oline = "omegas:";
  for (auto w : omegas) oline += " " + std::to_string(w);
  std::cout << line << "\n" << oline << "\n";
  return kExitPass;
}

int cmd_symbol(int sigma, int samples, const std::string& out_path) {
  Output out(out_path);
  out.stream() << "x,symbol,closed_form,abs_diff\n";
  const double pi = std::acos(-1.0);
  double max_diff = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = -pi + 2.0 * pi * i / (samples - 1);
    const double s = symbol(sigma, x);
    const double c = symbol_closed_form(sigma, x);
    const double d = std::fabs(s - c);
    max_diff = std::max(max_diff, d);
    out.stream() << fmt17(x) << "," << fmt17(s) << "," << fmt17(c) << ","
                 << fmt17(d) << "\n";
  }
  out.stream() << "max_abs_diff,,," << fmt17(max_diff) << "\n";
  return kExitPass;
}

OperatorKind parse_kind(const std::string& s) {
  return s == "w_sigma" ? OperatorKind::w_sigma : OperatorKind::h_sigma;
}

int cmd_spectrum(const std::string& config_path, const std::string& out_path,
                 std::optional<double> tol_override) {
  const InstanceConfig cfg = load_config(config_path);
  const auto coeffs = cfg.build();
  const double tol = tol_override.value_or(cfg.tolerance);
  const auto report =
      discrete_spectrum(coeffs, parse_kind(cfg.operator_kind), tol);
  Output out(out_path);
  out.stream() << "side,index,eigenvalue,distance_to_edge,converged\n";
  const char* conv = report.converged ? "true" : "false";
  int j = 1;
  for (double e : report.eigenvalues_below)
    out.stream() << "below," << j++ << "," << fmt17(e) << ","
                 << fmt17(report.essential.lo - e) << "," << conv << "\n";
  j = 1;
  for (double e : report.eigenvalues_above)
    out.stream() << "above," << j++ << "," << fmt17(e) << ","
                 << fmt17(e - report.essential.hi) << "," << conv << "\n";
  std::cerr << "window half-widths " << report.window_pair[0] << "/"
            << report.window_pair[1] << ", edge margin "
            << report.edge_margin << "\n";
  return report.converged ? kExitPass : kExitConvergenceFailure;
}

struct RowStatus {
  bool bound_failure = false;
  bool convergence_failure = false;
};

void emit_report_row(std::ostream& os, const BoundReport& r,
                     const std::string& prefix, RowStatus& st) {
  std::string status;
  if (!r.converged) {
    status = "indeterminate";
    st.convergence_failure = true;
  } else if (r.passed()) {
    status = "pass";
  } else {
    status = "fail";
    st.bound_failure = true;
  }
  os << prefix << theorem_name(r.theorem) << "," << r.sigma << ","
     << fmt17(r.gamma) << "," << fmt17(r.lhs) << "," << fmt17(r.rhs) << ","
     << fmt17(r.ratio) << "," << fmt17(r.constant) << ","
     << (r.converged ? "true" : "false") << "," << r.instance_digest << ","
     << status << "\n";
}

int exit_code(const RowStatus& st) {
  if (st.bound_failure) return kExitBoundFailure;
  if (st.convergence_failure) return kExitConvergenceFailure;
  return kExitPass;
}

int cmd_verify(const std::string& config_path, const std::string& out_path,
               std::optional<double> tol_override) {
  const InstanceConfig cfg = load_config(config_path);
  const double tol = tol_override.value_or(cfg.tolerance);
  Output out(out_path);
  out.stream()
      << "theorem,sigma,gamma,lhs,rhs,ratio,constant,converged,digest,status\n";
  RowStatus st;
  for (Theorem theorem : cfg.theorem_list())
    for (double gamma : cfg.gammas) {
      try {
        const auto coeffs = cfg.build();
        emit_report_row(out.stream(),
                        verify_bound(theorem, cfg.sigma, gamma, coeffs, tol),
                        "", st);
      } catch (const std::domain_error& e) {
        out.stream() << theorem_name(theorem) << "," << cfg.sigma << ","
                     << fmt17(gamma) << ",0,0,0,0,false,,domain_error\n";
        std::cerr << "domain_error: " << e.what() << "\n";
        st.bound_failure = true;
      }
    }
  return exit_code(st);
}

int cmd_sweep(const std::string& config_path, std::vector<int> sigmas,
              std::vector<double> gammas, std::vector<double> scales,
              const std::string& out_path, std::optional<double> tol_override) {
  const InstanceConfig cfg = load_config(config_path);
  const double tol = tol_override.value_or(cfg.tolerance);
  if (sigmas.empty()) sigmas = {cfg.sigma};
  if (gammas.empty()) gammas = cfg.gammas;
  if (scales.empty()) scales = {1.0};
  std::sort(sigmas.begin(), sigmas.end());
  std::sort(gammas.begin(), gammas.end());
  std::sort(scales.begin(), scales.end());

  Output out(out_path);
  out.stream() << "sigma,gamma,scale,theorem,lhs,rhs,ratio,constant,converged,"
                  "digest,status\n";
  RowStatus st;
  for (int sigma : sigmas)
    for (double gamma : gammas)
      for (double scale : scales)
        for (Theorem theorem : cfg.theorem_list()) {
          const std::string prefix = std::to_string(sigma) + "," +
                                     fmt17(gamma) + "," + fmt17(scale) + ",";
          try {
            const auto coeffs = cfg.build(sigma, scale);
            const BoundReport r = verify_bound(theorem, sigma, gamma, coeffs, tol);
            std::string status;
            if (!r.converged) {
              status = "indeterminate";
              st.convergence_failure = true;
            } else if (r.passed()) {
              status = "pass";
            } else {
              status = "fail";
              st.bound_failure = true;
            }
            out.stream() << prefix << theorem_name(theorem) << ","
                         << fmt17(r.lhs) << "," << fmt17(r.rhs) << ","
                         << fmt17(r.ratio) << "," << fmt17(r.constant) << ","
                         << (r.converged ? "true" : "false") << ","
                         << r.instance_digest << "," << status << "\n";
          } catch (const std::domain_error& e) {
            out.stream() << prefix << theorem_name(theorem)
                         << ",0,0,0,0,false,,domain_error\n";
            std::cerr << "domain_error: " << e.what() << "\n";
            st.bound_failure = true;
          }
        }
  return exit_code(st);
}

int cmd_selftest(std::uint64_t seed, int count, bool inject_fault,
                 const std::string& out_path) {
  RandomInstanceSpec spec;
  spec.seed = seed;
  spec.count = count;
  const auto report = run_suite(spec, inject_fault);
  Output out(out_path);
  out.stream() << report.to_text();
  return report.all_passed() ? kExitPass : kExitBoundFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral bounds for polydiagonal Jacobi operators: exact stencils, "
      "finite-section spectra, and Lieb-Thirring-type bound verification"};
  app.require_subcommand(1);

  int sigma = 1;
  int samples = 1001;
  std::string config_path, out_path;
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  int count = 100;
  bool inject_fault = false;
  std::vector<int> sweep_sigmas;
  std::vector<double> sweep_gammas, sweep_scales;

  auto* stencil =
      app.add_subcommand("stencil", "Print exact stencil and band coefficients");
  stencil->add_option("--sigma", sigma, "operator order")
      ->required()
      ->check(CLI::Range(1, kSigmaCap));

  auto* symbol_cmd =
      app.add_subcommand("symbol", "Tabulate the Fourier symbol as CSV");
  symbol_cmd->add_option("--sigma", sigma)->required()->check(
      CLI::Range(1, kSigmaCap));
  symbol_cmd->add_option("--samples", samples)->check(CLI::Range(2, 10000000));
  symbol_cmd->add_option("--out", out_path);

  auto* spectrum =
      app.add_subcommand("spectrum", "Discrete spectrum of a configured instance");
  spectrum->add_option("--config", config_path)->required();
  spectrum->add_option("--out", out_path);
  spectrum->add_option("--tolerance", tolerance);

  auto* verify =
      app.add_subcommand("verify", "Check the spectral bounds on an instance");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--out", out_path);
  verify->add_option("--tolerance", tolerance);

  auto* sweep = app.add_subcommand("sweep", "Verify over a parameter grid");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--sigma", sweep_sigmas, "grid values for sigma");
  sweep->add_option("--gamma", sweep_gammas, "grid values for gamma");
  sweep->add_option("--scale", sweep_scales, "amplitude scale factors");
  sweep->add_option("--out", out_path);
  sweep->add_option("--tolerance", tolerance);

  auto* selftest =
      app.add_subcommand("selftest", "Run the seeded verification suite");
  selftest->add_option("--seed", seed);
  selftest->add_option("--count", count)->check(CLI::Range(0, 1000000));
  selftest->add_option("--out", out_path);
  selftest->add_flag("--inject-fault", inject_fault)->group("");  // test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  try {
    if (stencil->parsed()) return cmd_stencil(sigma);
    if (symbol_cmd->parsed()) return cmd_symbol(sigma, samples, out_path);
    if (spectrum->parsed()) return cmd_spectrum(config_path, out_path, tolerance);
    if (verify->parsed()) return cmd_verify(config_path, out_path, tolerance);
    if (sweep->parsed())
      return cmd_sweep(config_path, sweep_sigmas, sweep_gammas, sweep_scales,
                       out_path, tolerance);
    if (selftest->parsed())
      return cmd_selftest(seed, count, inject_fault, out_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
