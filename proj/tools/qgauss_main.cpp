#include <algorithm>
#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgauss/extremal.hpp"
#include "qgauss/gaussian.hpp"
#include "qgauss/gaussianity.hpp"
#include "qgauss/homodyne.hpp"
#include "qgauss/oracle.hpp"
#include "qgauss/state_io.hpp"
#include "qgauss/variational.hpp"
#include "qgauss/version.hpp"

namespace {

using qgauss::Json;

struct GlobalConfig {
  int cutoff = 60;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 42;
};

void emit(const GlobalConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
  }
}

void emit_json(const GlobalConfig& cfg, const Json& j) {
  emit(cfg, j.dump(2));
}

// key,value CSV for flat report objects; non-scalar values are quoted.
std::string report_csv(const Json& j) {
  std::string out = "key,value\n";
  for (const auto& [key, val] : j.items()) {
    std::string cell;
    if (val.is_number_float()) {
      cell = qgauss::format_double(val.get<double>());
    } else {
      cell = val.dump();
      if (cell.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : cell) {
          quoted += c;
          if (c == '\"') quoted += c;
        }
        quoted += "\"";
        cell = std::move(quoted);
      }
    }
    out += key + "," + cell + "\n";
  }
  return out;
}

void emit_report(const GlobalConfig& cfg, const Json& j) {
  if (cfg.format == "csv") {
    emit(cfg, report_csv(j));
  } else {
    emit_json(cfg, j);
  }
}

const char* method_name(qgauss::BoundMethod m) {
  switch (m) {
    case qgauss::BoundMethod::ClosedFormLow: return "closed_form_low";
    case qgauss::BoundMethod::ClosedFormHigh: return "closed_form_high";
    case qgauss::BoundMethod::Polynomial: return "polynomial";
  }
  return "unknown";
}

int cmd_analyze(const GlobalConfig& cfg, const std::string& state_path,
                const std::string& wigner_path, int wigner_res) {
  qgauss::DensityOperator rho = qgauss::load_state(state_path);
  qgauss::ValidationReport val = qgauss::validate(rho);
  if (!val.passed()) {
    std::cerr << "state fails validation: hermiticity defect "
              << val.hermiticity_defect << ", trace defect " << val.trace_defect
              << ", min eigenvalue " << val.min_eigenvalue << "\n";
    return 1;
  }
  qgauss::FirstAndSecondMoments m = qgauss::moments(rho);
  qgauss::GaussianityReport g = qgauss::gaussianity(rho);
  double g_clamped = std::clamp(g.g, qgauss::kGLowerBound * (1.0 + 1e-12), 2.0);
  qgauss::BoundResult bound = qgauss::alpha_min(g_clamped);
  Json j;
  j["label"] = rho.label;
  j["dim"] = rho.dim;
  j["d"] = {m.d(0), m.d(1)};
  j["gamma"] = {{m.gamma(0, 0), m.gamma(0, 1)}, {m.gamma(1, 0), m.gamma(1, 1)}};
  j["alpha"] = m.alpha();
  j["g"] = g.g;
  j["overlap"] = g.overlap;
  j["purity_ref"] = g.purity_G;
  j["alpha_min_at_g"] = bound.alpha_min;
  j["bound_margin"] = m.alpha() - bound.alpha_min;
  j["g_min_pos"] = g.g_min_pos;
  j["g_max_pos"] = g.g_max_pos;
  j["negativity_certified"] = g.wigner_negativity_certified;
  double trunc = qgauss::truncation_indicator(rho);
  j["truncation"] = trunc;
  j["truncation_warning"] = trunc > qgauss::kTruncationWarnLevel;
  j["version"] = qgauss::kVersion;
  if (!wigner_path.empty()) {
    double extent = 4.0 + 3.0 * std::sqrt(m.alpha());
    qgauss::WignerGrid grid = qgauss::wigner(rho, extent, wigner_res);
    std::ofstream wout(wigner_path);
    if (!wout) throw std::runtime_error("cannot write " + wigner_path);
    if (cfg.format == "csv") {
      wout << qgauss::wigner_to_csv(grid);
    } else {
      wout << qgauss::wigner_to_json(grid).dump(2) << "\n";
    }
    j["wigner_min_value"] = grid.min_value;
  }
  emit_report(cfg, j);
  return 0;
}

int cmd_bound(const GlobalConfig& cfg, double g) {
  qgauss::BoundResult b = qgauss::alpha_min(g);
  Json j;
  j["g"] = b.g;
  j["alpha_min"] = b.alpha_min;
  j["n"] = b.n;
  j["method"] = method_name(b.method);
  emit_report(cfg, j);
  return 0;
}

int cmd_curve(const GlobalConfig& cfg, double from, double to, int samples) {
  auto rows = qgauss::extremal_curve(from, to, samples);
  if (cfg.format == "csv") {
    emit(cfg, qgauss::curve_to_csv(rows));
  } else {
    emit_json(cfg, qgauss::curve_to_json(rows, cfg.cutoff));
  }
  return 0;
}

int cmd_oracle_lp(const GlobalConfig& cfg, double alpha) {
  qgauss::LpCertificate c = qgauss::lp_extremal_g(alpha, cfg.cutoff);
  bool adjacent = c.support_min.second == c.support_min.first + 1;
  bool matches = std::abs(c.g_min_found - c.analytic_g_min) <= 1e-9;
  Json j;
  j["alpha"] = c.alpha;
  j["cutoff"] = c.cutoff;
  j["g_min_found"] = c.g_min_found;
  j["g_max_found"] = c.g_max_found;
  j["support_min"] = {c.support_min.first, c.support_min.second};
  j["support_max"] = {c.support_max.first, c.support_max.second};
  j["weight_min"] = c.weight_min;
  j["weight_max"] = c.weight_max;
  j["analytic_g_min"] = c.analytic_g_min;
  j["analytic_g_max"] = c.analytic_g_max;
  j["min_support_adjacent"] = adjacent;
  j["min_matches_analytic"] = matches;
  emit_report(cfg, j);
  return (adjacent && matches) ? 0 : 1;
}

int cmd_oracle_random(const GlobalConfig& cfg, int samples,
                      std::optional<double> alpha_focus) {
  qgauss::AuditParams p;
  p.cutoff = cfg.cutoff;
  p.samples = samples;
  p.seed = cfg.seed;
  p.alpha_focus = alpha_focus;
  qgauss::AuditReport rep = qgauss::random_state_audit(p);
  Json j;
  j["cutoff"] = rep.params.cutoff;
  j["samples"] = rep.params.samples;
  j["seed"] = rep.params.seed;
  j["evaluated"] = rep.evaluated;
  j["skipped"] = rep.skipped;
  j["violations_sr"] = rep.violations_sr;
  j["violations_bound"] = rep.violations_bound;
  j["min_alpha_seen"] = rep.min_alpha_seen;
  j["worst_margin"] = rep.worst.margin;
  j["worst_alpha"] = rep.worst.alpha;
  j["worst_g"] = rep.worst.g;
  j["phase_avg_max_dev"] = rep.phase_avg_max_dev;
  emit_report(cfg, j);
  return (rep.violations_sr == 0 && rep.violations_bound == 0) ? 0 : 1;
}

int cmd_verify_variational(const GlobalConfig& cfg, int n, double r) {
  qgauss::StationarityCertificate c =
      qgauss::certify_min_state(n, r, cfg.cutoff);
  Json j;
  j["n"] = n;
  j["r"] = r;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["lambda6"] = c.lambda6;
  j["common_eigenvalue"] = c.common_eigenvalue;
  j["residuals"] = c.residuals;
  j["eigenvalue_extremal"] = c.eigenvalue_extremal;
  j["passed"] = c.passed;
  emit_report(cfg, j);
  return c.passed ? 0 : 1;
}

int cmd_verify_sr(const GlobalConfig& cfg) {
  qgauss::ReducedSrReport rep = qgauss::reduced_sr_check(cfg.cutoff);
  bool ok = std::abs(rep.min_eigenvalue - 1.0) <= 1e-9 && rep.vacuum_is_argmin;
  Json j;
  j["dim"] = rep.dim;
  j["min_eigenvalue"] = rep.min_eigenvalue;
  j["vacuum_is_argmin"] = rep.vacuum_is_argmin;
  j["min_excluding_vacuum"] = rep.min_excluding_vacuum;
  j["passed"] = ok;
  emit_report(cfg, j);
  return ok ? 0 : 1;
}

int cmd_homodyne(const GlobalConfig& cfg, const std::string& state_path,
                 int shots, double bandwidth, int working_dim) {
  qgauss::DensityOperator rho = qgauss::load_state(state_path);
  qgauss::HomodyneOptions opt;
  opt.bandwidth = bandwidth;
  opt.working_dim = working_dim;
  qgauss::HomodyneRun run =
      qgauss::simulate_overlap(rho, shots, cfg.seed, opt);
  double alpha = qgauss::moments(rho).alpha();
  qgauss::GEstimate ge = qgauss::g_from_simulation(run, alpha);
  Json j;
  j["shots"] = run.shots;
  j["seed"] = run.seed;
  j["bandwidth"] = run.bandwidth;
  j["estimate"] = run.estimate;
  j["stderr"] = run.stderr_est;
  j["direct_overlap"] = run.direct_overlap;
  j["exact_density_overlap"] = run.exact_density;
  j["deviation_sigma"] = run.deviation_sigma;
  j["g_estimate"] = ge.g;
  j["g_stderr"] = ge.stderr_g;
  j["alpha"] = alpha;
  j["working_dim"] = run.working_dim;
  emit_report(cfg, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");  // '.' decimals in all CSV output
  CLI::App app{"Gaussianity and uncertainty analysis for single-mode states"};
  app.set_version_flag("--version", std::string(qgauss::kVersion));

  GlobalConfig cfg;
  if (const char* env = std::getenv("QGAUSS_CUTOFF")) {
    cfg.cutoff = std::atoi(env);
  }
  app.add_option("--cutoff", cfg.cutoff, "Fock-space cutoff")
      ->check(CLI::Range(8, 4096))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write output to a file");
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  double tol_herm = 0, tol_trace = 0, tol_psd = 0;
  auto* oh = app.add_option("--tol-hermiticity", tol_herm);
  auto* ot = app.add_option("--tol-trace", tol_trace);
  auto* op = app.add_option("--tol-psd", tol_psd, "PSD floor (negative)");

  auto* analyze = app.add_subcommand("analyze", "Moments, g, and bound margin");
  analyze->fallthrough();
  std::string state_path, wigner_path;
  int wigner_res = 201;
  analyze->add_option("state", state_path, "State file (JSON)")->required();
  analyze->add_option("--wigner-out", wigner_path,
                      "Also write the Wigner grid to this path");
  analyze->add_option("--wigner-resolution", wigner_res)
      ->check(CLI::Range(16, 4096));

  auto* bound = app.add_subcommand("bound", "Minimal alpha for a given g");
  bound->fallthrough();
  double g_query = 1.0;
  bound->add_option("--g", g_query, "Gaussianity in (2/e, 2]")->required();

  auto* curve = app.add_subcommand("curve", "Extremal g vs alpha curve");
  curve->fallthrough();
  double c_from = 1.0, c_to = 13.0;
  int c_samples = 7;
  curve->add_option("--from", c_from)->capture_default_str();
  curve->add_option("--to", c_to)->capture_default_str();
  curve->add_option("--samples", c_samples)->check(CLI::Range(2, 1000000))
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Brute-force verification");
  oracle->fallthrough();
  auto* olp = oracle->add_subcommand("lp", "Two-level vertex enumeration");
  olp->fallthrough();
  double o_alpha = 3.0;
  olp->add_option("--alpha", o_alpha)->required();
  auto* orand = oracle->add_subcommand("random", "Random-state audit");
  orand->fallthrough();
  int o_samples = 10000;
  double o_focus = -1.0;
  orand->add_option("--samples", o_samples)->capture_default_str();
  auto* focus_opt = orand->add_option("--alpha", o_focus,
                                      "Concentrate draws near this alpha");
  oracle->require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Stationarity certificates");
  verify->fallthrough();
  auto* vvar = verify->add_subcommand("variational", "Certify a min-branch state");
  vvar->fallthrough();
  int v_n = 0;
  double v_r = 0.5;
  vvar->add_option("--n", v_n)->required();
  vvar->add_option("--r", v_r)->required();
  auto* vsr = verify->add_subcommand("sr", "Reduced uncertainty minimum");
  vsr->fallthrough();
  verify->require_subcommand(1);

  auto* homodyne = app.add_subcommand("homodyne", "Simulated overlap estimate");
  homodyne->fallthrough();
  std::string h_state;
  int h_shots = 100000;
  double h_bandwidth = 0.0;
  int h_dim = 24;
  homodyne->add_option("state", h_state)->required();
  homodyne->add_option("--shots", h_shots)->capture_default_str();
  homodyne->add_option("--bandwidth", h_bandwidth,
                       "Kernel width (0 = 0.15 sqrt(alpha))");
  homodyne->add_option("--working-dim", h_dim)->capture_default_str();

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  qgauss::ToleranceProfile tol = qgauss::active_tolerances();
  if (*oh) tol.hermiticity = tol_herm;
  if (*ot) tol.trace = tol_trace;
  if (*op) tol.psd_floor = tol_psd;
  qgauss::active_tolerances() = tol;

  try {
    if (*analyze) return cmd_analyze(cfg, state_path, wigner_path, wigner_res);
    if (*bound) return cmd_bound(cfg, g_query);
    if (*curve) return cmd_curve(cfg, c_from, c_to, c_samples);
    if (*olp) return cmd_oracle_lp(cfg, o_alpha);
    if (*orand) {
      std::optional<double> focus;
      if (*focus_opt) focus = o_focus;
      return cmd_oracle_random(cfg, o_samples, focus);
    }
    if (*vvar) return cmd_verify_variational(cfg, v_n, v_r);
    if (*vsr) return cmd_verify_sr(cfg);
    if (*homodyne) return cmd_homodyne(cfg, h_state, h_shots, h_bandwidth, h_dim);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
