#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

#include "kuramoto/verify.hpp"

using namespace kuramoto;

namespace {

enum Exit { ok = 0, check_failure = 1, config_failure = 2, numerical_failure = 3 };

// Flag name -> raw text, filled by CLI11 and then replayed through the same
// setter the config file uses, so both paths validate identically.
struct FlagSet {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    for (auto& c : flag)
      if (c == '_') c = '-';
    options.emplace_back(key, app->add_option(flag, values[key], help));
  }
  void apply(RunConfig& cfg) const {
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) apply_setting(cfg, key, values.at(key), "--" + key);
  }
};

struct Command {
  CLI::App* app;
  FlagSet flags;
  std::string config_path;
};

Command& add_command(CLI::App& root, std::map<std::string, Command>& cmds, const std::string& name,
                     const std::string& help, const std::vector<std::pair<std::string, std::string>>& extra) {
  Command& c = cmds[name];
  c.app = root.add_subcommand(name, help);
  c.app->add_option("--config", c.config_path, "run-config file (key = value lines)");
  for (const auto& [k, h] : std::vector<std::pair<std::string, std::string>>{
           {"density", "density kind (gaussian, lorentzian, two-step, ...)"},
           {"params", "density parameters, comma separated"},
           {"resolution", "quadrature resolution"},
           {"newton_tol", "Newton tolerance"},
           {"dt", "time step (0 = module bound)"},
           {"seed", "random seed"},
           {"out", "output path (default stdout)"}})
    c.flags.add(c.app, k, h);
  for (const auto& [k, h] : extra) c.flags.add(c.app, k, h);
  return c;
}

std::string csv_text(const OutputMeta& meta, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  write_csv(os, meta, header, rows);
  return os.str();
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

int run_transition(const RunConfig& cfg) {
  auto g = make_density(cfg);
  Json payload;
  try {
    payload = to_json(analyze_transition(g, cfg.K_max));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::no_transition) throw;
    TransitionReport rep{critical_ordinates(g), {}, INFINITY, std::nullopt, {}};
    payload = to_json(rep);
  }
  emit(cfg.out, json_text(with_meta(make_meta(cfg, g), payload)));
  return ok;
}

int run_poles(const RunConfig& cfg) {
  auto g = make_density(cfg);
  RootSearchOptions opt;
  opt.newton_tol = cfg.newton_tol;
  auto res = find_roots(g, cfg.K, cfg.window, opt);
  for (const auto& r : res.roots)
    if (r.multiplicity > 1)
      std::cerr << "warning: root of multiplicity " << r.multiplicity << " at " << r.lambda
                << " is excluded from residue sums\n";
  emit(cfg.out, csv_text(make_meta(cfg, g), {"re_lambda", "im_lambda", "kind", "multiplicity", "re_D", "im_D", "residual"},
                         pole_rows(res.roots)));
  return ok;
}

int run_eta(const RunConfig& cfg) {
  auto g = make_density(cfg);
  auto times = linspace(0.0, cfg.t_max, cfg.samples);
  auto phi = InitialFunction::constant_one();
  std::vector<std::vector<std::string>> rows;
  if (cfg.method != "integrate") {
    PredictOptions po;
    po.strip_depth = cfg.strip_depth;
    auto r = eta_rows(predict_eta(g, cfg.K, phi, times, po));
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (cfg.method != "predict") {
    auto rule = make_quadrature(g, cfg.resolution);
    double dt = cfg.dt > 0 ? cfg.dt : std::min(0.01, 0.5 / std::max(1.0, cfg.K));
    auto r = eta_rows(direct_integration(g, cfg.K, phi, times, rule, dt));
    rows.insert(rows.end(), r.begin(), r.end());
  }
  emit(cfg.out, csv_text(make_meta(cfg, g), {"t", "re_eta", "im_eta", "source"}, rows));
  return ok;
}

int run_simulate(const RunConfig& cfg) {
  auto g = make_density(cfg);
  EtaTrajectory traj;
  const double dt_out = cfg.t_max / (cfg.samples - 1);
  if (cfg.backend == "finite-n") {
    auto ens = make_ensemble(g, cfg.n, cfg.K, FrequencySampling::quantile, cfg.seed, cfg.h1);
    double dt = cfg.dt > 0 ? cfg.dt : 0.1 / std::max(1.0, cfg.K);
    traj = simulate_finite_N(ens, cfg.t_max, dt, dt_out);
  } else {
    GalerkinOptions opt;
    int J = cfg.modes;
    if (cfg.closure == "poisson") {
      opt.closure = Closure::poisson;
    } else if (cfg.closure == "truncate") {
      opt.closure = Closure::truncate;
    } else {
      double K_c = INFINITY;
      try {
        K_c = transition_point(g);
      } catch (const Error&) {
      }
      if (cfg.K >= K_c) {
        opt.closure = Closure::poisson;
        J = 1;
        std::cerr << "note: K above K_c, using the one-mode Poisson closure\n";
      }
    }
    auto rule = make_quadrature(g, cfg.nodes, QuadratureScheme::equispaced);
    std::vector<Complex> h(std::size_t(J), 0.0);
    h[0] = cfg.h1;
    double dt = cfg.dt > 0 ? cfg.dt : 0.1 / std::max(1.0, cfg.K * J / 2);
    traj = simulate_galerkin(g, cfg.K, J, rule, h, cfg.t_max, dt, dt_out, opt);
  }
  emit(cfg.out, csv_text(make_meta(cfg, g), {"t", "re_eta", "im_eta", "source"}, eta_rows(traj)));
  return ok;
}

int run_bifurcate(const RunConfig& cfg) {
  auto g = make_density(cfg);
  std::vector<double> grid;
  if (cfg.k_steps == 1) {
    grid = {cfg.k_min};
  } else {
    if (!(cfg.K_max > cfg.k_min)) fail(ErrorKind::config_error, "k_max must exceed k_min");
    grid = linspace(cfg.k_min, cfg.K_max, cfg.k_steps);
  }
  BifurcationSimParams p;
  p.backend = cfg.backend == "finite-n" ? SimBackend::finite_N : SimBackend::galerkin;
  p.modes = cfg.modes;
  p.nodes = cfg.nodes;
  p.oscillators = cfg.n;
  p.seed = cfg.seed;
  p.T = cfg.t_max;
  p.h1 = cfg.h1;
  if (cfg.dt > 0) p.dt = cfg.dt;
  if (cfg.closure == "truncate") p.closure = Closure::truncate;
  auto curve = bifurcation_diagram(g, grid, p);
  emit(cfg.out, csv_text(make_meta(cfg, g), {"K", "r_theory", "r_sim", "sim_stderr", "converged"}, curve_rows(curve)));
  return ok;
}

int run_eval_F(const RunConfig& cfg) {
  auto g = make_density(cfg);
  auto F = continued_resolvent_F(g, cfg.lambda);
  Complex G = characteristic_G(g, cfg.K, cfg.lambda);
  const char* sheets[] = {"first", "second", "boundary"};
  const char* methods[] = {"closed_form", "quadrature", "boundary"};
  Json j = {{"re_lambda", cfg.lambda.real()}, {"im_lambda", cfg.lambda.imag()},
            {"re_F", F.value.real()},         {"im_F", F.value.imag()},
            {"K", cfg.K},                     {"re_G", G.real()},
            {"im_G", G.imag()},               {"sheet", sheets[int(F.sheet)]},
            {"method", methods[int(F.method)]}};
  emit(cfg.out, json_text(with_meta(make_meta(cfg, g), j)));
  return ok;
}

int run_verify_cmd(const RunConfig& cfg) {
  auto rep = run_verify({cfg.perturb});
  OutputMeta meta;
  meta.entries = {{"tool_version", KURAMOTO_VERSION}, {"config_hash", config_hash(cfg)}, {"density", "fixtures"}};
  emit(cfg.out, json_text(with_meta(meta, to_json(rep))));
  int failed = 0;
  for (const auto& c : rep.checks) failed += !c.passed;
  std::cerr << rep.checks.size() - std::size_t(failed) << "/" << rep.checks.size() << " checks passed\n";
  return rep.all_passed() ? ok : check_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App root{"Spectral and bifurcation analysis of the Kuramoto model"};
  root.set_version_flag("--version", std::string(KURAMOTO_VERSION));
  root.require_subcommand(1);

  std::map<std::string, Command> cmds;
  add_command(root, cmds, "transition", "critical ordinates, K_c and instability windows (JSON)", {{"k_max", "upper K of the window scan"}});
  add_command(root, cmds, "poles", "eigenvalues and resonance poles in a window (CSV)",
              {{"k", "coupling"}, {"window", "re0,re1,im0,im1"}});
  add_command(root, cmds, "eta", "linearized order parameter (CSV)",
              {{"k", "coupling"}, {"t_max", "final time"}, {"samples", "number of output times"},
               {"method", "predict | integrate | both"}, {"strip_depth", "depth a of the residue strip"}});
  add_command(root, cmds, "simulate", "nonlinear simulation (CSV)",
              {{"backend", "galerkin | finite-n"}, {"n", "oscillators"}, {"modes", "Fourier modes J"},
               {"nodes", "frequency nodes"}, {"k", "coupling"}, {"t_max", "final time"},
               {"samples", "number of output times"}, {"h1", "initial first-mode amplitude"},
               {"closure", "auto | truncate | poisson"}});
  add_command(root, cmds, "bifurcate", "bifurcation diagram (CSV)",
              {{"k_min", "first K"}, {"k_max", "last K"}, {"k_steps", "number of K values"},
               {"backend", "galerkin | finite-n"}, {"n", "oscillators"}, {"modes", "Fourier modes J"},
               {"nodes", "frequency nodes"}, {"t_max", "final time"}, {"h1", "initial first-mode amplitude"},
               {"closure", "poisson | truncate"}});
  add_command(root, cmds, "eval-F", "continued resolvent and characteristic function (JSON)",
              {{"lambda", "re,im"}, {"k", "coupling"}});
  add_command(root, cmds, "verify", "golden and property suite (JSON)", {{"perturb", "relative fixture perturbation"}});

  try {
    root.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = root.exit(e);
    return code == 0 ? ok : config_failure;
  }

  for (auto& [name, cmd] : cmds) {
    if (!cmd.app->parsed()) continue;
    try {
      RunConfig cfg;
      // Per-command defaults, before the config file and flags.
      if (name == "simulate") cfg.t_max = 100.0;
      if (name == "bifurcate") {
        cfg.t_max = 900.0;
        cfg.modes = 1;
        cfg.nodes = 4096;
        cfg.h1 = 0.01;
        cfg.closure = "poisson";
        cfg.n = 20000;
      }
      if (!cmd.config_path.empty()) load_config_file(cfg, cmd.config_path);
      cmd.flags.apply(cfg);
      validate(cfg);
      if (name == "transition") return run_transition(cfg);
      if (name == "poles") return run_poles(cfg);
      if (name == "eta") return run_eta(cfg);
      if (name == "simulate") return run_simulate(cfg);
      if (name == "bifurcate") return run_bifurcate(cfg);
      if (name == "eval-F") return run_eval_F(cfg);
      if (name == "verify") return run_verify_cmd(cfg);
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return e.kind() == ErrorKind::config_error ? config_failure : numerical_failure;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return numerical_failure;
    }
  }
  return ok;
}
