#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kuramoto/spectrum.hpp"

namespace kuramoto {

// Everything a subcommand needs, fully resolved. Zero dt means "use the
// module's own stability bound".
struct RunConfig {
  std::string density_kind = "gaussian";
  std::vector<double> density_params;

  int resolution = 256;
  double newton_tol = 1e-10;
  double dt = 0.0;
  std::uint64_t seed = 1;
  std::string out;

  double K = 1.0;
  double K_max = 2.0;  // transition: upper end of the window scan
  Window window{-3.0, 1.0, -6.0, 6.0};
  double t_max = 10.0;
  int samples = 101;
  std::string method = "both";       // predict | integrate | both
  double strip_depth = 3.0;
  std::string backend = "galerkin";  // galerkin | finite-n
  int n = 10000;
  int modes = 8;
  int nodes = 512;
  double h1 = 1e-3;
  std::string closure = "auto";      // auto | truncate | poisson
  double k_min = 1.0;
  int k_steps = 5;
  Complex lambda{0.5, 0.0};
  double perturb = 0.0;              // verify: relative perturbation of a fixture
};

// Applies one key/value pair. The value text uses the config-file syntax;
// bare comma-separated numbers are accepted as an array. 'where' prefixes
// error messages (a line number or a flag name). Throws ConfigError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where);

// Reads 'key = value' lines ('#' comments, blank lines allowed) into cfg.
void load_config_file(RunConfig& cfg, const std::string& path);
void load_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");

// Positivity and enumeration checks. Throws ConfigError.
void validate(const RunConfig& cfg);

SpectralDensity make_density(const RunConfig& cfg);

// Stable textual form of every field, and its FNV-1a hash in hex.
std::string canonical_form(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

}  // namespace kuramoto
