#include "kuramoto/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kuramoto {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

OutputMeta make_meta(const RunConfig& cfg, const SpectralDensity& g) {
  OutputMeta m;
  m.entries = {{"tool_version", KURAMOTO_VERSION},
               {"config_hash", config_hash(cfg)},
               {"density", describe(g)},
               {"resolution", std::to_string(cfg.resolution)},
               {"seed", std::to_string(cfg.seed)}};
  return m;
}

void write_csv(std::ostream& os, const OutputMeta& meta, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  for (const auto& [k, v] : meta.entries) os << "# " << k << ": " << v << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Json with_meta(const OutputMeta& meta, const Json& payload) {
  Json j = Json::object();
  for (const auto& [k, v] : meta.entries) j[k] = v;
  for (const auto& [k, v] : payload.items()) j[k] = v;
  return j;
}

// nlohmann writes non-finite doubles as null; K_c may legitimately be +inf.
static Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json to_json(const TransitionReport& r) {
  Json j = Json::object();
  j["critical_ys"] = r.critical_ys;
  j["candidate_Ks"] = r.candidate_Ks;
  j["K_c"] = number(r.K_c);
  j["kuramoto_point"] = r.kuramoto_point ? Json(*r.kuramoto_point) : Json(nullptr);
  Json w = Json::array();
  for (const auto& win : r.windows)
    w.push_back(Json{{"lo", win.lo}, {"hi", win.hi}, {"open_above", win.open_above}, {"max_count", win.max_count}});
  j["windows"] = w;
  return j;
}

std::vector<std::vector<std::string>> pole_rows(const std::vector<SpectralRoot>& roots) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : roots)
    rows.push_back({format_double(r.lambda.real()), format_double(r.lambda.imag()), to_string(r.kind),
                    std::to_string(r.multiplicity), format_double(r.residue.real()), format_double(r.residue.imag()),
                    format_double(r.residual)});
  return rows;
}

std::vector<std::vector<std::string>> eta_rows(const EtaTrajectory& traj) {
  std::vector<std::vector<std::string>> rows;
  const std::string src = to_string(traj.source);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    rows.push_back({format_double(traj.times[i]), format_double(traj.values[i].real()),
                    format_double(traj.values[i].imag()), src});
  return rows;
}

std::vector<std::vector<std::string>> curve_rows(const BifurcationCurve& c) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : c.rows)
    rows.push_back({format_double(r.K), format_double(r.r_theory), format_double(r.r_sim), format_double(r.sim_stderr),
                    r.converged ? "1" : "0"});
  return rows;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::config_error, "cannot write '" + path + "'");
  out << content;
}

}  // namespace kuramoto
