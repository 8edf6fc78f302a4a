#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kuramoto/bifurcation.hpp"
#include "kuramoto/config.hpp"
#include "kuramoto/transition.hpp"

namespace kuramoto {

using Json = nlohmann::ordered_json;

// Header carried by every output file.
struct OutputMeta {
  std::vector<std::pair<std::string, std::string>> entries;
};

OutputMeta make_meta(const RunConfig& cfg, const SpectralDensity& g);

// Shortest text that round-trips the double.
std::string format_double(double x);

// '# key: value' lines, then the header row, then the rows.
void write_csv(std::ostream& os, const OutputMeta& meta, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Flat JSON object: metadata keys first, then the payload fields.
Json with_meta(const OutputMeta& meta, const Json& payload);

Json to_json(const TransitionReport& r);

std::vector<std::vector<std::string>> pole_rows(const std::vector<SpectralRoot>& roots);
std::vector<std::vector<std::string>> eta_rows(const EtaTrajectory& traj);
std::vector<std::vector<std::string>> curve_rows(const BifurcationCurve& c);

// Writes to path, or to stdout when path is empty or "-".
void emit(const std::string& path, const std::string& content);

}  // namespace kuramoto
