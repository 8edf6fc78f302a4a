#include "kuramoto/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace kuramoto {
namespace {

// Small value tree for the subset of TOML we accept: numbers, strings,
// (nested) arrays and one-line inline tables.
struct Value {
  enum class Type { number, string, array, table } type = Type::number;
  double num = 0;
  std::string str;
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> fields;
};

class Parser {
 public:
  Parser(const std::string& s, const std::string& where) : s_(s), where_(where) {}

  Value parse_top() {
    skip();
    Value v;
    // Flags may pass "0,1" without brackets.
    if (!s_.empty() && s_[pos_] != '[' && s_[pos_] != '{' && s_.find(',') != std::string::npos) {
      v.type = Value::Type::array;
      while (true) {
        v.items.push_back(parse_value());
        skip();
        if (pos_ >= s_.size()) break;
        expect(',');
      }
    } else {
      v = parse_value();
    }
    skip();
    if (pos_ != s_.size()) error("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::config_error, where_ + ": " + what + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string parse_key() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-'))
      ++pos_;
    if (start == pos_) error("expected a key");
    return s_.substr(start, pos_ - start);
  }
  Value parse_value() {
    skip();
    if (pos_ >= s_.size()) error("missing value");
    Value v;
    char c = s_[pos_];
    if (c == '"') {
      v.type = Value::Type::string;
      std::size_t end = s_.find('"', pos_ + 1);
      if (end == std::string::npos) error("unterminated string");
      v.str = s_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
    } else if (c == '[') {
      v.type = Value::Type::array;
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      while (true) {
        v.items.push_back(parse_value());
        skip();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          break;
        }
        expect(',');
        skip();
        if (pos_ < s_.size() && s_[pos_] == ']') {  // trailing comma
          ++pos_;
          break;
        }
      }
    } else if (c == '{') {
      v.type = Value::Type::table;
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '}') {
        ++pos_;
        return v;
      }
      while (true) {
        std::string k = parse_key();
        expect('=');
        v.fields.emplace_back(k, parse_value());
        skip();
        if (pos_ < s_.size() && s_[pos_] == '}') {
          ++pos_;
          break;
        }
        expect(',');
      }
    } else {
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '}' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      std::string tok = s_.substr(start, pos_ - start);
      const char* b = tok.data();
      const char* e = b + tok.size();
      if (!tok.empty() && *b == '+') ++b;
      auto [p, ec] = std::from_chars(b, e, v.num);
      if (ec != std::errc() || p != e) {
        // Bare word: treat as a string so flags like '--density gaussian' work.
        bool word = !tok.empty() && std::isalpha(static_cast<unsigned char>(tok[0]));
        if (!word) error("bad number '" + tok + "'");
        v.type = Value::Type::string;
        v.str = tok;
      }
    }
    return v;
  }

  const std::string& s_;
  std::string where_;
  std::size_t pos_ = 0;
};

void flatten(const Value& v, std::vector<double>& out, const std::string& where) {
  if (v.type == Value::Type::number) {
    out.push_back(v.num);
  } else if (v.type == Value::Type::array) {
    for (const auto& it : v.items) flatten(it, out, where);
  } else {
    fail(ErrorKind::config_error, where + ": expected numbers");
  }
}

double as_number(const Value& v, const std::string& where, const std::string& key) {
  if (v.type != Value::Type::number) fail(ErrorKind::config_error, where + ": '" + key + "' must be a number");
  return v.num;
}

int as_int(const Value& v, const std::string& where, const std::string& key) {
  double x = as_number(v, where, key);
  if (x != std::floor(x) || std::abs(x) > 2e9) fail(ErrorKind::config_error, where + ": '" + key + "' must be an integer");
  return static_cast<int>(x);
}

std::string as_string(const Value& v, const std::string& where, const std::string& key) {
  if (v.type != Value::Type::string) fail(ErrorKind::config_error, where + ": '" + key + "' must be a string");
  return v.str;
}

std::vector<double> as_numbers(const Value& v, const std::string& where, const std::string& key, std::size_t n) {
  std::vector<double> out;
  flatten(v, out, where);
  if (n && out.size() != n)
    fail(ErrorKind::config_error, where + ": '" + key + "' needs " + std::to_string(n) + " numbers");
  return out;
}

std::string normalize(std::string key) {
  for (auto& c : key)
    if (c == '-') c = '_';
  return key;
}

void apply_value(RunConfig& cfg, const std::string& raw_key, const Value& v, const std::string& where) {
  const std::string key = normalize(raw_key);
  if (key == "density") {
    if (v.type == Value::Type::string) {
      cfg.density_kind = v.str;
      return;
    }
    if (v.type != Value::Type::table) fail(ErrorKind::config_error, where + ": 'density' must be an inline table");
    for (const auto& [k, fv] : v.fields) {
      if (k == "kind") cfg.density_kind = as_string(fv, where, "density.kind");
      else if (k == "params") cfg.density_params = as_numbers(fv, where, "density.params", 0);
      else fail(ErrorKind::config_error, where + ": unknown field 'density." + k + "'");
    }
    // Build once now so a bad kind is reported against this line.
    try {
      density_from_spec(cfg.density_kind, cfg.density_params);
    } catch (const Error& e) {
      fail(ErrorKind::config_error, where + ": field 'density': " + e.detail());
    }
    return;
  }
  static const std::map<std::string, std::function<void(RunConfig&, const Value&, const std::string&)>> setters = {
      {"params", [](RunConfig& c, const Value& x, const std::string& w) { c.density_params = as_numbers(x, w, "params", 0); }},
      {"resolution", [](RunConfig& c, const Value& x, const std::string& w) { c.resolution = as_int(x, w, "resolution"); }},
      {"newton_tol", [](RunConfig& c, const Value& x, const std::string& w) { c.newton_tol = as_number(x, w, "newton_tol"); }},
      {"dt", [](RunConfig& c, const Value& x, const std::string& w) { c.dt = as_number(x, w, "dt"); }},
      {"seed", [](RunConfig& c, const Value& x, const std::string& w) {
         double s = as_number(x, w, "seed");
         if (s < 0 || s != std::floor(s)) fail(ErrorKind::config_error, w + ": 'seed' must be a non-negative integer");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"out", [](RunConfig& c, const Value& x, const std::string& w) { c.out = as_string(x, w, "out"); }},
      {"k", [](RunConfig& c, const Value& x, const std::string& w) { c.K = as_number(x, w, "k"); }},
      {"k_max", [](RunConfig& c, const Value& x, const std::string& w) { c.K_max = as_number(x, w, "k_max"); }},
      {"k_min", [](RunConfig& c, const Value& x, const std::string& w) { c.k_min = as_number(x, w, "k_min"); }},
      {"k_steps", [](RunConfig& c, const Value& x, const std::string& w) { c.k_steps = as_int(x, w, "k_steps"); }},
      {"window", [](RunConfig& c, const Value& x, const std::string& w) {
         auto v = as_numbers(x, w, "window", 4);
         c.window = {v[0], v[1], v[2], v[3]};
       }},
      {"t_max", [](RunConfig& c, const Value& x, const std::string& w) { c.t_max = as_number(x, w, "t_max"); }},
      {"samples", [](RunConfig& c, const Value& x, const std::string& w) { c.samples = as_int(x, w, "samples"); }},
      {"method", [](RunConfig& c, const Value& x, const std::string& w) { c.method = as_string(x, w, "method"); }},
      {"strip_depth", [](RunConfig& c, const Value& x, const std::string& w) { c.strip_depth = as_number(x, w, "strip_depth"); }},
      {"backend", [](RunConfig& c, const Value& x, const std::string& w) { c.backend = as_string(x, w, "backend"); }},
      {"n", [](RunConfig& c, const Value& x, const std::string& w) { c.n = as_int(x, w, "n"); }},
      {"modes", [](RunConfig& c, const Value& x, const std::string& w) { c.modes = as_int(x, w, "modes"); }},
      {"nodes", [](RunConfig& c, const Value& x, const std::string& w) { c.nodes = as_int(x, w, "nodes"); }},
      {"h1", [](RunConfig& c, const Value& x, const std::string& w) { c.h1 = as_number(x, w, "h1"); }},
      {"closure", [](RunConfig& c, const Value& x, const std::string& w) { c.closure = as_string(x, w, "closure"); }},
      {"lambda", [](RunConfig& c, const Value& x, const std::string& w) {
         auto v = as_numbers(x, w, "lambda", 2);
         c.lambda = {v[0], v[1]};
       }},
      {"perturb", [](RunConfig& c, const Value& x, const std::string& w) { c.perturb = as_number(x, w, "perturb"); }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) fail(ErrorKind::config_error, where + ": unknown key '" + raw_key + "'");
  it->second(cfg, v, where);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
  // Flags carry plain text for string-valued keys (paths may hold anything).
  static const char* plain[] = {"out", "method", "backend", "closure"};
  for (const char* k : plain) {
    if (normalize(key) == k && (value.empty() || value.front() != '"')) {
      Value v;
      v.type = Value::Type::string;
      v.str = value;
      apply_value(cfg, key, v, where);
      return;
    }
  }
  Parser p(value, where);
  apply_value(cfg, key, p.parse_top(), where);
}

void load_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (body.front() == '[') fail(ErrorKind::config_error, where + ": tables are not supported");
    auto eq = body.find('=');
    if (eq == std::string::npos) fail(ErrorKind::config_error, where + ": expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::config_error, where + ": missing key");
    Parser p(value, where);
    apply_value(cfg, key, p.parse_top(), where);
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config_error, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(cfg, ss.str(), path);
}

void validate(const RunConfig& cfg) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::config_error, what);
  };
  need(cfg.resolution > 0, "resolution must be positive");
  need(cfg.newton_tol > 0, "newton_tol must be positive");
  need(cfg.dt >= 0, "dt must be non-negative (0 selects the default bound)");
  need(cfg.K > 0, "k must be positive");
  need(cfg.K_max > 0, "k_max must be positive");
  need(cfg.window.re_min < cfg.window.re_max && cfg.window.im_min < cfg.window.im_max, "window must be re0<re1, im0<im1");
  need(cfg.t_max > 0, "t_max must be positive");
  need(cfg.samples >= 2, "samples must be at least 2");
  need(cfg.method == "predict" || cfg.method == "integrate" || cfg.method == "both",
       "method must be predict, integrate or both");
  need(cfg.strip_depth > 0, "strip_depth must be positive");
  need(cfg.backend == "galerkin" || cfg.backend == "finite-n", "backend must be galerkin or finite-n");
  need(cfg.n > 0 && cfg.modes > 0 && cfg.nodes > 0, "n, modes and nodes must be positive");
  need(cfg.closure == "auto" || cfg.closure == "truncate" || cfg.closure == "poisson",
       "closure must be auto, truncate or poisson");
  need(cfg.k_min > 0 && cfg.k_steps >= 1, "k_min must be positive and k_steps at least 1");
  need(std::abs(cfg.perturb) < 1, "perturb must be below 1 in magnitude");
  try {
    density_from_spec(cfg.density_kind, cfg.density_params);
  } catch (const Error& e) {
    fail(ErrorKind::config_error, "field 'density': " + e.detail());
  }
}

SpectralDensity make_density(const RunConfig& cfg) {
  try {
    return density_from_spec(cfg.density_kind, cfg.density_params);
  } catch (const Error& e) {
    fail(ErrorKind::config_error, "field 'density': " + e.detail());
  }
}

std::string canonical_form(const RunConfig& c) {
  std::ostringstream o;
  o << "density.kind=" << c.density_kind << "\ndensity.params=";
  for (std::size_t i = 0; i < c.density_params.size(); ++i) o << (i ? "," : "") << fmt(c.density_params[i]);
  o << "\nresolution=" << c.resolution << "\nnewton_tol=" << fmt(c.newton_tol) << "\ndt=" << fmt(c.dt)
    << "\nseed=" << c.seed << "\nk=" << fmt(c.K) << "\nk_max=" << fmt(c.K_max) << "\nwindow=" << fmt(c.window.re_min)
    << "," << fmt(c.window.re_max) << "," << fmt(c.window.im_min) << "," << fmt(c.window.im_max)
    << "\nt_max=" << fmt(c.t_max) << "\nsamples=" << c.samples << "\nmethod=" << c.method
    << "\nstrip_depth=" << fmt(c.strip_depth) << "\nbackend=" << c.backend << "\nn=" << c.n << "\nmodes=" << c.modes
    << "\nnodes=" << c.nodes << "\nh1=" << fmt(c.h1) << "\nclosure=" << c.closure << "\nk_min=" << fmt(c.k_min)
    << "\nk_steps=" << c.k_steps << "\nlambda=" << fmt(c.lambda.real()) << "," << fmt(c.lambda.imag())
    << "\nperturb=" << fmt(c.perturb) << "\n";
  return o.str();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_form(cfg)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace kuramoto
