#include <doctest.h>

#include <sstream>

#include "kuramoto/verify.hpp"

using namespace kuramoto;

static ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::invalid_argument;
}

TEST_CASE("defaults") {
  RunConfig c;
  apply_setting(c, "density", "gaussian", "--density");
  validate(c);
  CHECK(c.resolution == 256);
  CHECK(c.newton_tol == 1e-10);
  CHECK(make_density(c).kind() == DensityKind::gaussian);
}

TEST_CASE("config text") {
  RunConfig c;
  load_config_text(c, R"(# comment
density = { kind = "piecewise-constant", params = [[-1, -0.5, 1], [0.25, 1.25, 0.5]] }
resolution = 1024   # trailing comment
window = [-2, 1, -3, 3]
out = "x.csv"
lambda = [-0.5, 0.25]
)");
  validate(c);
  CHECK(c.resolution == 1024);
  CHECK(c.density_params.size() == 6);
  CHECK(c.window.im_max == 3.0);
  CHECK(c.out == "x.csv");
  CHECK(c.lambda == Complex(-0.5, 0.25));
  auto g = make_density(c);
  CHECK(eval(g, -0.75) == 1.0);
  auto meta = make_meta(c, g);
  bool found = false;
  for (const auto& [k, v] : meta.entries) found |= (k == "resolution" && v == "1024");
  CHECK(found);
}

TEST_CASE("config errors name the field or line") {
  RunConfig c;
  try {
    load_config_text(c, "resolution = 64\ndensity = { kind = \"cauchy\" }\n", "run.toml");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config_error);
    CHECK(std::string(e.what()).find("run.toml:2") != std::string::npos);
    CHECK(std::string(e.what()).find("density") != std::string::npos);
  }
  CHECK(kind_of([] {
          RunConfig c;
          load_config_text(c, "speed = 3\n");
        }) == ErrorKind::config_error);
  CHECK(kind_of([] {
          RunConfig c;
          load_config_text(c, "resolution = 1.5\n");
        }) == ErrorKind::config_error);
  CHECK(kind_of([] {
          RunConfig c;
          apply_setting(c, "window", "1,2,3", "--window");
        }) == ErrorKind::config_error);
  CHECK(kind_of([] {
          RunConfig c;
          c.newton_tol = -1;
          validate(c);
        }) == ErrorKind::config_error);
}

TEST_CASE("config hash is stable and sensitive") {
  RunConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  b.out = "elsewhere.csv";  // output path does not change the run
  CHECK(config_hash(a) == config_hash(b));
  b.resolution = 512;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("csv layout") {
  OutputMeta m;
  m.entries = {{"tool_version", "x"}};
  std::ostringstream os;
  write_csv(os, m, {"a", "b"}, {{"1", "2"}});
  CHECK(os.str() == "# tool_version: x\na,b\n1,2\n");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("transition json is flat with metadata first") {
  RunConfig c;
  auto g = make_density(c);
  auto j = with_meta(make_meta(c, g), to_json(analyze_transition(g, 2.0)));
  CHECK(j.begin().key() == "tool_version");
  CHECK(j["K_c"].get<double>() == doctest::Approx(1.5957691216057308).epsilon(1e-9));
  CHECK(j.contains("critical_ys"));
  CHECK(j.contains("windows"));
}

TEST_CASE("verify suite") {
  auto rep = run_verify();
  CHECK(rep.checks.size() >= 20);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.note);
    CHECK(c.passed);
  }
  auto j = to_json(rep);
  CHECK(j["K_c_gaussian"].get<double>() == doctest::Approx(1.595769).epsilon(1e-6));
  auto bad = run_verify({0.01});
  CHECK_FALSE(bad.all_passed());
  bool kc_failed = false;
  for (const auto& c : bad.checks) kc_failed |= (c.name == "two_step_K_c" && !c.passed);
  CHECK(kc_failed);
}
