#include "hxray/config.hpp"
#include "hxray/report.hpp"
#include "hxray/run.hpp"

#include <doctest.h>

using namespace hxray;

namespace {

std::string error_of(const std::string &text) {
  try {
    config::json e;
    config::load(config::parse_text(text), e);
  } catch (const Error &err) {
    return err.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config loading") {
  config::json e;
  const auto rc = config::load(config::parse_text(R"({"structure":{"family":"quaternionic"},"basis":{"L":5},
      "quadrature":{"volume_order":10},"experiment":{"x":1}})"),
                               e);
  CHECK(rc.structure.m == 3);
  CHECK(rc.L == 5);
  CHECK(rc.quadrature.volume_order == 10);
  CHECK(e["x"] == 1);
}

TEST_CASE("config diagnostics name the line or the field") {
  CHECK(error_of("{\n  \"structure\": {\"family\": \"heisenberg\", \"n\": 1},\n  \"basis\": {\"L\": 8,}\n}")
            .find("line 3") != std::string::npos);
  CHECK(error_of(R"({"structure":{"family":"heisenberg","n":1},"basis":{"L":"x"}})").find("/basis/L") !=
        std::string::npos);
  CHECK(error_of(R"({"structure":{"family":"heisenberg","n":1},"bogus":1})").find("bogus") != std::string::npos);
  CHECK(error_of(R"({"basis":{"L":4}})").find("structure") != std::string::npos);
  CHECK(error_of(R"({"structure":{"family":"custom","n":1,"generators":[[[1,0],[0,1]]]}})") != "");
}

TEST_CASE("functions from config") {
  const auto S = algebra::heisenberg(1);
  auto j = config::parse_text(R"({"products":[{"horizontal":[{"c":[1,0.5],"a":0.7,"x0":[0.1,0],
      "poly":[{"exps":[1,0],"coeff":2}]}],"central":[{"d":1,"b":0.4,"u0":[0.2],"omega0":[0.3]}]}]})");
  config::Fields f(j, "/f");
  const auto tf = config::parse_function(f, S);
  CHECK(tf.products().size() == 1);
  auto z = config::parse_text(R"({"zero":true})");
  config::Fields fz(z, "/f");
  CHECK(config::parse_function(fz, S).is_zero());
}

TEST_CASE("report formatting") {
  config::json j;
  j["a"] = 0.1;
  j["b"] = std::nan("");
  const std::string s = report::dump(j, 0);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("null") != std::string::npos);
}

TEST_CASE("runs are reproducible apart from the timestamp") {
  const std::string cfg = R"({"structure":{"family":"heisenberg","n":1},"basis":{"L":6},
      "experiment":{"lambda":[1.0],"k":1,"mc_samples":200,"seed":5}})";
  run::Options o;
  o.write_files = false;
  auto a = run::run("spectrum", cfg, o);
  o.threads = 3;
  auto b = run::run("spectrum", cfg, o);
  CHECK(a.exit_code == 0);
  auto strip = [](std::string s) { return s.substr(0, s.find("\"timestamp\"")); };
  CHECK(strip(a.report) == strip(b.report));
  CHECK(run::run("nope", cfg, o).exit_code == 2);
  CHECK(run::run("spectrum", "{", o).exit_code == 2);
}

TEST_CASE("assertions carry tolerance and config key") {
  run::Options o;
  o.write_files = false;
  const auto r = run::run("spectrum", R"({"structure":{"family":"heisenberg","n":1},
      "experiment":{"k":0,"w2":2.0,"expect_invertible":false,"expect_witness":1}})", o);
  CHECK(r.exit_code == 0);
  const auto j = config::parse_text(r.report);
  for (const auto &a : j["assertions"]) {
    CHECK(a.contains("tolerance"));
    CHECK(a["config_key"].get<std::string>().rfind("experiment/", 0) == 0);
  }
  CHECK(j["results"]["certificate"]["witness_degree"] == 1);
  const auto bad = run::run("spectrum", R"({"structure":{"family":"heisenberg","n":1},
      "experiment":{"k":0,"w2":2.0,"expect_invertible":true}})", o);
  CHECK(bad.exit_code == 1);
  CHECK(bad.diagnostic.rfind("tolerance_failure", 0) == 0);
}
