#include "doctest.h"
#include "jspec/config.hpp"

using namespace jspec;
using namespace jspec::config;

namespace {
ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::PoleHit;
}
}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0));
  CHECK(parse_complex("-2i") == cplx(0, -2));
  CHECK(parse_complex("i") == cplx(0, 1));
  CHECK(parse_complex("-i") == cplx(0, -1));
  CHECK(parse_complex("0.5+0.5i") == cplx(0.5, 0.5));
  CHECK(parse_complex("1e-3-2e-1i") == cplx(1e-3, -2e-1));
  CHECK(parse_complex(" 3 ") == cplx(3, 0));
  CHECK(parse_complex("0.5 - 2i") == cplx(0.5, -2));
  CHECK(parse_complex("1+2j") == cplx(1, 2));
  for (const char* bad : {"", "abc", "1+", "1 2", "1i2"})
    CHECK(kind_of([&] { parse_complex(bad); }) == ErrorKind::ConfigError);
}

TEST_CASE("regions and ranges") {
  const Box b = parse_region("-1,2,-0.5,0.5");
  CHECK(b.re_min == -1.0);
  CHECK(b.re_max == 2.0);
  CHECK(b.im_min == -0.5);
  CHECK(b.im_max == 0.5);
  CHECK(kind_of([] { parse_region("1,2,3"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse_region("2,1,0,1"); }) == ErrorKind::ConfigError);
  CHECK(parse_range("-5,10") == std::pair<long, long>{-5, 10});
  CHECK(kind_of([] { parse_range("5"); }) == ErrorKind::ConfigError);
}

TEST_CASE("family specs from json") {
  const auto q = spec_from_json(json::parse(R"({"family": "Q_Geometric", "q": 0.5, "beta": {"re": 0, "im": 0.7}})"));
  CHECK(q.family_name() == "q_geometric");
  CHECK(q.lambda(1) == cplx(0.5));
  CHECK(std::abs(q.w(0) - cplx(0, 0.7)) < 1e-15);

  const auto b = spec_from_json(json::parse(
      R"({"family": "bessel_compact", "alpha": 0.3, "beta": 0.7, "perturbation": [{"n": 0, "lambda": 2.5}]})"));
  CHECK(b.lambda(0) == cplx(2.5));
  CHECK(b.perturbation_radius() == 0);

  const auto t = spec_from_json(
      json::parse(R"({"family": "table", "first": -1, "lambda": [0.5, 0.25, 1], "w": [0.3, 0.2, 0.1], "ratio": 0.5})"));
  CHECK(t.lambda(0) == cplx(0.25));
  CHECK(t.has_tail_metadata());

  for (const char* bad : {R"({"family": "nope"})", R"({"family": "linear_free"})", R"({"w": 1})",
                          R"({"family": "linear_free", "w": "x"})", R"([1, 2])",
                          R"({"family": "bessel_compact", "alpha": 1, "beta": 0.7})"})
    CHECK(kind_of([&] { spec_from_json(json::parse(bad)); }) != ErrorKind::PoleHit);
  CHECK(kind_of([] { spec_from_json(json::parse(R"({"family": "nope"})")); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { load_spec("/nonexistent/spec.json"); }) == ErrorKind::ConfigError);
}

TEST_CASE("report serialization") {
  CHECK(to_json(cplx(1, -2)) == json::parse(R"({"re": 1.0, "im": -2.0})"));
  CHECK(complex_from_json(json::parse(R"({"re": 1, "im": -2})")) == cplx(1, -2));
  CHECK(complex_from_json(json(3.5)) == cplx(3.5, 0));

  const auto rep = spectrum(make_spec(LinearFree{1.0}), Box{-1.5, 1.5, -0.5, 0.5});
  const json j = to_json(rep);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"region", "eigenpoints", "excluded_zones", "unknown_points", "diagnostics"});
  REQUIRE(j["eigenpoints"].size() == 3);
  CHECK(j["eigenpoints"][0]["multiplicity"] == 1);
  CHECK(j["eigenpoints"][0]["method"] == "WINDING+NEWTON");

  const json e = error_json(ErrorKind::NearSpectrum, "close");
  CHECK(e["error"]["kind"] == "NearSpectrum");
  CHECK(e["error"]["message"] == "close");
}
