#include <cstring>

#include "doctest.h"
#include "helpers.hpp"
#include "zpreal/instance_io.hpp"

using namespace zpreal;
using nlohmann::json;

namespace {

bool same_bits(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.entries().data(), b.entries().data(), a.entries().size() * sizeof(Complex)) == 0;
}

std::string parse_error_message(const std::string& text) {
  try {
    (void)parse_instance(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    return e.what();
  }
  FAIL("expected ParseError");
  return {};
}

}  // namespace

TEST_CASE("write then parse is bit-exact") {
  for (std::uint64_t seed = 110; seed < 115; ++seed) {
    InstanceFile f{random_instance(1 + seed % 3, 2 + seed % 5, seed).data};
    f.metadata["seed"] = seed;
    const std::string text = write_instance(f);
    const InstanceFile g = parse_instance(text);
    CHECK(g.data.poles == f.data.poles);
    CHECK(g.data.zeros == f.data.zeros);
    CHECK(same_bits(g.data.F_P, f.data.F_P));
    CHECK(same_bits(g.data.G_P, f.data.G_P));
    CHECK(same_bits(g.data.F_N, f.data.F_N));
    CHECK(same_bits(g.data.G_N, f.data.G_N));
    CHECK(g.metadata == f.metadata);
    CHECK(write_instance(g) == text);
  }
}

TEST_CASE("D1 file layout") {
  const std::string text = write_instance({testing::d1()});
  const json j = json::parse(text);
  CHECK(j["format_version"] == 1);
  CHECK(j["k"] == 1);
  CHECK(j["n"] == 1);
  CHECK(j["poles"] == json::parse("[[0.0, 0.0]]"));
  CHECK(j["G_P"] == json::parse("[[[-1.0, 0.0]]]"));
  CHECK(text.back() == '\n');
}

TEST_CASE("parse errors name the field") {
  json j = json::parse(write_instance({testing::d1()}));

  CHECK(parse_error_message("{\"k\": 1,") .find("malformed JSON") != std::string::npos);
  CHECK(parse_error_message("{\n\"k\": 1,\n}").find("line 3") != std::string::npos);

  json v = j;
  v.erase("F_N");
  CHECK(parse_error_message(v.dump()).find("F_N") != std::string::npos);

  v = j;
  v["G_N"][0][0] = json::array({1.0});
  CHECK(parse_error_message(v.dump()).find("G_N[0][0]") != std::string::npos);

  v = j;
  v["format_version"] = 2;
  CHECK(parse_error_message(v.dump()).find("format_version") != std::string::npos);

  v = j;
  v["poles"] = json::array();
  CHECK(parse_error_message(v.dump()).find("poles") != std::string::npos);

  CHECK_THROWS_AS(load_instance("/nonexistent/zpreal.json"), Error);
}

TEST_CASE("structural problems surface as validation errors") {
  json j = json::parse(write_instance({testing::d1()}));
  j["zeros"] = json::parse("[[0.0, 0.0]]");
  try {
    (void)parse_instance(j.dump());
    FAIL("expected Collision");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Collision);
  }
}

TEST_CASE("R_inf is factored out") {
  // R = 2 (z - 1) / z stored with R_inf = 2 normalizes back to D1.
  json j = json::parse(write_instance({testing::d1()}));
  j["F_P"] = json::parse("[[[2.0, 0.0]]]");
  j["G_N"] = json::parse("[[[0.5, 0.0]]]");
  j["R_inf"] = json::parse("[[[2.0, 0.0]]]");
  const InstanceFile f = parse_instance(j.dump());
  CHECK(f.data.F_P == Matrix{{1.0}});
  CHECK(f.data.G_N == Matrix{{1.0}});
  CHECK(f.metadata["discarded_R_inf"] == json::parse("[[[2.0, 0.0]]]"));
  CHECK(check_consistency(f.data, 1e-12).passed());
}

TEST_CASE("identity instance round-trips") {
  const InstanceFile f{ZeroPoleData::identity(2)};
  const InstanceFile g = parse_instance(write_instance(f));
  CHECK(g.data.k == 2);
  CHECK(g.data.n() == 0);
}
