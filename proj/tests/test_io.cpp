#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "toric/enumerate.hpp"
#include "toric/io.hpp"

using namespace toric;

namespace {

std::string parse_error_path(const Json& j) {
  try {
    parse_fan(j);
  } catch (const ParseError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("fan round trip") {
    for (auto f : {fans::projective_space(2), fans::hirzebruch(2), fans::affine_space(3)}) {
      CHECK(parse_fan(fan_to_json(f)) == f);
      CHECK(parse_fan(Json::parse(fan_to_json(f).dump())) == f);
    }
  }

  TEST_CASE("fan files from the test data") {
    Fan p2 = parse_fan(read_json_file(std::string(TEST_DATA_DIR) + "/p2.json"));
    CHECK(p2 == fans::projective_space(2));
    CHECK(p2.asserted_complete());
  }

  TEST_CASE("positioned fan errors") {
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[[1,0],[2,4]],"max_cones":[[0,1]]})")) == "$.rays[1]");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[[1,0],[1,0]],"max_cones":[[0]]})")) == "$.rays[1]");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[[1,0],[0,0]],"max_cones":[[0]]})")) == "$.rays[1]");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[[1,0],[0]],"max_cones":[[0]]})")) == "$.rays[1]");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[[1,0]],"max_cones":[[0,5]]})")) == "$.max_cones[0][1]");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[[1,"x"]],"max_cones":[]})")) == "$.rays[0][1]");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"max_cones":[]})")) == "$");
    CHECK(parse_error_path(Json::parse(R"({"dim":2,"rays":[],"max_cones":[],"asserted_complete":1})")) ==
          "$.asserted_complete");
  }

  TEST_CASE("group encodings") {
    for (const auto& g : fixtures::sample_groups()) {
      CHECK(parse_group(group_to_json(g)) == g);
    }
    CHECK(parse_group_spec("GL:2") == GroupDescriptor::general_linear(2));
    CHECK(parse_group_spec("torus:1") == GroupDescriptor::diagonal_torus(1));
    CHECK(parse_group_spec("block_nilpotent:2,1") == GroupDescriptor::block_nilpotent({2, 1}));
    CHECK_THROWS_AS(parse_group_spec("SL:2"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("GL"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("GL:0"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("torus:1,2"), ParseError);
  }

  TEST_CASE("matrix encoding") {
    RatMatrix m{{Rational(1, 2), Rational(-3)}, {Rational(0), Rational(7, 5)}};
    CHECK(parse_matrix(matrix_to_json(m), "$", 2) == m);
    CHECK(parse_matrix(Json::parse(R"([[1,"2/4"],["-3",0]])"), "$", 2) ==
          RatMatrix{{Rational(1), Rational(1, 2)}, {Rational(-3), Rational(0)}});
    CHECK_THROWS_AS(parse_matrix(Json::parse(R"([[1,"1/0"],[0,1]])"), "$", 2), ParseError);
    CHECK_THROWS_AS(parse_matrix(Json::parse(R"([[1,0.5],[0,1]])"), "$", 2), ParseError);
    CHECK_THROWS_AS(parse_matrix(Json::parse(R"([[1,0]])"), "$", 2), ParseError);
  }

  TEST_CASE("bundle round trip re-validates to the same canonical form") {
    for (auto fan : {fixtures::p1(), fixtures::p2(), fixtures::f1()})
      for (const auto& s : fixtures::corpus(fan, "io", 20, 31)) {
        INFO(s.label);
        for (const auto& d : {s.original, s.gauged}) {
          Json j = bundle_to_json(d);
          BundleData back = parse_bundle(Json::parse(j.dump()), fan);
          CHECK(back == d);
          CHECK(validate(back).valid());
          CHECK(canonical_form(back) == canonical_form(d));
          CHECK(bundle_to_json(back).dump() == j.dump());
        }
      }
  }

  TEST_CASE("non-cocycle data is written in full") {
    auto fan = fixtures::p1();
    auto gl = GroupDescriptor::general_linear(1);
    std::vector<TorusHomomorphism> rho{TorusHomomorphism::diagonal({Character{0}}),
                                       TorusHomomorphism::diagonal({Character{0}})};
    BundleData d(fan, gl, rho, {RatMatrix{{1}}, RatMatrix{{2}}, RatMatrix{{3}}, RatMatrix{{1}}});
    Json j = bundle_to_json(d);
    CHECK(j.contains("P_full"));
    CHECK(parse_bundle(j, fan) == d);
  }

  TEST_CASE("bundle parse errors") {
    auto fan = fixtures::p1();
    auto parse_path = [&](const char* text) {
      try {
        parse_bundle(Json::parse(text), fan);
      } catch (const ParseError& e) {
        return e.path();
      }
      return std::string();
    };
    CHECK(parse_path(R"({"group":{"type":"torus","r":1},"xi":{"0":[[1]]}})") == "$.xi");
    CHECK(parse_path(R"({"group":{"type":"torus","r":1},"xi":{"0":[[1]],"2":[[0]]}})") == "$.xi.2");
    CHECK(parse_path(R"({"group":{"type":"torus","r":1},"xi":{"0":[[1,2]],"1":[[0]]}})") == "$.xi.0[0]");
    CHECK(parse_path(R"({"group":{"type":"torus","r":2},"xi":{"0":[[1]],"1":[[0]]}})") == "$.xi.0");
    CHECK(parse_path(R"({"group":{"type":"GL"},"xi":{}})") == "$.group");
    CHECK(parse_path(R"({"group":{"type":"GL","r":1},"xi":{"0":[[1]],"1":[[0]]},
                         "P_base":{"base":0,"values":{"1":[["0"]]}}})") == "$.P_base");
    CHECK(parse_path(R"({"group":{"type":"GL","r":1},"xi":{"0":[[1]],"1":[[0]]},
                         "P_base":{"base":0,"values":{"1":[["2"]]}},
                         "P_full":{"0,0":[[1]],"0,1":[[1]],"1,0":[[1]],"1,1":[[1]]}})") == "$");
    CHECK(parse_path(R"({"group":{"type":"GL","r":1},"xi":{"0":[[1]],"1":[[0]]},
                         "P_full":{"0,0":[[1]],"0,1":[[1]],"1,0":[[1]]}})") == "$.P_full");
    CHECK(parse_path(R"({"schema":"other","group":{"type":"GL","r":1},"xi":{}})") == "$.schema");
  }

  TEST_CASE("consistent P_base and P_full are accepted") {
    auto fan = fixtures::p1();
    const char* text = R"({"group":{"type":"GL","r":1},"xi":{"0":[[1]],"1":[[0]]},
                          "P_base":{"base":0,"values":{"1":[["2"]]}},
                          "P_full":{"0,0":[[1]],"0,1":[["1/2"]],"1,0":[[2]],"1,1":[[1]]}})";
    BundleData d = parse_bundle(Json::parse(text), fan);
    CHECK(d.P(1, 0) == RatMatrix{{2}});
    CHECK(validate(d).valid());
  }

  TEST_CASE("key order does not matter") {
    auto fan = fixtures::p1();
    BundleData a = parse_bundle(Json::parse(R"({"xi":{"1":[[0]],"0":[[1]]},"group":{"r":1,"type":"torus"}})"), fan);
    BundleData b = parse_bundle(Json::parse(R"({"group":{"type":"torus","r":1},"xi":{"0":[[1]],"1":[[0]]}})"), fan);
    CHECK(a == b);
  }

  TEST_CASE("malformed json is an input error") {
    std::string path = "io_test_malformed.json";
    std::ofstream(path) << "{\"dim\": 2,";
    CHECK_THROWS_AS(read_json_file(path), InputError);
    CHECK_THROWS_AS(read_json_file("does/not/exist.json"), InputError);
    std::remove(path.c_str());
  }
}
