#include <gtest/gtest.h>

#include "support.hpp"

using namespace reesdual;
using testing_support::P;
using testing_support::worked_example;

namespace {

const std::string kDataDir = REESDUAL_DATA_DIR;

std::string error_of(const std::string& text) {
  try {
    auto file = parse_instance_text(text);
    build_instance<Rational>(file);
  } catch (const InstanceFileError& e) {
    return e.what();
  }
  return "";
}

const char* kGood = R"({"kind": "ideal", "d": 2, "m": 3, "field": "Q", "f": "x1^3",
  "psi": [["x1", "x3"], ["x2", "x1"], ["x3", "x2"]]})";

}  // namespace

TEST(ParseField, Cases) {
  EXPECT_TRUE(parse_field("Q").rational());
  EXPECT_EQ(parse_field("Fp:101").p, 101u);
  EXPECT_EQ(parse_field("Fp:2147483629").p, 2147483629u);
  EXPECT_EQ(parse_field("Fp:32003").name(), "Fp:32003");
  EXPECT_THROW(parse_field("Fp:100"), InstanceFileError);
  EXPECT_THROW(parse_field("Fp:4294967311"), InstanceFileError);
  EXPECT_THROW(parse_field("Fp:"), InstanceFileError);
  EXPECT_THROW(parse_field("Fp:-7"), InstanceFileError);
  EXPECT_THROW(parse_field("R"), InstanceFileError);
}

TEST(InstanceFile, LoadsWorkedExample) {
  auto file = read_instance_file(kDataDir + "/worked_example.json");
  EXPECT_EQ(file.kind, "ideal");
  EXPECT_EQ(file.n(), 3u);
  auto inst = build_instance<Rational>(file);
  auto ref = worked_example();
  EXPECT_EQ(inst.f.to_string(), ref.f.to_string());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(inst.psi(i, j).to_string(), ref.psi(i, j).to_string());
  EXPECT_EQ(inst.e, 1);
}

TEST(InstanceFile, ModuleFile) {
  auto file = read_instance_file(kDataDir + "/module_example.json");
  EXPECT_EQ(file.kind, "module");
  EXPECT_EQ(file.e, 2);
  auto inst = build_instance<Rational>(file);
  EXPECT_EQ(inst.n(), 4u);
  EXPECT_EQ(inst.psi.cols(), 2u);
}

TEST(InstanceFile, MissingFile) {
  EXPECT_THROW(read_instance_file(kDataDir + "/no_such_file.json"), InstanceFileError);
}

TEST(InstanceFile, MalformedJsonReportsLocation) {
  auto msg = error_of("{\n  \"kind\": \"ideal\",\n  \"d\": 2,,\n}");
  EXPECT_NE(msg.find("malformed JSON"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(InstanceFile, MissingAndMistypedKeys) {
  EXPECT_NE(error_of(R"({"kind": "ideal", "d": 2, "m": 3, "f": "x1^3"})").find("missing key \"psi\""),
            std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "ideal", "d": "2", "m": 3, "f": "x1", "psi": [["x1"]]})").find("\"d\" must be"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "ring", "d": 2, "m": 3, "f": "x1", "psi": [["x1"]]})").find("\"kind\""),
            std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "module", "d": 2, "m": 3, "f": "x1", "psi": [["x1"]]})").find("missing key \"e\""),
            std::string::npos);
  EXPECT_NE(error_of("[1, 2]").find("JSON object"), std::string::npos);
}

TEST(InstanceFile, BadPolynomialNamesItsLocation) {
  auto file = read_instance_file(kDataDir + "/bad_poly.json");
  try {
    build_instance<Rational>(file);
    FAIL() << "expected an error";
  } catch (const InstanceFileError& e) {
    EXPECT_NE(std::string(e.what()).find("psi["), std::string::npos) << e.what();
  }
  auto msg = error_of(R"({"kind": "ideal", "d": 2, "m": 3, "f": "x1^^3",
    "psi": [["x1", "x3"], ["x2", "x1"], ["x3", "x2"]]})");
  EXPECT_EQ(msg.rfind("f: ", 0), 0u) << msg;
}

TEST(InstanceFile, ShapeErrors) {
  // ragged psi
  EXPECT_NE(error_of(R"({"kind": "ideal", "d": 2, "m": 3, "f": "x1^3",
    "psi": [["x1", "x3"], ["x2"], ["x3", "x2"]]})").find("row 2"),
            std::string::npos);
  // f of the wrong degree
  EXPECT_FALSE(error_of(R"({"kind": "ideal", "d": 2, "m": 2, "f": "x1^3",
    "psi": [["x1", "x3"], ["x2", "x1"], ["x3", "x2"]]})").empty());
  // nonlinear entry
  EXPECT_FALSE(error_of(R"({"kind": "ideal", "d": 2, "m": 3, "f": "x1^3",
    "psi": [["x1^2", "x3"], ["x2", "x1"], ["x3", "x2"]]})").empty());
  // wrong column count
  EXPECT_FALSE(error_of(R"({"kind": "ideal", "d": 2, "m": 3, "f": "x1^3",
    "psi": [["x1"], ["x2"], ["x3"]]})").empty());
  EXPECT_FALSE(error_of(R"({"kind": "ideal", "d": 0, "m": 3, "f": "x1^3", "psi": [["x1"]]})").empty());
  EXPECT_TRUE(error_of(kGood).empty());
}

TEST(InstanceFile, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto inst = as_module(random_instance<Rational>(2, 2, seed));
    auto file = to_instance_file(inst, false);
    auto text = to_json(file).dump(2);
    auto back = build_instance<Rational>(parse_instance_text(text));
    EXPECT_EQ(back.f.to_string(), inst.f.to_string());
    EXPECT_EQ(back.psi.rows(), inst.psi.rows());
    for (std::size_t i = 0; i < inst.psi.rows(); ++i)
      for (std::size_t j = 0; j < inst.psi.cols(); ++j)
        EXPECT_EQ(back.psi(i, j).to_string(), inst.psi(i, j).to_string());
    EXPECT_EQ(to_json(to_instance_file(back, false)).dump(), to_json(file).dump());
  }
  auto mod = random_module_instance<ModP>(2, 2, 1, 5, PrimeField{101});
  auto file = to_instance_file(mod, true);
  EXPECT_EQ(file.field, "Fp:101");
  auto back = build_instance<ModP>(parse_instance_text(to_json(file).dump()), PrimeField{parse_field(file.field).p});
  EXPECT_EQ(back.e, 2);
  EXPECT_EQ(back.f.to_string(), mod.f.to_string());
}

TEST(ReportJson, Fields) {
  auto r = check_ideal_instance(worked_example());
  auto j = to_json(r);
  EXPECT_TRUE(j["overall"].get<bool>());
  EXPECT_FALSE(j["linear_type"].get<bool>());
  ASSERT_TRUE(j["conditions"].is_array());
  EXPECT_EQ(j["conditions"].size(), r.conditions.size());
  bool saw_height = false;
  for (const auto& c : j["conditions"])
    if (c["name"] == "grade2-perfect") {
      EXPECT_EQ(c["height"], 2);
      EXPECT_EQ(c["required"], 2);
      saw_height = true;
    }
  EXPECT_TRUE(saw_height);
}

TEST(PolyJson, Bidegree) {
  auto R = testing_support::ring3x3();
  auto j = poly_json("F", P(R, "x1*T1 - x2*T2"));
  EXPECT_EQ(j["bidegree"], json::array({1, 1}));
  EXPECT_EQ(j["terms"], 2);
  EXPECT_TRUE(poly_json("g", P(R, "x1 + T1"))["bidegree"].is_null());
}
