// Exercises the shared library only through its C header.
#include <gtest/gtest.h>

#include <memory>
#include <string>

#include "difftan/difftan.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct SpaceDeleter {
  void operator()(difftan_space* s) const { difftan_space_free(s); }
};
using SpacePtr = std::unique_ptr<difftan_space, SpaceDeleter>;

SpacePtr parse(const char* text) {
  difftan_space* s = nullptr;
  EXPECT_EQ(difftan_space_parse(text, &s), DIFFTAN_OK) << difftan_last_error();
  return SpacePtr(s);
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  difftan_string_free(s);
  return out;
}

difftan_options json_opts() { return {0, nullptr, DIFFTAN_FORMAT_JSON}; }

}  // namespace

TEST(CApi, ParseAndRender) {
  auto s = parse("product[euclidean(1), wedge(2)]");
  char* out = nullptr;
  ASSERT_EQ(difftan_space_render(s.get(), &out), DIFFTAN_OK);
  EXPECT_EQ(take(out), "product[euclidean(1), wedge(2)]");
}

TEST(CApi, ParseErrorSetsLastError) {
  difftan_space* s = nullptr;
  EXPECT_EQ(difftan_space_parse("wedge(2", &s), DIFFTAN_ERR_PARSE);
  EXPECT_EQ(s, nullptr);
  EXPECT_STREQ(difftan_last_error_code(), "ParseError");
  EXPECT_NE(std::string(difftan_last_error()).find("1:8"), std::string::npos);
}

TEST(CApi, InvalidParameter) {
  difftan_space* s = nullptr;
  EXPECT_EQ(difftan_space_parse("wedge(1)", &s), DIFFTAN_ERR_INVALID_PARAMETER);
}

TEST(CApi, NullArguments) {
  difftan_space* s = nullptr;
  EXPECT_EQ(difftan_space_parse(nullptr, &s), DIFFTAN_ERR_NULL_ARGUMENT);
  EXPECT_EQ(difftan_space_parse("wedge(2)", nullptr), DIFFTAN_ERR_NULL_ARGUMENT);
  char* out = nullptr;
  EXPECT_EQ(difftan_space_render(nullptr, &out), DIFFTAN_ERR_NULL_ARGUMENT);
  difftan_space_free(nullptr);
  difftan_string_free(nullptr);
}

TEST(CApi, Contains) {
  auto s = parse("wedge(2)");
  int in = -1;
  ASSERT_EQ(difftan_space_contains(s.get(), "(0, 3)", &in), DIFFTAN_OK);
  EXPECT_EQ(in, 1);
  ASSERT_EQ(difftan_space_contains(s.get(), "(1, 3)", &in), DIFFTAN_OK);
  EXPECT_EQ(in, 0);
}

TEST(CApi, InternalReport) {
  auto s = parse("wedge(2)");
  auto opts = json_opts();
  char* out = nullptr;
  ASSERT_EQ(difftan_report_internal(s.get(), "origin", &opts, &out), DIFFTAN_OK);
  json j = json::parse(take(out));
  EXPECT_EQ(j["verb"], "tangent-internal");
  EXPECT_EQ(j["internal"]["dim"], 2);
}

TEST(CApi, PointNotInSpace) {
  auto s = parse("wedge(2)");
  auto opts = json_opts();
  char* out = nullptr;
  EXPECT_EQ(difftan_report_internal(s.get(), "(1, 1)", &opts, &out), DIFFTAN_ERR_POINT_NOT_IN_SPACE);
  EXPECT_EQ(out, nullptr);
  EXPECT_STREQ(difftan_last_error_code(), "PointNotInSpace");
}

TEST(CApi, ExternalReport) {
  auto s = parse("orbit_quotient(4)");
  auto opts = json_opts();
  char* out = nullptr;
  ASSERT_EQ(difftan_report_external(s.get(), "origin", &opts, &out), DIFFTAN_OK);
  json j = json::parse(take(out));
  EXPECT_EQ(j["external"]["dim"], 1);
}

TEST(CApi, BetaWithSlopes) {
  auto s = parse("generated(2, 1)");
  difftan_options opts{0, "1, 2, 1/2", DIFFTAN_FORMAT_JSON};
  char* out = nullptr;
  ASSERT_EQ(difftan_report_beta(s.get(), "origin", &opts, &out), DIFFTAN_OK);
  json j = json::parse(take(out));
  EXPECT_EQ(j["internal"]["dim"], 5);
  EXPECT_EQ(j["beta"]["rank"], 2);
  EXPECT_EQ(j["beta"]["injective"], false);
  EXPECT_EQ(j["beta"]["surjective"], true);
}

TEST(CApi, WireDefaultsToTwentySlopes) {
  auto s = parse("generated(2, 1)");
  auto opts = json_opts();
  char* out = nullptr;
  ASSERT_EQ(difftan_report_internal(s.get(), "origin", &opts, &out), DIFFTAN_OK);
  EXPECT_EQ(json::parse(take(out))["internal"]["dim"], 22);
}

TEST(CApi, BundleCheck) {
  auto s = parse("wedge(2)");
  auto opts = json_opts();
  char* out = nullptr;
  ASSERT_EQ(difftan_bundle_check(s.get(), "u", "(0, 0)", "(u, u)", &opts, &out), DIFFTAN_OK);
  json j = json::parse(take(out));
  EXPECT_EQ(j["verb"], "bundle-check");
  EXPECT_EQ(j["hector"]["member"], false);
  EXPECT_EQ(j["dvs"]["member"], true);
  EXPECT_EQ(j["dvs"]["decomposition"].size(), 2u);
}

TEST(CApi, BundleCheckMalformed) {
  auto s = parse("wedge(2)");
  auto opts = json_opts();
  char* out = nullptr;
  EXPECT_EQ(difftan_bundle_check(s.get(), "u", "(0, 0)", "(u, u, u)", &opts, &out),
            DIFFTAN_ERR_MALFORMED_CANDIDATE);
}

TEST(CApi, Fibrewise) {
  auto s = parse("wedge(2)");
  auto opts = json_opts();
  char* out = nullptr;
  ASSERT_EQ(difftan_fibrewise(s.get(), "u", "(0, 0)", "(u, 0)", "(0, u)", &opts, &out), DIFFTAN_OK);
  json j = json::parse(take(out));
  ASSERT_EQ(j["operations"].size(), 2u);
  for (const auto& op : j["operations"]) {
    EXPECT_EQ(op["hector"], "counterexample");
    EXPECT_EQ(op["dvs"], "smooth-on-candidates");
  }
}

TEST(CApi, FibrewiseNotMembers) {
  auto s = parse("wedge(2)");
  auto opts = json_opts();
  char* out = nullptr;
  EXPECT_EQ(difftan_fibrewise(s.get(), "u", "(0, 0)", "(u, u)", "(0, u)", &opts, &out), DIFFTAN_ERR_NOT_MEMBERS);
}

TEST(CApi, TrivializeAndUnsupported) {
  auto opts = json_opts();
  char* out = nullptr;
  auto torus = parse("irrational_torus(sqrt(2))");
  ASSERT_EQ(difftan_trivialize(torus.get(), &opts, &out), DIFFTAN_OK);
  EXPECT_EQ(json::parse(take(out))["trivialization"]["holds"], true);
  auto wedge = parse("wedge(2)");
  EXPECT_EQ(difftan_trivialize(wedge.get(), &opts, &out), DIFFTAN_ERR_UNSUPPORTED);
}

TEST(CApi, Fine) {
  auto s = parse("wedge(3)");
  auto opts = json_opts();
  char* out = nullptr;
  ASSERT_EQ(difftan_fine(s.get(), "origin", &opts, &out), DIFFTAN_OK);
  EXPECT_EQ(json::parse(take(out))["fine"]["verdict"], "fine");
}

TEST(CApi, Table) {
  auto opts = json_opts();
  char* out = nullptr;
  int all = 0;
  ASSERT_EQ(difftan_table(&opts, &out, &all), DIFFTAN_OK);
  EXPECT_EQ(all, 1);
  json j = json::parse(take(out));
  EXPECT_EQ(j["verb"], "table");
  EXPECT_EQ(j["rows"].size(), 13u);
}

TEST(CApi, TextFormat) {
  auto s = parse("euclidean(2)");
  difftan_options opts{0, nullptr, DIFFTAN_FORMAT_TEXT};
  char* out = nullptr;
  ASSERT_EQ(difftan_report_internal(s.get(), "(1, 2)", &opts, &out), DIFFTAN_OK);
  std::string text = take(out);
  EXPECT_NE(text.find("internal:\n  dim: 2\n"), std::string::npos) << text;
}

TEST(CApi, StatusNames) {
  EXPECT_STREQ(difftan_status_name(DIFFTAN_OK), "ok");
  EXPECT_STRNE(difftan_status_name(DIFFTAN_ERR_PARSE), difftan_status_name(DIFFTAN_ERR_INTERNAL));
}
