#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "entangle/entangle.h"
#include "json.hpp"

namespace {

struct Built {
  ent_pipeline* p = nullptr;
  Built() { EXPECT_EQ(ent_pipeline_build(20, 0, &p), ENT_OK) << ent_last_error(); }
  ~Built() { ent_pipeline_free(p); }
};

const Built& built() {
  static const Built b;
  return b;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ent_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(ent_status_name(ENT_OK), "ok");
  EXPECT_STREQ(ent_status_name(ENT_ERR_IO), "i/o error");
  EXPECT_STREQ(ent_version(), "1.0.0");
}

TEST(CApi, CuboidCounts) {
  ent_complex_counts k{};
  ASSERT_EQ(ent_cuboid_counts(2, 2, 2, &k), ENT_OK);
  EXPECT_EQ(k.vertices, 27u);
  EXPECT_EQ(k.edges, 54u);
  EXPECT_EQ(k.faces, 36u);
  ASSERT_EQ(ent_cuboid_counts(41, 20, 20, &k), ENT_OK);
  EXPECT_EQ(k.vertices, 18522u);
  EXPECT_EQ(k.edges, 53361u);
  EXPECT_EQ(k.faces, 51240u);
  EXPECT_STREQ(ent_last_error(), "");
}

TEST(CApi, ErrorsSetTheLastMessage) {
  EXPECT_EQ(ent_cuboid_counts(2, 2, 2, nullptr), ENT_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ent_last_error()).find("null"), std::string::npos);
  ent_pipeline* p = reinterpret_cast<ent_pipeline*>(1);
  EXPECT_NE(ent_pipeline_build(19, 0, &p), ENT_OK);
  EXPECT_EQ(p, nullptr);
  EXPECT_STRNE(ent_last_error(), "");
  ent_complex_counts k{};
  EXPECT_EQ(ent_cuboid_counts(1, 1, 1, &k), ENT_OK);
  EXPECT_STREQ(ent_last_error(), "");
}

TEST(CApi, NullArguments) {
  ent_pipeline_counts c{};
  EXPECT_EQ(ent_pipeline_get_counts(nullptr, &c), ENT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ent_pipeline_get_counts(built().p, nullptr), ENT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ent_generate(20, nullptr, "json"), ENT_ERR_INVALID_ARGUMENT);
  int passed = 0;
  EXPECT_EQ(ent_pipeline_verify(built().p, nullptr, nullptr, &passed), ENT_ERR_INVALID_ARGUMENT);
  char* out = nullptr;
  EXPECT_EQ(ent_pipeline_knot(built().p, 0, nullptr, 1, &out), ENT_ERR_INVALID_ARGUMENT);
  ent_pipeline_free(nullptr);
  ent_string_free(nullptr);
  ent_verify_options_init(nullptr);
}

TEST(CApi, PipelineCounts) {
  ent_pipeline_counts c{};
  ASSERT_EQ(ent_pipeline_get_counts(built().p, &c), ENT_OK);
  EXPECT_EQ(c.box.vertices, 18522u);
  EXPECT_EQ(c.tree_edges, 18521u);
  EXPECT_EQ(c.non_tree_edges, 53359u);
  EXPECT_EQ(c.cprime.vertices, 18522u);
  EXPECT_EQ(c.cdoubleprime.vertices, 1u);
  EXPECT_EQ(c.cdoubleprime.edges, c.non_tree_edges);
  EXPECT_EQ(c.cdoubleprime.faces, c.cprime.faces);
}

TEST(CApi, VerifySelectedChecks) {
  ent_verify_options o;
  ent_verify_options_init(&o);
  o.checks = "tree,knots";
  o.knot_samples = 5;
  char* json = nullptr;
  int passed = 0;
  ASSERT_EQ(ent_pipeline_verify(built().p, &o, &json, &passed), ENT_OK) << ent_last_error();
  const auto j = nlohmann::json::parse(take(json));
  EXPECT_EQ(passed, 1);
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][1]["name"], "verify_entangled_canonical");

  o.scope = "bogus";
  EXPECT_EQ(ent_pipeline_verify(built().p, &o, &json, &passed), ENT_ERR_INVALID_ARGUMENT);
  o.scope = nullptr;
  o.checks = "nope";
  EXPECT_EQ(ent_pipeline_verify(built().p, &o, &json, &passed), ENT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, KnotCertificate) {
  const std::uint32_t primes[] = {3, 5};
  char* json = nullptr;
  // Tree edges are rejected; the first accepted id is a non-tree edge.
  std::uint32_t e = 0;
  ent_status s = ENT_ERR_INVALID_ARGUMENT;
  for (; e < 1000 && s == ENT_ERR_INVALID_ARGUMENT; ++e) s = ent_pipeline_knot(built().p, e, primes, 2, &json);
  ASSERT_EQ(s, ENT_OK) << ent_last_error();
  const auto j = nlohmann::json::parse(take(json));
  EXPECT_EQ(j["edge"], e - 1);
  EXPECT_EQ(j["certificates"].size(), 2u);
  EXPECT_EQ(ent_pipeline_knot(built().p, 1u << 30, primes, 1, &json), ENT_ERR_NOT_FOUND);
}

TEST(CApi, WriteToAnUnwritableDirectory) {
  const auto file = std::filesystem::temp_directory_path() / "entangle_capi_blocker";
  { std::FILE* f = std::fopen(file.c_str(), "w"); std::fclose(f); }
  EXPECT_EQ(ent_generate(20, (file / "sub").c_str(), "json"), ENT_ERR_IO);
  std::filesystem::remove(file);
}
