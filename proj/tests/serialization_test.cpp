#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "mirrorbench/agents.hpp"
#include "mirrorbench/protocol.hpp"
#include "mirrorbench/serialization.hpp"
#include "test_util.hpp"

using namespace mirrorbench;

TEST(SceneJson, RoundTripAllDefaultScenes) {
  const auto& scenes = testutil::default_scenes();
  const Json doc = scenes_document(scenes);
  EXPECT_EQ(doc["schema_version"], kSceneSchemaVersion);
  const auto back = scenes_from_document(Json::parse(doc.dump()));
  ASSERT_EQ(back.size(), scenes.size());
  EXPECT_EQ(scenes_document(back).dump(), doc.dump());
}

TEST(SceneJson, RejectsOtherVersion) {
  Json doc = scenes_document({testutil::scene()});
  doc["schema_version"] = kSceneSchemaVersion + 1;
  EXPECT_THROW(scenes_from_document(doc), ConfigError);
}

TEST(SceneJson, RejectsMissingField) {
  Json j = to_json(testutil::scene());
  j.erase("mark_anchor");
  EXPECT_THROW(scene_from_json(j), ConfigError);
}

TEST(GenerationConfig, ShippedFileLoads) {
  const auto j = read_json_file(std::string(MIRRORBENCH_SOURCE_DIR) + "/config/generate.json");
  const GenerationConfig c = generation_config_from_json(j);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(to_json(c).dump(), j.dump());
  EXPECT_EQ(generate_scenes(c.pool, c.plan, c.seed).size(), 252u);
}

namespace {

EpisodeRecord sample_record() {
  OracleAgent oracle;
  return run_episode(testutil::scene(4), Level::L1, oracle, "oracle", EpisodeConfig{});
}

}  // namespace

TEST(RecordJson, RoundTrip) {
  const EpisodeRecord r = sample_record();
  const Json j = to_json(r);
  EXPECT_TRUE(validate_record_json(j).empty());
  const EpisodeRecord back = record_from_json(j);
  EXPECT_EQ(back.episode_id, r.episode_id);
  EXPECT_EQ(back.trajectory.distances, r.trajectory.distances);
  EXPECT_EQ(back.trajectory.actions, r.trajectory.actions);
  EXPECT_EQ(*back.metrics, *r.metrics);
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(RecordJson, CanonicalOmitsTimestamps) {
  const Json j = to_json(sample_record(), true);
  EXPECT_FALSE(j.contains("timestamps"));
  EXPECT_TRUE(to_json(sample_record(), false).contains("timestamps"));
}

TEST(RecordJson, InvalidRecordRoundTrip) {
  EpisodeRecord r = sample_record();
  r.valid = false;
  r.metrics.reset();
  r.error_kind = "TransportError";
  r.error_message = "HTTP 500";
  const Json j = to_json(r);
  EXPECT_TRUE(j["outcome"].is_null());
  const EpisodeRecord back = record_from_json(j);
  EXPECT_FALSE(back.valid);
  EXPECT_EQ(back.error_kind, "TransportError");
}

TEST(RecordJson, SchemaViolations) {
  const Json good = to_json(sample_record());
  auto broken = [&](auto mutate) {
    Json j = good;
    mutate(j);
    return validate_record_json(j);
  };
  EXPECT_FALSE(broken([](Json& j) { j.erase("seed"); }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["level"] = 4; }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["actions"][0] = "+W"; }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["distances"][1] = 40; }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["outcome"] = "StepLimit"; }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["actions"].push_back("+X"); }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["valid"] = false; }).empty());
  EXPECT_FALSE(broken([](Json& j) { j["agent_kind"] = "Robot"; }).empty());
}

TEST(RecordJson, ReaderReportsLineNumber) {
  const std::string line = to_json(sample_record()).dump();
  std::istringstream ok(line + "\n\n" + line + "\n");
  EXPECT_EQ(read_records(ok).size(), 2u);

  std::istringstream bad(line + "\n" + line + "\n{\"episode_id\": \n");
  try {
    read_records(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream schema(line + "\n{\"episode_id\": \"x\"}\n");
  try {
    read_records(schema);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}
