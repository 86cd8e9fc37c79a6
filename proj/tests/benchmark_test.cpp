#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "mirrorbench/benchmark.hpp"
#include "test_util.hpp"

using namespace mirrorbench;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<SceneSpec> some_scenes(std::size_t n) {
  std::vector<SceneSpec> out;
  const auto& all = testutil::default_scenes();
  for (std::size_t i = 0; i < all.size() && out.size() < n; i += all.size() / n) out.push_back(all[i]);
  return out;
}

RunConfig base_config(const std::string& name, std::size_t scenes = 12) {
  RunConfig c;
  c.run_id = "run";
  c.runs_dir = testutil::scratch_dir(name);
  c.scenes = some_scenes(scenes);
  c.agents = {scripted_handle("random", AgentKind::Random), scripted_handle("oracle", AgentKind::Oracle),
              scripted_handle("confused", AgentKind::MirrorConfused)};
  c.seed = 2024;
  c.canonical = true;
  return c;
}

class Broken final : public Agent {
 public:
  AgentKind kind() const override { return AgentKind::Remote; }
  bool wants_frame() const override { return false; }
  AgentDecision step(const AgentRequest&) override { throw TransportError("down"); }
};

}  // namespace

TEST(Benchmark, WritesEveryCellInOrder) {
  const RunConfig c = base_config("order");
  const RunManifest m = run_benchmark(c);
  EXPECT_EQ(m.cells, 3u * 12u * 4u);
  EXPECT_EQ(m.executed, m.cells);
  EXPECT_EQ(m.invalid, 0u);
  const auto recs = read_records_file(episodes_path(c.runs_dir, c.run_id).string());
  ASSERT_EQ(recs.size(), m.cells);
  std::size_t i = 0;
  for (const auto& a : c.agents) {
    for (const auto& s : c.scenes) {
      for (Level l : c.levels) {
        EXPECT_EQ(recs[i].episode_id, episode_id_for(a.agent_id, s.scene_id, l));
        EXPECT_EQ(recs[i].seed, derive_seed(c.seed, recs[i].episode_id));
        ++i;
      }
    }
  }
  const Json manifest = read_json_file((run_dir(c.runs_dir, c.run_id) / "manifest.json").string());
  EXPECT_EQ(manifest["tool_version"], std::string(kToolVersion));
  EXPECT_EQ(manifest["config"]["seed"], 2024);
  EXPECT_EQ(manifest["config"]["agents"].size(), 3u);
  EXPECT_FALSE(manifest.contains("started_at"));
}

TEST(Benchmark, ByteIdenticalAcrossParallelism) {
  RunConfig a = base_config("det_a");
  a.parallelism = 1;
  RunConfig b = base_config("det_b");
  b.parallelism = 8;
  run_benchmark(a);
  run_benchmark(b);
  const std::string fa = slurp(episodes_path(a.runs_dir, a.run_id));
  EXPECT_FALSE(fa.empty());
  EXPECT_EQ(fa, slurp(episodes_path(b.runs_dir, b.run_id)));
}

TEST(Benchmark, DifferentSeedDifferentRandomTrajectories) {
  RunConfig a = base_config("seed_a");
  RunConfig b = base_config("seed_b");
  b.seed = 2025;
  run_benchmark(a);
  run_benchmark(b);
  EXPECT_NE(slurp(episodes_path(a.runs_dir, a.run_id)), slurp(episodes_path(b.runs_dir, b.run_id)));
}

TEST(Benchmark, ResumeCompletesToTheSameFile) {
  RunConfig full = base_config("resume_full");
  run_benchmark(full);
  RunConfig part = base_config("resume_part");
  part.max_new_episodes = 17;
  const RunManifest first = run_benchmark(part);
  EXPECT_EQ(first.executed, 17u);
  part.max_new_episodes = SIZE_MAX;
  const RunManifest second = run_benchmark(part);
  EXPECT_EQ(second.skipped, 17u);
  EXPECT_EQ(second.executed, second.cells - 17u);
  EXPECT_EQ(slurp(episodes_path(part.runs_dir, part.run_id)),
            slurp(episodes_path(full.runs_dir, full.run_id)));
  const RunManifest third = run_benchmark(part);
  EXPECT_EQ(third.executed, 0u);
}

TEST(Benchmark, FailingAgentRecordedInvalid) {
  RunConfig c = base_config("invalid", 3);
  c.agents.push_back({"broken", AgentKind::Remote, Json::object(), [] { return std::make_unique<Broken>(); }});
  const RunManifest m = run_benchmark(c);
  EXPECT_EQ(m.invalid, 12u);
  std::size_t bad = 0;
  for (const auto& r : read_records_file(episodes_path(c.runs_dir, c.run_id).string())) {
    if (!r.valid) {
      ++bad;
      EXPECT_EQ(r.agent_id, "broken");
      EXPECT_EQ(r.error_kind, "TransportError");
    }
  }
  EXPECT_EQ(bad, 12u);
}

TEST(Benchmark, FrameDump) {
  RunConfig c = base_config("frames", 1);
  c.agents = {scripted_handle("oracle", AgentKind::Oracle)};
  c.levels = {Level::L0};
  c.episode.frame_dump = true;
  c.episode.render.width = 80;
  c.episode.render.height = 60;
  run_benchmark(c);
  const auto rec = read_records_file(episodes_path(c.runs_dir, c.run_id).string()).at(0);
  const auto dir = run_dir(c.runs_dir, c.run_id) / "frames" / rec.episode_id;
  for (int i = 0; i <= rec.trajectory.steps_taken(); ++i) {
    const auto p = dir / (std::to_string(i) + ".png");
    ASSERT_TRUE(std::filesystem::exists(p)) << p;
  }
}

TEST(Benchmark, ConfigValidation) {
  RunConfig dup = base_config("dup", 2);
  dup.agents.push_back(scripted_handle("oracle", AgentKind::Oracle));
  EXPECT_THROW(run_benchmark(dup), ConfigError);
  RunConfig sep = base_config("sep", 2);
  sep.agents = {scripted_handle("a__b", AgentKind::Oracle)};
  EXPECT_THROW(run_benchmark(sep), ConfigError);
  RunConfig scenes = base_config("scenes", 2);
  scenes.scenes.push_back(scenes.scenes[0]);
  EXPECT_THROW(run_benchmark(scenes), ConfigError);
  EXPECT_THROW(scripted_handle("h", AgentKind::Human), ConfigError);
}

TEST(AgentHandles, FromJson) {
  const auto r = agent_handle_from_json(Json::parse(R"({"id": "r1", "kind": "Random"})"));
  EXPECT_EQ(r.kind, AgentKind::Random);
  EXPECT_EQ(r.make()->kind(), AgentKind::Random);
  EXPECT_THROW(agent_handle_from_json(Json::parse(R"({"id": "x", "kind": "Psychic"})")), ConfigError);
  EXPECT_THROW(agent_handle_from_json(Json::parse(R"({"id": "h", "kind": "Human"})")), ConfigError);
  EXPECT_THROW(agent_handle_from_json(Json::parse(
                   R"({"id": "m", "kind": "Remote", "endpoint": "http://h/x", "model": "m", "temperature": 0.7})")),
               ConfigError);
  const auto remote = agent_handle_from_json(
      Json::parse(R"({"id": "m", "kind": "Remote", "endpoint": "http://h/x", "model": "m", "retry_budget": 2})"));
  EXPECT_EQ(remote.make()->kind(), AgentKind::Remote);
  SessionRegistry reg;
  const auto human = agent_handle_from_json(Json::parse(R"({"id": "h", "kind": "Human", "session": "desk"})"), &reg);
  EXPECT_NE(reg.find("desk"), nullptr);
  EXPECT_EQ(human.make()->kind(), AgentKind::Human);
}
