#include <gtest/gtest.h>

#include "mirrorbench/report.hpp"

using namespace mirrorbench;

namespace {

EpisodeRecord rec(const std::string& agent, const std::string& scene, Setting setting, Level level,
                  std::vector<int> distances) {
  EpisodeRecord r;
  r.agent_id = agent;
  r.scene_id = scene;
  r.setting = setting;
  r.level = level;
  r.episode_id = episode_id_for(agent, scene, level);
  r.trajectory.distances = distances;
  r.metrics = compute_metrics(distances, 1);
  return r;
}

// "good" solves everything; "fading" succeeds at L0 only; "flat" never moves.
std::vector<EpisodeRecord> sample() {
  std::vector<EpisodeRecord> out;
  for (Level l : kAllLevels) {
    for (auto [scene, setting] : {std::pair{"h1", Setting::Human}, std::pair{"r1", Setting::Robot}}) {
      out.push_back(rec("good", scene, setting, l, {3, 2, 1}));
      out.push_back(rec("fading", scene, setting, l,
                        l == Level::L0 ? std::vector<int>{3, 2, 1} : std::vector<int>{3, 4, 5}));
      out.push_back(rec("flat", scene, setting, l, {3, 3, 3}));
    }
  }
  return out;
}

}  // namespace

TEST(Report, TablesAndOrdering) {
  const Report rep = make_report(sample());
  EXPECT_EQ(rep.episodes, 24u);
  ASSERT_EQ(rep.per_level.size(), 4u);
  std::vector<std::string> order;
  for (const auto& r : rep.averaged.rows) order.push_back(r.agent_id);
  EXPECT_EQ(order, (std::vector<std::string>{"good", "fading", "flat"}));
  for (const auto& t : rep.per_level) {
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows[0].agent_id, "good");
  }
  const ReportRow* good = rep.per_level[2].row("good");
  EXPECT_EQ(good->groups.at(SettingGroup::Overall), (MetricSet{1, 1, 1, 1}));
  EXPECT_EQ(good->episodes.at(SettingGroup::Overall), 2u);
  EXPECT_DOUBLE_EQ(rep.averaged.row("fading")->groups.at(SettingGroup::Human).tsr, 0.25);
}

TEST(Report, StabilityRanking) {
  const Report rep = make_report(sample());
  ASSERT_EQ(rep.stability.size(), 3u);
  EXPECT_EQ(rep.stability[0].agent_id, "fading");
  EXPECT_DOUBLE_EQ(rep.stability[0].cs, 1.0);
  EXPECT_DOUBLE_EQ(rep.stability[1].cs, 0.0);
  EXPECT_EQ(rep.stability[0].scenes, 2u);
  EXPECT_TRUE(make_report(sample(), {Level::L0, Level::L1}).stability.empty());
}

TEST(Report, LevelFilterAndInvalidExcluded) {
  auto records = sample();
  EpisodeRecord bad = rec("good", "x", Setting::Human, Level::L0, {3, 4});
  bad.valid = false;
  bad.metrics.reset();
  records.push_back(bad);
  const Report rep = make_report(records, {Level::L0});
  EXPECT_EQ(rep.per_level.size(), 1u);
  EXPECT_EQ(rep.episodes, 6u);
  EXPECT_EQ(rep.invalid, 1u);
  EXPECT_NE(report_markdown(rep).find("Invalid episodes excluded: 1."), std::string::npos);
  // Both good and fading solve L0: tie broken by name.
  EXPECT_EQ(rep.averaged.rows[0].agent_id, "fading");
}

TEST(Report, Csv) {
  const std::string csv = report_csv(make_report(sample()));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "agent,level,setting,TSR,SIR,FCR,PCR,AVG,episodes");
  EXPECT_NE(csv.find("good,L0,Human,1.000,1.000,1.000,1.000,1.000,1\n"), std::string::npos);
  EXPECT_NE(csv.find("fading,AVG,Overall,0.250,"), std::string::npos);
  EXPECT_NE(csv.find("flat,L3,Robot,0.000,0.000,0.000,0.000,0.000,1\n"), std::string::npos);
  // 3 agents x 3 groups x (4 levels + average) + header
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 46);
}

TEST(Report, MarkdownAndJson) {
  const Report rep = make_report(sample());
  const std::string md = report_markdown(rep);
  for (const char* h : {"## Level 0", "## Level 3", "## Average over levels L0 L1 L2 L3",
                        "## Cognitive Stability ranking", "| Human TSR |", "| 1 | fading | 1.000 | 2 |"}) {
    EXPECT_NE(md.find(h), std::string::npos) << h;
  }
  const Json j = report_json(rep);
  EXPECT_EQ(j["per_level"].size(), 4u);
  EXPECT_EQ(j["averaged"]["level"], "AVG");
  EXPECT_EQ(j["averaged"]["rows"][0]["agent"], "good");
  EXPECT_EQ(j["averaged"]["rows"][0]["groups"]["Overall"]["avg"], 1.0);
  EXPECT_EQ(j["stability"][0]["agent"], "fading");
}

TEST(Report, EmptyInput) {
  const Report rep = make_report({});
  EXPECT_TRUE(rep.averaged.rows.empty());
  EXPECT_NE(report_markdown(rep).find("Episodes aggregated: 0."), std::string::npos);
}
