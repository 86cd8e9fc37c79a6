#include <gtest/gtest.h>

#include <thread>

#include "mirrorbench/human.hpp"
#include "mirrorbench/protocol.hpp"
#include "test_util.hpp"

using namespace mirrorbench;
using Json = nlohmann::json;
using namespace std::chrono_literals;

TEST(HumanSession, PostStates) {
  HumanSession s("a");
  EXPECT_EQ(s.post("+X"), PostResult::Stale);  // nothing published yet
  s.begin("ep", 10);
  EXPECT_EQ(s.view().status, SessionStatus::WaitingForSim);
  s.publish(0, "text", "");
  EXPECT_EQ(s.view().status, SessionStatus::WaitingForHuman);
  EXPECT_EQ(s.post("+W"), PostResult::Invalid);
  EXPECT_EQ(s.post("+X", 3), PostResult::Stale);
  EXPECT_EQ(s.post("-Y", 0), PostResult::Accepted);
  EXPECT_EQ(s.post("-Y", 0), PostResult::Stale);
  EXPECT_EQ(s.await_action(1ms), Action::NegY);
  s.finish({Outcome::Success, {3, 2, 1}, {Action::NegY}});
  EXPECT_EQ(s.post("+X"), PostResult::Done);
  const StepView v = s.view();
  EXPECT_EQ(v.status, SessionStatus::Done);
  ASSERT_TRUE(v.summary);
  const Json j = to_json(v);
  EXPECT_EQ(j["summary"]["outcome"], "Success");
  EXPECT_EQ(j["summary"]["actions"][0], "-Y");
}

TEST(HumanSession, AwaitTimesOutAndCancelWakes) {
  HumanSession s("b");
  s.begin("ep", 5);
  s.publish(0, "t", "");
  EXPECT_FALSE(s.await_action(5ms));
  std::thread t([&] {
    std::this_thread::sleep_for(20ms);
    s.cancel();
  });
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_FALSE(s.await_action(10s));
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 5s);
  t.join();
}

TEST(SessionRegistry, CreateAndFind) {
  SessionRegistry reg;
  auto a = reg.create("alice");
  EXPECT_EQ(reg.create("alice"), a);
  auto b = reg.create();
  EXPECT_NE(b->id(), "alice");
  EXPECT_EQ(reg.find(b->id()), b);
  EXPECT_EQ(reg.find("nobody"), nullptr);
  EXPECT_EQ(reg.all().size(), 2u);
}

TEST(HumanAgent, DrivesAnEpisodeFromTheConsole) {
  const SceneSpec s = testutil::scene_with({0, 0, 9}, {0, 0, 5});
  auto session = std::make_shared<HumanSession>("h");
  EpisodeConfig cfg;
  cfg.render.width = 96;
  cfg.render.height = 72;

  std::thread console([&] {
    int answered = -1;
    while (true) {
      const StepView v = session->view();
      if (v.status == SessionStatus::Done) return;
      if (v.status == SessionStatus::WaitingForHuman && v.step_index > answered) {
        EXPECT_FALSE(v.frame_png_base64.empty());
        EXPECT_EQ(decode_png(base64_decode(v.frame_png_base64)).width, 96);
        EXPECT_NE(v.prompt_text.find("Step " + std::to_string(v.step_index + 1)), std::string::npos);
        EXPECT_EQ(session->post("-Z", v.step_index), PostResult::Accepted);
        answered = v.step_index;
      }
      std::this_thread::sleep_for(1ms);
    }
  });
  HumanAgent agent(session, 5s);
  const EpisodeRecord r = run_episode(s, Level::L1, agent, "human", cfg);
  console.join();
  EXPECT_EQ(r.trajectory.distances, (std::vector<int>{4, 3, 2, 1}));
  EXPECT_EQ(session->view().summary->outcome, Outcome::Success);
}

TEST(HumanAgent, TimeoutMakesInvalidRecord) {
  const SceneSpec s = testutil::scene_with({0, 0, 9}, {0, 0, 5});
  auto session = std::make_shared<HumanSession>("t");
  EpisodeConfig cfg;
  cfg.render.width = 64;
  cfg.render.height = 48;
  const EpisodeRecord r = [&] {
    HumanAgent agent(session, 10ms);
    return run_episode_isolated(s, Level::L0, agent, "human", cfg);
  }();
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.error_kind, "AgentTimeout");
  // The abandoned session can be claimed again.
  EXPECT_EQ(session->view().status, SessionStatus::Done);
  HumanAgent again(session, 10ms);
  again.begin_episode({"next", 0, Level::L0, 5});
  EXPECT_EQ(session->view().episode_id, "next");
}
