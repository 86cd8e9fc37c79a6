#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "mirrorbench/scene.hpp"
#include "test_util.hpp"

using namespace mirrorbench;

TEST(Action, SixUnitMoves) {
  EXPECT_EQ(kAllActions.size(), 6u);
  std::set<std::tuple<int, int, int>> seen;
  for (Action a : kAllActions) {
    const Vec3i u = unit_vector(a);
    EXPECT_EQ(std::abs(u.x) + std::abs(u.y) + std::abs(u.z), 1);
    seen.insert({u.x, u.y, u.z});
    EXPECT_EQ(unit_vector(inverse(a)), (Vec3i{-u.x, -u.y, -u.z}));
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Action, TokensRoundTrip) {
  for (Action a : kAllActions) EXPECT_EQ(action_from_token(to_token(a)), a);
  EXPECT_FALSE(action_from_token("+W").has_value());
  EXPECT_FALSE(action_from_token("").has_value());
}

TEST(Manhattan, Examples) {
  EXPECT_EQ(manhattan_distance({0, 0, 0}, {1, 2, 3}), 6);
  EXPECT_EQ(manhattan_distance({5, 5, 5}, {5, 5, 5}), 0);
  EXPECT_EQ(manhattan_distance({-1, 0, 2}, {2, 0, -2}), 7);
}

TEST(ApplyAction, UnitDisplacement) {
  SceneSpec s = testutil::scene_with({0, 0, 0}, {0, 1, 5});
  SceneState st = SceneState::initial(s);
  const StepResult r = apply_action(st, Action::PosX);
  EXPECT_EQ(r.state.hand_pos, (Vec3i{1, 0, 0}));
  EXPECT_EQ(r.outcome, MoveOutcome::Moved);
  EXPECT_EQ(r.state.step_index, 1);
}

TEST(ApplyAction, ClampsAtBound) {
  SceneSpec s = testutil::scene();
  s.hand_init = {s.workspace.max.x, 4, 4};
  const SceneState st = SceneState::initial(s);
  const StepResult r = apply_action(st, Action::PosX);
  EXPECT_EQ(r.state.hand_pos, st.hand_pos);
  EXPECT_EQ(r.outcome, MoveOutcome::ClampedAtBound);
  EXPECT_EQ(r.state.step_index, 1);
}

TEST(ApplyAction, InverseRestores) {
  const SceneSpec& s = testutil::scene();
  const SceneState st = SceneState::initial(s);
  const auto a = apply_action(st, Action::PosX);
  const auto b = apply_action(a.state, Action::NegX);
  EXPECT_EQ(b.state.hand_pos, st.hand_pos);
}

TEST(ApplyAction, PropertiesOverRandomWalks) {
  const SceneSpec& s = testutil::scene();
  std::mt19937_64 rng(11);
  SceneState st = SceneState::initial(s);
  for (int i = 0; i < 20000; ++i) {
    const Action a = kAllActions[rng() % 6];
    const auto r = apply_action(st, a);
    EXPECT_LE(std::abs(r.state.distance() - st.distance()), 1);
    EXPECT_TRUE(s.workspace.contains(r.state.hand_pos));
    if (r.outcome == MoveOutcome::Moved) {
      const auto back = apply_action(r.state, inverse(a));
      if (back.outcome == MoveOutcome::Moved) {
        EXPECT_EQ(back.state.hand_pos, st.hand_pos);
      }
    }
    st = r.state;
  }
}

TEST(Facing, QuarterTurns) {
  EXPECT_EQ(rotate_to_world(Vec3i{0, 1, 0}, Facing::PosY), (Vec3i{0, 1, 0}));
  EXPECT_EQ(rotate_to_world(Vec3i{0, 1, 0}, Facing::NegX), (Vec3i{-1, 0, 0}));
  EXPECT_EQ(rotate_to_world(Vec3i{0, 1, 0}, Facing::NegY), (Vec3i{0, -1, 0}));
  EXPECT_EQ(rotate_to_world(Vec3i{0, 1, 0}, Facing::PosX), (Vec3i{1, 0, 0}));
  for (Facing f : {Facing::PosY, Facing::NegX, Facing::NegY, Facing::PosX}) {
    EXPECT_EQ(rotate_to_world(Vec3i{0, 0, 3}, f), (Vec3i{0, 0, 3}));
    EXPECT_EQ(facing_from_string(to_string(f)), f);
  }
}
