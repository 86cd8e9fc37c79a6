#pragma once

// Scripted reference agents: Random, Oracle and Mirror-Confused.

#include <cstdlib>
#include <memory>

#include "mirrorbench/agent.hpp"
#include "mirrorbench/reflection.hpp"
#include "mirrorbench/rng.hpp"

namespace mirrorbench {

// Uniform over the six actions; ignores the request entirely.
inline Action random_agent_step(const AgentRequest& /*request*/, Rng& rng) {
  return kAllActions[static_cast<std::size_t>(uniform_int(rng, 0, 5))];
}

// One greedy Manhattan-descent move from `hand` toward `target`: the axis with
// the largest absolute delta, ties broken X, then Y, then Z. At the target the
// move is +X, so an agent parked on its target oscillates.
inline Action greedy_step(Vec3i hand, Vec3i target) {
  const Vec3i d = target - hand;
  Axis best = Axis::X;
  for (Axis a : {Axis::Y, Axis::Z}) {
    if (std::abs(d[a]) > std::abs(d[best])) best = a;
  }
  if (d[best] == 0) return Action::PosX;
  return action_along(best, d[best] > 0);
}

inline Action oracle_agent_step(const AgentRequest& request) {
  const GroundTruth& gt = *request.sidecar;
  return greedy_step(gt.hand_pos, gt.mark_anchor);
}

// Descends toward the mark's mirror image instead of the mark itself.
inline Action mirror_confused_step(const AgentRequest& request) {
  const GroundTruth& gt = *request.sidecar;
  return greedy_step(gt.hand_pos, reflect_point(gt.mark_anchor, gt.mirror));
}

class RandomAgent final : public Agent {
 public:
  AgentKind kind() const override { return AgentKind::Random; }
  bool wants_frame() const override { return false; }
  void begin_episode(const EpisodeInfo& info) override { rng_.seed(info.seed); }
  AgentDecision step(const AgentRequest& request) override {
    return {random_agent_step(request, rng_), false};
  }

 private:
  Rng rng_;
};

class OracleAgent final : public Agent {
 public:
  AgentKind kind() const override { return AgentKind::Oracle; }
  bool trusted() const override { return true; }
  bool wants_frame() const override { return false; }
  AgentDecision step(const AgentRequest& request) override {
    if (!request.sidecar) throw AgentProtocolFailure("oracle agent requires the ground-truth sidecar");
    return {oracle_agent_step(request), false};
  }
};

class MirrorConfusedAgent final : public Agent {
 public:
  AgentKind kind() const override { return AgentKind::MirrorConfused; }
  bool trusted() const override { return true; }
  bool wants_frame() const override { return false; }
  AgentDecision step(const AgentRequest& request) override {
    if (!request.sidecar) {
      throw AgentProtocolFailure("mirror-confused agent requires the ground-truth sidecar");
    }
    return {mirror_confused_step(request), false};
  }
};

}  // namespace mirrorbench
