#pragma once

// Agent interface shared by the episode loop and every agent kind.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorbench/prompt.hpp"
#include "mirrorbench/render.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

enum class AgentKind : std::uint8_t { Random, Oracle, MirrorConfused, Remote, Human };

inline std::string_view to_string(AgentKind k) {
  switch (k) {
    case AgentKind::Random: return "Random";
    case AgentKind::Oracle: return "Oracle";
    case AgentKind::MirrorConfused: return "MirrorConfused";
    case AgentKind::Remote: return "Remote";
    case AgentKind::Human: return "Human";
  }
  return "";
}

inline std::optional<AgentKind> agent_kind_from_string(std::string_view s) {
  for (auto k : {AgentKind::Random, AgentKind::Oracle, AgentKind::MirrorConfused,
                 AgentKind::Remote, AgentKind::Human}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct EpisodeInfo {
  std::string episode_id;
  std::uint64_t seed = 0;
  Level level = Level::L0;
  int max_steps = 0;
};

// What an agent sees at one step. `frame` is null for agents that declare they
// do not consume frames; `sidecar` is set only for trusted agents.
struct AgentRequest {
  const PromptBundle* prompt = nullptr;
  const Image* frame = nullptr;
  std::span<const Action> action_history;
  std::span<const Image> frame_history;  // earlier frames, when full history is enabled
  int step_index = 0;
  int max_steps = 0;
  const GroundTruth* sidecar = nullptr;
};

// `action` empty means a no-op step; `malformed` marks a reply that could not
// be parsed within the retry budget.
struct AgentDecision {
  std::optional<Action> action;
  bool malformed = false;
};

enum class Outcome : std::uint8_t { Success, StepLimit };

inline std::string_view to_string(Outcome o) { return o == Outcome::Success ? "Success" : "StepLimit"; }

struct EpisodeSummary {
  Outcome outcome = Outcome::StepLimit;
  std::vector<int> distances;
  std::vector<Action> actions;
};

// The text an untrusted agent reads at one step: the task prompt plus step
// counter and recent actions. Never includes ground truth.
inline std::string request_text(const AgentRequest& req) {
  std::string out = req.prompt ? req.prompt->task_text : std::string();
  out += "\n\nStep " + std::to_string(req.step_index + 1) + " of at most " +
         std::to_string(req.max_steps) + ".";
  if (!req.action_history.empty()) {
    out += " Your previous actions (oldest first):";
    for (Action a : req.action_history) {
      out += ' ';
      out += to_token(a);
    }
    out += '.';
  }
  return out;
}

class Agent {
 public:
  virtual ~Agent() = default;

  virtual AgentKind kind() const = 0;
  // Trusted agents receive the ground-truth sidecar.
  virtual bool trusted() const { return false; }
  virtual bool wants_frame() const { return true; }

  virtual void begin_episode(const EpisodeInfo&) {}
  virtual AgentDecision step(const AgentRequest& request) = 0;
  virtual void end_episode(const EpisodeSummary&) {}
};

}  // namespace mirrorbench
