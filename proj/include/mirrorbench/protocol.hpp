#pragma once

// The episode loop: prompt construction, scene initialisation, the
// observe-act cycle and termination, with the distance trajectory recorded at
// every step.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mirrorbench/agent.hpp"
#include "mirrorbench/errors.hpp"
#include "mirrorbench/metrics.hpp"
#include "mirrorbench/prompt.hpp"
#include "mirrorbench/render.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

struct EpisodeConfig {
  int d_th = 1;
  int step_buffer = 10;
  bool frame_dump = false;
  std::uint64_t seed = 0;
  std::chrono::milliseconds step_timeout{120'000};
  int history_window = 10;       // past actions listed to the agent
  bool full_frame_history = false;
  RenderConfig render;
};

struct Trajectory {
  std::vector<int> distances;  // d_0 .. d_T
  std::vector<std::optional<Action>> actions;  // one per step; empty for no-op steps
  std::vector<bool> clamp_flags;
  std::vector<bool> malformed_flags;
  Outcome outcome = Outcome::StepLimit;

  int steps_taken() const { return static_cast<int>(distances.size()) - 1; }
};

struct EpisodeRecord {
  std::string episode_id;
  std::string scene_id;
  Setting setting = Setting::Human;
  Level level = Level::L0;
  std::string agent_id;
  AgentKind agent_kind = AgentKind::Random;
  int d_th = 1;
  int max_steps = 0;
  std::uint64_t seed = 0;
  Trajectory trajectory;
  std::optional<MetricSet> metrics;
  bool valid = true;
  std::string error_kind;
  std::string error_message;
  std::string started_at;
  std::string finished_at;
};

inline int max_steps_for(const SceneSpec& spec, const EpisodeConfig& cfg) {
  return manhattan_distance(spec.hand_init, spec.mark_anchor) + cfg.step_buffer;
}

inline std::string episode_id_for(const std::string& agent_id, const std::string& scene_id,
                                  Level level) {
  return agent_id + "__" + scene_id + "__L" + std::to_string(to_int(level));
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Receives every observation rendered during an episode (for frame dumping).
using FrameSink = std::function<void(const std::string& episode_id, const Observation&)>;

namespace detail {

inline EpisodeRecord new_record(const SceneSpec& spec, Level level, const Agent& agent,
                                const std::string& agent_id, const EpisodeConfig& cfg) {
  if (cfg.d_th < 1) throw ConfigError("d_th must be at least 1");
  if (manhattan_distance(spec.hand_init, spec.mark_anchor) <= cfg.d_th) {
    throw ConfigError("scene '" + spec.scene_id + "' starts within the success threshold");
  }
  EpisodeRecord rec;
  rec.episode_id = episode_id_for(agent_id, spec.scene_id, level);
  rec.scene_id = spec.scene_id;
  rec.setting = spec.setting();
  rec.level = level;
  rec.agent_id = agent_id;
  rec.agent_kind = agent.kind();
  rec.d_th = cfg.d_th;
  rec.max_steps = max_steps_for(spec, cfg);
  rec.seed = cfg.seed;
  rec.started_at = utc_timestamp();
  return rec;
}

inline void episode_loop(const SceneSpec& spec, Level level, Agent& agent, const EpisodeConfig& cfg,
                         const PromptTemplates& templates, const FrameSink& sink,
                         EpisodeRecord& rec) {
  const PromptBundle prompt = build_prompt(level, spec, templates);
  const bool need_frames = agent.wants_frame() || cfg.frame_dump || static_cast<bool>(sink);

  SceneState state = SceneState::initial(spec);
  Trajectory& traj = rec.trajectory;
  traj.distances.push_back(state.distance());

  auto observe = [&]() {
    Observation obs;
    if (need_frames) {
      obs = render(state, cfg.render);
      if (sink) sink(rec.episode_id, obs);
    } else {
      obs.step_index = state.step_index;
      obs.sidecar = {state.hand_pos, spec.mark_anchor, spec.mirror, state.distance()};
    }
    return obs;
  };

  agent.begin_episode({rec.episode_id, cfg.seed, level, rec.max_steps});
  Observation obs = observe();
  std::vector<Image> history_frames;
  std::vector<Action> executed;

  while (true) {
    if (traj.distances.back() <= cfg.d_th) {
      traj.outcome = Outcome::Success;
      break;
    }
    if (state.step_index >= rec.max_steps) {
      traj.outcome = Outcome::StepLimit;
      break;
    }

    AgentRequest req;
    req.prompt = &prompt;
    req.frame = agent.wants_frame() ? &obs.frame : nullptr;
    const std::size_t n = executed.size();
    const std::size_t window = static_cast<std::size_t>(std::max(0, cfg.history_window));
    req.action_history = std::span<const Action>(executed).subspan(n > window ? n - window : 0);
    if (cfg.full_frame_history && agent.wants_frame()) req.frame_history = history_frames;
    req.step_index = state.step_index;
    req.max_steps = rec.max_steps;
    req.sidecar = agent.trusted() ? &obs.sidecar : nullptr;

    const auto t0 = std::chrono::steady_clock::now();
    const AgentDecision decision = agent.step(req);
    if (std::chrono::steady_clock::now() - t0 > cfg.step_timeout) {
      throw AgentTimeout("agent exceeded the per-step budget at step " +
                         std::to_string(state.step_index));
    }

    if (cfg.full_frame_history && agent.wants_frame()) history_frames.push_back(obs.frame);

    if (decision.action) {
      const StepResult r = apply_action(state, *decision.action);
      state = r.state;
      executed.push_back(*decision.action);
      traj.clamp_flags.push_back(r.outcome == MoveOutcome::ClampedAtBound);
      traj.malformed_flags.push_back(false);
    } else {
      ++state.step_index;
      traj.clamp_flags.push_back(false);
      traj.malformed_flags.push_back(decision.malformed);
    }
    traj.actions.push_back(decision.action);
    traj.distances.push_back(state.distance());
    obs = observe();
  }

  rec.finished_at = utc_timestamp();
  rec.metrics = compute_metrics(traj.distances, cfg.d_th);
  agent.end_episode({traj.outcome, traj.distances, executed});
}

}  // namespace detail

// Runs one episode. Agent errors propagate to the caller.
inline EpisodeRecord run_episode(const SceneSpec& spec, Level level, Agent& agent,
                                 const std::string& agent_id, const EpisodeConfig& cfg,
                                 const PromptTemplates& templates = PromptTemplates::defaults(),
                                 const FrameSink& sink = {}) {
  EpisodeRecord rec = detail::new_record(spec, level, agent, agent_id, cfg);
  detail::episode_loop(spec, level, agent, cfg, templates, sink, rec);
  return rec;
}

// As run_episode, but an AgentError yields an invalid record holding the
// trajectory up to the failing step.
inline EpisodeRecord run_episode_isolated(const SceneSpec& spec, Level level, Agent& agent,
                                          const std::string& agent_id, const EpisodeConfig& cfg,
                                          const PromptTemplates& templates = PromptTemplates::defaults(),
                                          const FrameSink& sink = {}) {
  EpisodeRecord rec = detail::new_record(spec, level, agent, agent_id, cfg);
  try {
    detail::episode_loop(spec, level, agent, cfg, templates, sink, rec);
  } catch (const AgentError& e) {
    rec.valid = false;
    rec.metrics.reset();
    rec.error_kind = e.kind();
    rec.error_message = e.what();
    rec.finished_at = utc_timestamp();
  }
  return rec;
}

}  // namespace mirrorbench
