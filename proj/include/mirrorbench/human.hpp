#pragma once

// Human bridge: an Agent whose decisions come from a console session over
// HTTP. The session holds the current step view and at most one pending
// action; the agent blocks on it until the console posts or the step times
// out.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mirrorbench/agent.hpp"
#include "mirrorbench/codec.hpp"
#include "mirrorbench/errors.hpp"
#include "mirrorbench/rng.hpp"

namespace mirrorbench {

enum class SessionStatus : std::uint8_t { Idle, WaitingForHuman, WaitingForSim, Done };

inline std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Idle: return "Idle";
    case SessionStatus::WaitingForHuman: return "WaitingForHuman";
    case SessionStatus::WaitingForSim: return "WaitingForSim";
    case SessionStatus::Done: return "Done";
  }
  return "";
}

enum class PostResult : std::uint8_t { Accepted, Stale, Done, Invalid };

inline std::string_view to_string(PostResult r) {
  switch (r) {
    case PostResult::Accepted: return "accepted";
    case PostResult::Stale: return "stale";
    case PostResult::Done: return "done";
    case PostResult::Invalid: return "invalid";
  }
  return "";
}

struct StepView {
  std::string session_id;
  SessionStatus status = SessionStatus::Idle;
  int step_index = 0;
  int max_steps = 0;
  std::string prompt_text;
  std::string frame_png_base64;
  std::string episode_id;
  std::optional<EpisodeSummary> summary;
};

class HumanSession {
 public:
  explicit HumanSession(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }

  // Claims the session for one episode, waiting while another episode holds it.
  void begin(const std::string& episode_id, int max_steps) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return !active_; });
    active_ = true;
    view_ = StepView{};
    view_.session_id = id_;
    view_.episode_id = episode_id;
    view_.max_steps = max_steps;
    view_.status = SessionStatus::WaitingForSim;
    pending_.reset();
  }

  void publish(int step_index, std::string prompt_text, std::string frame_b64) {
    std::lock_guard lock(mu_);
    view_.step_index = step_index;
    view_.prompt_text = std::move(prompt_text);
    view_.frame_png_base64 = std::move(frame_b64);
    view_.status = SessionStatus::WaitingForHuman;
    pending_.reset();
    cv_.notify_all();
  }

  // Blocks for the console's action on the published step.
  std::optional<Action> await_action(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, timeout, [&] { return pending_.has_value() || cancelled_; });
    return pending_;
  }

  // `step_index` lets the console say which view it acted on; a mismatch or a
  // second post for the same step is stale.
  PostResult post(std::string_view direction, std::optional<int> step_index = std::nullopt) {
    const auto action = action_from_token(direction);
    std::lock_guard lock(mu_);
    if (view_.status == SessionStatus::Done) return PostResult::Done;
    if (!action) return PostResult::Invalid;
    if (view_.status != SessionStatus::WaitingForHuman || pending_) return PostResult::Stale;
    if (step_index && *step_index != view_.step_index) return PostResult::Stale;
    pending_ = action;
    view_.status = SessionStatus::WaitingForSim;
    cv_.notify_all();
    return PostResult::Accepted;
  }

  void finish(const EpisodeSummary& summary) {
    std::lock_guard lock(mu_);
    view_.status = SessionStatus::Done;
    view_.summary = summary;
    active_ = false;
    cv_.notify_all();
  }

  // Releases the session after an aborted episode.
  void abandon() {
    std::lock_guard lock(mu_);
    view_.status = SessionStatus::Done;
    active_ = false;
    cv_.notify_all();
  }

  // Wakes any waiting step with no action; used on service shutdown.
  void cancel() {
    std::lock_guard lock(mu_);
    cancelled_ = true;
    cv_.notify_all();
  }

  StepView view() const {
    std::lock_guard lock(mu_);
    return view_;
  }

 private:
  std::string id_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  bool active_ = false;
  bool cancelled_ = false;
  StepView view_;
  std::optional<Action> pending_;
};

inline nlohmann::json to_json(const StepView& v) {
  nlohmann::json j = {{"session_id", v.session_id},
                      {"status", std::string(to_string(v.status))},
                      {"step_index", v.step_index},
                      {"max_steps", v.max_steps},
                      {"prompt_text", v.prompt_text},
                      {"frame_png_base64", v.frame_png_base64},
                      {"episode_id", v.episode_id}};
  if (v.summary) {
    nlohmann::json actions = nlohmann::json::array();
    for (Action a : v.summary->actions) actions.push_back(std::string(to_token(a)));
    j["summary"] = {{"outcome", std::string(to_string(v.summary->outcome))},
                    {"distances", v.summary->distances},
                    {"actions", std::move(actions)}};
  }
  return j;
}

class SessionRegistry {
 public:
  std::shared_ptr<HumanSession> create(std::string id = {}) {
    std::lock_guard lock(mu_);
    if (id.empty()) {
      do {
        id = "s" + std::to_string(splitmix64(++counter_ ^ salt_) % 1'000'000'000ULL);
      } while (sessions_.count(id));
    }
    auto& slot = sessions_[id];
    if (!slot) slot = std::make_shared<HumanSession>(id);
    return slot;
  }

  std::vector<std::shared_ptr<HumanSession>> all() const {
    std::lock_guard lock(mu_);
    std::vector<std::shared_ptr<HumanSession>> out;
    for (const auto& [id, s] : sessions_) out.push_back(s);
    return out;
  }

  std::shared_ptr<HumanSession> find(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<HumanSession>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_ = static_cast<std::uint64_t>(
      std::chrono::steady_clock::now().time_since_epoch().count());
};

class HumanAgent final : public Agent {
 public:
  HumanAgent(std::shared_ptr<HumanSession> session, std::chrono::milliseconds step_timeout)
      : session_(std::move(session)), timeout_(step_timeout) {}

  ~HumanAgent() override {
    if (claimed_) session_->abandon();
  }

  AgentKind kind() const override { return AgentKind::Human; }

  void begin_episode(const EpisodeInfo& info) override {
    session_->begin(info.episode_id, info.max_steps);
    claimed_ = true;
  }

  AgentDecision step(const AgentRequest& request) override {
    std::string text = request.prompt ? request.prompt->system_text + "\n\n" : std::string();
    text += request_text(request);
    session_->publish(request.step_index, std::move(text),
                      request.frame ? base64_encode(encode_png(*request.frame)) : std::string());
    const auto action = session_->await_action(timeout_);
    if (!action) {
      throw AgentTimeout("no console input for session " + session_->id() + " at step " +
                         std::to_string(request.step_index));
    }
    return {action, false};
  }

  void end_episode(const EpisodeSummary& summary) override {
    session_->finish(summary);
    claimed_ = false;
  }

 private:
  std::shared_ptr<HumanSession> session_;
  std::chrono::milliseconds timeout_;
  bool claimed_ = false;
};

}  // namespace mirrorbench
