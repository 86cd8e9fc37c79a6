#pragma once

// Adapter for remote multimodal chat models.
//
// Reply grammar: reasoning sections (<think>...</think>,
// <reasoning>...</reasoning>) are removed first. If the remainder contains
// "Action:" (any case), only the text after the last such marker is searched.
// The action is the first token of the form <sign><axis> where sign is '+',
// '-', U+2212 or U+2013, axis is x/y/z in either case, and the next character
// is not alphanumeric. No token means the reply is malformed.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "mirrorbench/agent.hpp"
#include "mirrorbench/codec.hpp"
#include "mirrorbench/errors.hpp"

namespace mirrorbench {

namespace detail {

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Removes <tag>...</tag> spans; an unclosed tag swallows the rest.
inline std::string strip_sections(std::string text, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  while (true) {
    const std::string lower = ascii_lower(text);
    const auto a = lower.find(open);
    if (a == std::string::npos) break;
    const auto b = lower.find(close, a + open.size());
    if (b == std::string::npos) {
      text.erase(a);
      break;
    }
    text.erase(a, b + close.size() - a);
  }
  return text;
}

inline bool is_alnum_ascii(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace detail

inline std::optional<Action> parse_action(std::string_view reply) {
  std::string text = detail::strip_sections(std::string(reply), "think");
  text = detail::strip_sections(std::move(text), "reasoning");

  const std::string lower = detail::ascii_lower(text);
  const auto marker = lower.rfind("action:");
  std::string_view s(lower);
  if (marker != std::string::npos) s.remove_prefix(marker + 7);

  for (std::size_t i = 0; i < s.size(); ++i) {
    bool positive;
    std::size_t width;
    if (s[i] == '+') {
      positive = true, width = 1;
    } else if (s[i] == '-') {
      positive = false, width = 1;
    } else if (s.substr(i, 3) == "\xE2\x88\x92" || s.substr(i, 3) == "\xE2\x80\x93") {
      positive = false, width = 3;
    } else {
      continue;
    }
    const std::size_t j = i + width;
    if (j >= s.size()) break;
    const char c = s[j];
    if (c != 'x' && c != 'y' && c != 'z') continue;
    if (j + 1 < s.size() && detail::is_alnum_ascii(s[j + 1])) continue;
    const Axis axis = c == 'x' ? Axis::X : (c == 'y' ? Axis::Y : Axis::Z);
    return action_along(axis, positive);
  }
  return std::nullopt;
}

struct RemoteConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8000/v1/chat/completions
  std::string model;
  std::string credential_env;  // environment variable holding the API key
  int retry_budget = 3;        // replies allowed per step before a no-op
  double rate_limit_per_minute = 60;
  bool abort_on_malformed = false;
  int transport_retries = 2;
  std::chrono::milliseconds request_timeout{120'000};

  // Fixed; there is deliberately no setter.
  static constexpr double temperature() { return 0.0; }
};

// Blocking token bucket; one instance is shared by every episode that uses the
// same remote configuration.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  explicit TokenBucket(double per_minute, double burst = 0)
      : rate_per_sec_(per_minute / 60.0),
        capacity_(burst > 0 ? burst : std::max(1.0, per_minute / 60.0)),
        tokens_(capacity_),
        last_(Clock::now()) {
    if (per_minute <= 0) throw ConfigError("rate limit must be positive");
  }

  void acquire() {
    std::unique_lock lock(mu_);
    while (true) {
      refill();
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      const double wait_s = (1.0 - tokens_) / rate_per_sec_;
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
      lock.lock();
    }
  }

  bool try_acquire() {
    std::lock_guard lock(mu_);
    refill();
    if (tokens_ < 1.0) return false;
    tokens_ -= 1.0;
    return true;
  }

 private:
  void refill() {
    const auto now = Clock::now();
    const double dt = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(capacity_, tokens_ + dt * rate_per_sec_);
  }

  std::mutex mu_;
  double rate_per_sec_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
};

struct ChatMessage {
  std::string role;
  std::string text;
  std::string image;  // base64 PNG, may be empty
};

inline nlohmann::json chat_payload(const std::string& model, const std::vector<ChatMessage>& msgs) {
  nlohmann::json j;
  j["model"] = model;
  j["temperature"] = RemoteConfig::temperature();
  j["messages"] = nlohmann::json::array();
  for (const auto& m : msgs) {
    nlohmann::json e = {{"role", m.role}, {"text", m.text}};
    if (!m.image.empty()) e["image"] = m.image;
    j["messages"].push_back(std::move(e));
  }
  return j;
}

// Conversation for one step. Built only from the prompt, frames and action
// history; the request's sidecar is never read.
inline std::vector<ChatMessage> initial_messages(const AgentRequest& req) {
  std::vector<ChatMessage> msgs;
  if (req.prompt) msgs.push_back({"system", req.prompt->system_text, {}});
  for (std::size_t i = 0; i < req.frame_history.size(); ++i) {
    msgs.push_back({"user", "Earlier observation " + std::to_string(i + 1) + ".",
                    base64_encode(encode_png(req.frame_history[i]))});
  }
  msgs.push_back({"user", request_text(req),
                  req.frame ? base64_encode(encode_png(*req.frame)) : std::string()});
  return msgs;
}

inline std::string reply_text(const nlohmann::json& body) {
  if (body.contains("choices") && body["choices"].is_array() && !body["choices"].empty()) {
    const auto& msg = body["choices"][0].value("message", nlohmann::json::object());
    if (msg.contains("content") && msg["content"].is_string()) return msg["content"];
    if (msg.contains("text") && msg["text"].is_string()) return msg["text"];
  }
  if (body.contains("text") && body["text"].is_string()) return body["text"];
  if (body.contains("content") && body["content"].is_string()) return body["content"];
  throw TransportError("reply body has no message text");
}

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

inline Endpoint split_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint must include a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

class RemoteAgent final : public Agent {
 public:
  RemoteAgent(RemoteConfig cfg, std::shared_ptr<TokenBucket> bucket)
      : cfg_(std::move(cfg)), bucket_(std::move(bucket)) {
    if (cfg_.retry_budget < 1) throw ConfigError("retry budget must be at least 1");
    if (!bucket_) bucket_ = std::make_shared<TokenBucket>(cfg_.rate_limit_per_minute);
    endpoint_ = split_endpoint(cfg_.endpoint);
  }

  AgentKind kind() const override { return AgentKind::Remote; }

  AgentDecision step(const AgentRequest& request) override {
    std::vector<ChatMessage> msgs = initial_messages(request);
    const std::string reminder = request.prompt ? request.prompt->format_reminder : std::string();
    for (int attempt = 0; attempt < cfg_.retry_budget; ++attempt) {
      const std::string reply = send(msgs);
      if (auto a = parse_action(reply)) return {a, false};
      msgs.push_back({"assistant", reply, {}});
      msgs.push_back({"user", reminder, {}});
    }
    if (cfg_.abort_on_malformed) {
      throw AgentProtocolFailure("no valid action after " + std::to_string(cfg_.retry_budget) +
                                 " replies");
    }
    return {std::nullopt, true};
  }

  // Number of HTTP requests issued so far.
  int requests_sent() const { return requests_; }

 private:
  std::string send(const std::vector<ChatMessage>& msgs) {
    const std::string body = chat_payload(cfg_.model, msgs).dump();
    httplib::Headers headers;
    if (!cfg_.credential_env.empty()) {
      const char* key = std::getenv(cfg_.credential_env.c_str());
      if (!key || !*key) throw TransportError("credential variable " + cfg_.credential_env + " is unset");
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    std::string last_error;
    for (int t = 0; t <= cfg_.transport_retries; ++t) {
      if (t > 0) std::this_thread::sleep_for(std::chrono::milliseconds(200 << t));
      bucket_->acquire();
      ++requests_;
      httplib::Client cli(endpoint_.base);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.request_timeout).count();
      cli.set_read_timeout(static_cast<time_t>(secs), 0);
      cli.set_write_timeout(static_cast<time_t>(secs), 0);
      auto res = cli.Post(endpoint_.path, headers, body, "application/json");
      if (!res) {
        last_error = "request failed: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 401 || res->status == 403) {
        throw TransportError("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
      }
      if (res->status == 429 || res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200) throw TransportError("HTTP " + std::to_string(res->status));
      try {
        return reply_text(nlohmann::json::parse(res->body));
      } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("reply is not JSON: ") + e.what());
      }
    }
    throw TransportError(last_error);
  }

  RemoteConfig cfg_;
  std::shared_ptr<TokenBucket> bucket_;
  Endpoint endpoint_;
  int requests_ = 0;
};

}  // namespace mirrorbench
