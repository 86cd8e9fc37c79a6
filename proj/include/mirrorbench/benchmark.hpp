#pragma once

// Run orchestration: every (agent, scene, level) cell becomes one episode.
// Episodes run on a bounded worker pool; records are appended to
// runs/<run_id>/episodes.jsonl in cell order, so the file is the same no
// matter how the pool interleaves. Cells already present in the file are
// skipped, which makes a rerun with the same run id a resume.

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "mirrorbench/agents.hpp"
#include "mirrorbench/codec.hpp"
#include "mirrorbench/human.hpp"
#include "mirrorbench/protocol.hpp"
#include "mirrorbench/remote.hpp"
#include "mirrorbench/rng.hpp"
#include "mirrorbench/serialization.hpp"

namespace mirrorbench {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct AgentHandle {
  std::string agent_id;
  AgentKind kind = AgentKind::Random;
  Json config = Json::object();  // kind-specific parameters, recorded in the manifest
  std::function<std::unique_ptr<Agent>()> make;
};

inline AgentHandle scripted_handle(const std::string& id, AgentKind kind) {
  AgentHandle h{id, kind, Json::object(), {}};
  switch (kind) {
    case AgentKind::Random: h.make = [] { return std::make_unique<RandomAgent>(); }; break;
    case AgentKind::Oracle: h.make = [] { return std::make_unique<OracleAgent>(); }; break;
    case AgentKind::MirrorConfused:
      h.make = [] { return std::make_unique<MirrorConfusedAgent>(); };
      break;
    default: throw ConfigError("agent kind " + std::string(to_string(kind)) + " is not scripted");
  }
  return h;
}

inline RemoteConfig remote_config_from_json(const Json& j) {
  RemoteConfig c;
  c.endpoint = detail::get_field<std::string>(j, "endpoint");
  c.model = detail::get_field<std::string>(j, "model");
  c.credential_env = j.value("credential_env", std::string());
  c.retry_budget = j.value("retry_budget", c.retry_budget);
  c.rate_limit_per_minute = j.value("rate_limit_per_minute", c.rate_limit_per_minute);
  c.abort_on_malformed = j.value("abort_on_malformed", c.abort_on_malformed);
  c.transport_retries = j.value("transport_retries", c.transport_retries);
  if (j.contains("temperature") && j.at("temperature").get<double>() != 0.0) {
    throw ConfigError("remote temperature is fixed at 0");
  }
  return c;
}

// {"id", "kind", ...kind-specific keys}. Human agents attach to the session
// named by "session" (default: the agent id) in `sessions`.
inline AgentHandle agent_handle_from_json(const Json& j, SessionRegistry* sessions = nullptr,
                                          std::chrono::milliseconds step_timeout = std::chrono::minutes(2)) {
  const auto id = detail::get_field<std::string>(j, "id");
  const auto kind = agent_kind_from_string(detail::get_field<std::string>(j, "kind"));
  if (!kind) throw ConfigError("agent '" + id + "' has an unknown kind");
  if (*kind == AgentKind::Remote) {
    const RemoteConfig rc = remote_config_from_json(j);
    auto bucket = std::make_shared<TokenBucket>(rc.rate_limit_per_minute);
    AgentHandle h{id, *kind, j, [rc, bucket] { return std::make_unique<RemoteAgent>(rc, bucket); }};
    return h;
  }
  if (*kind == AgentKind::Human) {
    if (!sessions) throw ConfigError("human agent '" + id + "' needs the HTTP service");
    auto session = sessions->create(j.value("session", id));
    return {id, *kind, j, [session, step_timeout] {
              return std::make_unique<HumanAgent>(session, step_timeout);
            }};
  }
  AgentHandle h = scripted_handle(id, *kind);
  h.config = j;
  return h;
}

struct RunConfig {
  std::string run_id;
  std::filesystem::path runs_dir = "runs";
  std::vector<SceneSpec> scenes;
  std::vector<Level> levels{kAllLevels.begin(), kAllLevels.end()};
  std::vector<AgentHandle> agents;
  EpisodeConfig episode;
  std::uint64_t seed = 0;
  int parallelism = 4;
  bool canonical = false;  // omit wall-clock timestamps from all output
  PromptTemplates templates = PromptTemplates::defaults();
  std::size_t max_new_episodes = SIZE_MAX;  // stop early (used to simulate interruption)
};

struct RunManifest {
  std::string run_id;
  Json config;
  std::string started_at;
  std::string finished_at;
  std::string tool_version{kToolVersion};
  std::size_t cells = 0;
  std::size_t executed = 0;
  std::size_t skipped = 0;
  std::size_t invalid = 0;
};

inline std::filesystem::path run_dir(const std::filesystem::path& runs_dir, const std::string& run_id) {
  return runs_dir / run_id;
}

inline std::filesystem::path episodes_path(const std::filesystem::path& runs_dir,
                                           const std::string& run_id) {
  return run_dir(runs_dir, run_id) / "episodes.jsonl";
}

inline Json config_snapshot(const RunConfig& cfg) {
  Json levels = Json::array();
  for (Level l : cfg.levels) levels.push_back(to_int(l));
  Json agents = Json::array();
  for (const auto& a : cfg.agents) {
    Json c = a.config;
    c["id"] = a.agent_id;
    c["kind"] = std::string(to_string(a.kind));
    agents.push_back(std::move(c));
  }
  return {{"seed", cfg.seed},
          {"levels", levels},
          {"d_th", cfg.episode.d_th},
          {"step_buffer", cfg.episode.step_buffer},
          {"history_window", cfg.episode.history_window},
          {"full_frame_history", cfg.episode.full_frame_history},
          {"step_timeout_ms", cfg.episode.step_timeout.count()},
          {"frame_dump", cfg.episode.frame_dump},
          {"parallelism", cfg.parallelism},
          {"render", {{"width", cfg.episode.render.width},
                      {"height", cfg.episode.render.height},
                      {"mirror_pass", cfg.episode.render.mirror_pass}}},
          {"agents", agents},
          {"scenes", scenes_document(cfg.scenes)}};
}

inline Json to_json(const RunManifest& m, bool canonical) {
  Json j;
  j["run_id"] = m.run_id;
  j["tool_version"] = m.tool_version;
  if (!canonical) {
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
  }
  j["counts"] = {{"cells", m.cells}, {"executed", m.executed}, {"skipped", m.skipped}, {"invalid", m.invalid}};
  j["config"] = m.config;
  return j;
}

// Serialized line appender shared by concurrent writers.
class JsonlAppender {
 public:
  explicit JsonlAppender(const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::app | std::ios::binary);
    if (!out_) throw ConfigError("cannot open " + path.string() + " for appending");
  }

  void append(const std::string& line) {
    std::lock_guard lock(mu_);
    out_ << line << '\n';
    out_.flush();
  }

 private:
  std::mutex mu_;
  std::ofstream out_;
};

// Episode ids already present in an episodes file (none if it does not exist).
inline std::set<std::string> recorded_episodes(const std::filesystem::path& path) {
  std::set<std::string> ids;
  if (!std::filesystem::exists(path)) return ids;
  for (const auto& r : read_records_file(path.string())) ids.insert(r.episode_id);
  return ids;
}

inline RunManifest run_benchmark(const RunConfig& cfg) {
  if (cfg.run_id.empty()) throw ConfigError("run id is empty");
  if (cfg.parallelism < 1) throw ConfigError("parallelism must be at least 1");
  {
    std::set<std::string> ids;
    for (const auto& a : cfg.agents) {
      if (!ids.insert(a.agent_id).second) throw ConfigError("duplicate agent id '" + a.agent_id + "'");
      if (a.agent_id.find("__") != std::string::npos) {
        throw ConfigError("agent id '" + a.agent_id + "' must not contain '__'");
      }
    }
    std::set<std::string> scenes;
    for (const auto& s : cfg.scenes) {
      if (!scenes.insert(s.scene_id).second) throw ConfigError("duplicate scene id '" + s.scene_id + "'");
    }
  }

  RunManifest manifest;
  manifest.run_id = cfg.run_id;
  manifest.config = config_snapshot(cfg);
  manifest.started_at = utc_timestamp();

  const auto dir = run_dir(cfg.runs_dir, cfg.run_id);
  const auto path = episodes_path(cfg.runs_dir, cfg.run_id);
  const std::set<std::string> done = recorded_episodes(path);

  struct Cell {
    const AgentHandle* agent;
    const SceneSpec* scene;
    Level level;
  };
  std::vector<Cell> todo;
  for (const auto& a : cfg.agents) {
    for (const auto& s : cfg.scenes) {
      for (Level l : cfg.levels) {
        ++manifest.cells;
        if (done.count(episode_id_for(a.agent_id, s.scene_id, l))) {
          ++manifest.skipped;
        } else if (todo.size() < cfg.max_new_episodes) {
          todo.push_back({&a, &s, l});
        }
      }
    }
  }

  JsonlAppender appender(path);
  std::vector<std::optional<std::string>> slots(todo.size());
  std::size_t next_to_write = 0;
  std::mutex write_mu;
  std::atomic<std::size_t> next_cell{0};
  std::atomic<std::size_t> invalid{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next_cell.fetch_add(1);
      if (i >= todo.size()) return;
      {
        std::lock_guard lock(failure_mu);
        if (failure) return;
      }
      const Cell& c = todo[i];
      try {
        EpisodeConfig ecfg = cfg.episode;
        const std::string eid = episode_id_for(c.agent->agent_id, c.scene->scene_id, c.level);
        ecfg.seed = derive_seed(cfg.seed, eid);
        FrameSink sink;
        if (ecfg.frame_dump) {
          sink = [&dir](const std::string& episode_id, const Observation& obs) {
            write_png(dir / "frames" / episode_id / (std::to_string(obs.step_index) + ".png"), obs.frame);
          };
        }
        auto agent = c.agent->make();
        EpisodeRecord rec = run_episode_isolated(*c.scene, c.level, *agent, c.agent->agent_id, ecfg,
                                                 cfg.templates, sink);
        if (!rec.valid) ++invalid;
        std::string line = to_json(rec, cfg.canonical).dump();
        std::lock_guard lock(write_mu);
        slots[i] = std::move(line);
        while (next_to_write < slots.size() && slots[next_to_write]) {
          appender.append(*slots[next_to_write]);
          slots[next_to_write].reset();
          ++next_to_write;
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int n = std::min<int>(cfg.parallelism, static_cast<int>(std::max<std::size_t>(todo.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  manifest.executed = todo.size();
  manifest.invalid = invalid.load();
  manifest.finished_at = utc_timestamp();
  write_json_file((dir / "manifest.json").string(), to_json(manifest, cfg.canonical));
  return manifest;
}

}  // namespace mirrorbench
