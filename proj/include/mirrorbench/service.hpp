#pragma once

// Local HTTP service: human-bridge session endpoints, run reports and the
// console's static assets.
//
//   POST /session                     create a session; with "scene_id" also start an episode
//   GET  /session/{id}/step           current step view
//   POST /session/{id}/action         {"direction": "+X", "step_index": n?}
//   GET  /runs/{id}/report            report JSON for runs/<id>/episodes.jsonl
//   GET  /...                         files under the static directory

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "mirrorbench/benchmark.hpp"
#include "mirrorbench/human.hpp"
#include "mirrorbench/report.hpp"

namespace mirrorbench {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path static_dir;
  std::filesystem::path runs_dir = "runs";
  std::vector<SceneSpec> scenes;  // episodes startable via POST /session
  EpisodeConfig episode;
  PromptTemplates templates = PromptTemplates::defaults();
};

class Service {
 public:
  explicit Service(ServiceConfig cfg) : cfg_(std::move(cfg)) {
    for (const auto& s : cfg_.scenes) scene_index_[s.scene_id] = &s;
    // The library default adds SO_REUSEPORT, which lets a second server share
    // a busy port silently; a taken port must fail to bind instead.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    routes();
  }

  ~Service() { stop(); }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  SessionRegistry& sessions() { return sessions_; }

  // Binds and starts serving on a background thread; returns the bound port.
  int start() {
    if (cfg_.port == 0) {
      port_ = server_.bind_to_any_port(cfg_.host);
      if (port_ < 0) throw BindError("cannot bind " + cfg_.host);
    } else {
      if (!server_.bind_to_port(cfg_.host, cfg_.port)) {
        throw BindError("cannot bind " + cfg_.host + ":" + std::to_string(cfg_.port));
      }
      port_ = cfg_.port;
    }
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return port_;
  }

  // Blocks until stop() is called from another thread.
  void wait() {
    if (thread_.joinable()) thread_.join();
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
    for (const auto& s : sessions_.all()) s->cancel();
    std::vector<std::thread> eps;
    {
      std::lock_guard lock(mu_);
      eps.swap(episodes_);
    }
    for (auto& t : eps) t.join();
  }

  int port() const { return port_; }

  // Runs one Human episode on `session` and appends its record to the run.
  void launch_episode(const std::shared_ptr<HumanSession>& session, const SceneSpec& scene,
                      Level level, const std::string& run_id, const std::string& agent_id) {
    auto appender = appender_for(run_id);
    std::lock_guard lock(mu_);
    episodes_.emplace_back([this, session, &scene, level, appender, agent_id, run_id] {
      EpisodeConfig ecfg = cfg_.episode;
      ecfg.seed = derive_seed(0, episode_id_for(agent_id, scene.scene_id, level));
      HumanAgent agent(session, ecfg.step_timeout);
      EpisodeRecord rec = run_episode_isolated(scene, level, agent, agent_id, ecfg, cfg_.templates);
      if (!rec.valid) session->abandon();
      appender->append(to_json(rec).dump());
    });
  }

 private:
  static void send_json(httplib::Response& res, const Json& j, int status = 200) {
    res.status = status;
    res.set_content(j.dump(), "application/json");
  }

  std::shared_ptr<JsonlAppender> appender_for(const std::string& run_id) {
    std::lock_guard lock(mu_);
    auto& a = appenders_[run_id];
    if (!a) a = std::make_shared<JsonlAppender>(episodes_path(cfg_.runs_dir, run_id));
    return a;
  }

  void routes() {
    server_.Post("/session", [this](const httplib::Request& req, httplib::Response& res) {
      Json body = Json::object();
      if (!req.body.empty()) {
        try {
          body = Json::parse(req.body);
        } catch (const nlohmann::json::exception&) {
          return send_json(res, {{"error", "body is not JSON"}}, 400);
        }
      }
      const std::string scene_id = body.value("scene_id", std::string());
      const SceneSpec* scene = nullptr;
      if (!scene_id.empty()) {
        auto it = scene_index_.find(scene_id);
        if (it == scene_index_.end()) return send_json(res, {{"error", "scene-not-found"}}, 404);
        scene = it->second;
      }
      Level level;
      try {
        level = level_from_int(body.value("level", 0));
      } catch (const ConfigError& e) {
        return send_json(res, {{"error", e.what()}}, 400);
      }
      auto session = sessions_.create(body.value("session_id", std::string()));
      if (scene) {
        launch_episode(session, *scene, level, body.value("run_id", std::string("human")),
                       body.value("agent_id", std::string("human")));
      }
      send_json(res, {{"session_id", session->id()}}, 201);
    });

    server_.Get(R"(/session/([^/]+)/step)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = sessions_.find(req.matches[1]);
      if (!s) return send_json(res, {{"error", "session-not-found"}}, 404);
      send_json(res, to_json(s->view()));
    });

    server_.Post(R"(/session/([^/]+)/action)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = sessions_.find(req.matches[1]);
      if (!s) return send_json(res, {{"error", "session-not-found"}}, 404);
      Json body;
      try {
        body = Json::parse(req.body);
      } catch (const nlohmann::json::exception&) {
        return send_json(res, {{"error", "body is not JSON"}}, 400);
      }
      if (!body.contains("direction") || !body["direction"].is_string()) {
        return send_json(res, {{"error", "missing direction"}}, 400);
      }
      std::optional<int> step;
      if (body.contains("step_index") && body["step_index"].is_number_integer()) step = body["step_index"].get<int>();
      const PostResult r = s->post(body["direction"].get<std::string>(), step);
      const int status = r == PostResult::Accepted ? 200 : (r == PostResult::Invalid ? 400 : 409);
      send_json(res, {{"result", std::string(to_string(r))}}, status);
    });

    server_.Get(R"(/runs/([^/]+)/report)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const auto path = episodes_path(cfg_.runs_dir, id);
      if (id.find("..") != std::string::npos || !std::filesystem::exists(path)) {
        return send_json(res, {{"error", "run-not-found"}}, 404);
      }
      try {
        send_json(res, report_json(make_report(read_records_file(path.string()))));
      } catch (const ParseError& e) {
        send_json(res, {{"error", e.what()}, {"line", e.line()}}, 422);
      }
    });

    if (!cfg_.static_dir.empty()) {
      if (!server_.set_mount_point("/", cfg_.static_dir.string())) {
        throw ConfigError("static directory " + cfg_.static_dir.string() + " does not exist");
      }
    }
  }

  ServiceConfig cfg_;
  std::map<std::string, const SceneSpec*> scene_index_;
  SessionRegistry sessions_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<JsonlAppender>> appenders_;
  std::vector<std::thread> episodes_;
};

}  // namespace mirrorbench
