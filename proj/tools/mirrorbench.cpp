// mirrorbench command line: generate-scenes, validate-scenes, run, report, serve.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mirrorbench/benchmark.hpp"
#include "mirrorbench/generate.hpp"
#include "mirrorbench/report.hpp"
#include "mirrorbench/serialization.hpp"
#include "mirrorbench/service.hpp"

namespace mb = mirrorbench;

namespace {

std::set<mb::Level> parse_levels(const std::vector<int>& v) {
  std::set<mb::Level> out;
  for (int l : v) out.insert(mb::level_from_int(l));
  return out;
}

std::vector<mb::SceneSpec> load_scenes(const std::string& path) {
  return mb::scenes_from_document(mb::read_json_file(path));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw mb::ConfigError("cannot write " + path.string());
  f << text;
}

mb::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) std::thread([] { g_service->stop(); }).detach();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mirror self-recognition benchmark harness"};
  app.require_subcommand(1);

  // generate-scenes
  auto* gen = app.add_subcommand("generate-scenes", "Generate a scene file from the asset pool");
  std::string gen_config, gen_out = "scenes.json", gen_setting;
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  int gen_sample = 0;
  gen->add_option("-c,--config", gen_config, "Generation config JSON (seed, sampling, pool)");
  gen->add_option("-o,--out", gen_out, "Output scene file");
  gen->add_option("--seed", gen_seed, "Sampling seed")->each([&](const std::string&) { gen_seed_set = true; });
  gen->add_option("--setting", gen_setting, "Restrict to Human or Robot");
  gen->add_option("--sample", gen_sample, "Draw this many scenes instead of enumerating");

  // validate-scenes
  auto* val = app.add_subcommand("validate-scenes", "Check every scene against the scene invariants");
  std::string val_scenes;
  int val_dth = 1;
  val->add_option("scenes", val_scenes, "Scene file")->required();
  val->add_option("--d-th", val_dth, "Success threshold");

  // run
  auto* run = app.add_subcommand("run", "Run agents over scenes and levels");
  std::string run_config, run_scenes, run_id, runs_dir;
  std::vector<int> run_levels;
  std::vector<std::string> run_agents;
  int run_parallel = 0, run_port = 8080;
  bool run_frames = false, run_canonical = false;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  std::string run_static;
  run->add_option("-c,--config", run_config, "Run config JSON");
  run->add_option("-s,--scenes", run_scenes, "Scene file (overrides config)");
  run->add_option("--run-id", run_id, "Run identifier; reusing one resumes the run");
  run->add_option("--runs-dir", runs_dir, "Directory holding runs (default: runs)");
  run->add_option("--levels", run_levels, "Levels to run (default: 0 1 2 3)")->delimiter(',');
  run->add_option("--agent", run_agents, "Scripted agent as KIND or KIND:ID (Random, Oracle, MirrorConfused)");
  run->add_option("-j,--parallelism", run_parallel, "Concurrent episodes (default 4)");
  run->add_flag("--frame-dump", run_frames, "Write every rendered frame as PNG");
  run->add_flag("--canonical", run_canonical, "Omit wall-clock timestamps");
  run->add_option("--seed", run_seed, "Run seed")->each([&](const std::string&) { run_seed_set = true; });
  run->add_option("--port", run_port, "Port for the human console service");
  run->add_option("--static", run_static, "Console asset directory served with human agents");

  // report
  auto* rep = app.add_subcommand("report", "Aggregate an episodes file into tables");
  std::string rep_run, rep_file, rep_runs_dir = "runs", rep_out;
  std::vector<int> rep_levels;
  rep->add_option("--run-id", rep_run, "Run identifier");
  rep->add_option("--episodes", rep_file, "Episodes JSONL file (instead of --run-id)");
  rep->add_option("--runs-dir", rep_runs_dir, "Directory holding runs");
  rep->add_option("--levels", rep_levels, "Level filter")->delimiter(',');
  rep->add_option("-o,--out-dir", rep_out, "Write report.csv, report.md and report.json here");

  // serve
  auto* srv = app.add_subcommand("serve", "Serve the human console, sessions and reports");
  mb::ServiceConfig scfg;
  std::string srv_scenes, srv_static;
  int srv_timeout_s = 600;
  srv->add_option("--host", scfg.host, "Bind address");
  srv->add_option("--port", scfg.port, "Port (0 picks a free one)");
  srv->add_option("--static", srv_static, "Console asset directory");
  srv->add_option("--runs-dir", scfg.runs_dir, "Directory holding runs");
  srv->add_option("-s,--scenes", srv_scenes, "Scene file for console-started episodes");
  srv->add_option("--step-timeout", srv_timeout_s, "Seconds to wait for each human action");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      mb::GenerationConfig gc;
      if (!gen_config.empty()) gc = mb::generation_config_from_json(mb::read_json_file(gen_config));
      if (gen_seed_set) gc.seed = gen_seed;
      if (!gen_setting.empty()) gc.plan.setting = mb::setting_from_string(gen_setting);
      if (gen_sample > 0) {
        gc.plan.mode = mb::SamplingMode::Sample;
        gc.plan.sample_count = gen_sample;
      }
      const auto scenes = mb::generate_scenes(gc.pool, gc.plan, gc.seed);
      mb::write_json_file(gen_out, mb::scenes_document(scenes));
      std::cout << "wrote " << scenes.size() << " scenes to " << gen_out << "\n";
      return 0;
    }

    if (*val) {
      const auto scenes = load_scenes(val_scenes);
      std::size_t bad = 0;
      for (const auto& s : scenes) {
        const auto problems = mb::validate_scene(s, val_dth, mb::RenderConfig{});
        if (problems.empty()) continue;
        ++bad;
        for (const auto& p : problems) std::cout << s.scene_id << ": " << p << "\n";
      }
      std::cout << scenes.size() - bad << "/" << scenes.size() << " scenes valid\n";
      return bad == 0 ? 0 : 1;
    }

    if (*run) {
      mb::Json j = run_config.empty() ? mb::Json::object() : mb::read_json_file(run_config);
      mb::RunConfig rc;
      rc.run_id = run_id.empty() ? j.value("run_id", std::string()) : run_id;
      rc.runs_dir = runs_dir.empty() ? j.value("runs_dir", std::string("runs")) : runs_dir;
      const std::string scenes_path = run_scenes.empty() ? j.value("scenes", std::string()) : run_scenes;
      if (scenes_path.empty()) throw mb::ConfigError("no scene file given");
      rc.scenes = load_scenes(scenes_path);
      std::vector<int> lv = run_levels.empty() ? j.value("levels", std::vector<int>{0, 1, 2, 3}) : run_levels;
      rc.levels.clear();
      for (mb::Level l : parse_levels(lv)) rc.levels.push_back(l);
      rc.seed = run_seed_set ? run_seed : j.value("seed", std::uint64_t{0});
      rc.parallelism = run_parallel > 0 ? run_parallel : j.value("parallelism", 4);
      rc.canonical = run_canonical || j.value("canonical", false);
      rc.episode.d_th = j.value("d_th", rc.episode.d_th);
      rc.episode.step_buffer = j.value("step_buffer", rc.episode.step_buffer);
      rc.episode.history_window = j.value("history_window", rc.episode.history_window);
      rc.episode.full_frame_history = j.value("full_frame_history", rc.episode.full_frame_history);
      rc.episode.frame_dump = run_frames || j.value("frame_dump", false);
      rc.episode.step_timeout = std::chrono::seconds(j.value("step_timeout_s", 120));
      if (j.contains("render")) {
        rc.episode.render.width = j["render"].value("width", rc.episode.render.width);
        rc.episode.render.height = j["render"].value("height", rc.episode.render.height);
      }
      if (j.contains("templates")) rc.templates = mb::PromptTemplates::load(j["templates"].get<std::string>());

      mb::ServiceConfig svc_cfg;
      svc_cfg.port = run_port;
      svc_cfg.runs_dir = rc.runs_dir;
      if (!run_static.empty()) svc_cfg.static_dir = run_static;
      std::unique_ptr<mb::Service> service;
      auto agent_specs = j.value("agents", mb::Json::array());
      for (const auto& a : run_agents) {
        const auto colon = a.find(':');
        const std::string kind = a.substr(0, colon);
        const std::string id = colon == std::string::npos ? kind : a.substr(colon + 1);
        agent_specs.push_back({{"id", id}, {"kind", kind}});
      }
      for (const auto& a : agent_specs) {
        if (a.value("kind", std::string()) == "Human" && !service) {
          service = std::make_unique<mb::Service>(svc_cfg);
          std::cout << "human console on http://" << svc_cfg.host << ":" << service->start() << "/\n";
        }
        rc.agents.push_back(mb::agent_handle_from_json(a, service ? &service->sessions() : nullptr,
                                                       rc.episode.step_timeout));
      }
      if (rc.agents.empty()) throw mb::ConfigError("no agents given");
      if (rc.run_id.empty()) throw mb::ConfigError("no run id given");

      const auto m = mb::run_benchmark(rc);
      std::cout << "run " << m.run_id << ": " << m.cells << " cells, " << m.executed << " executed, "
                << m.skipped << " skipped, " << m.invalid << " invalid\n";
      return 0;
    }

    if (*rep) {
      std::string path = rep_file;
      if (path.empty()) {
        if (rep_run.empty()) throw mb::ConfigError("give --run-id or --episodes");
        path = mb::episodes_path(rep_runs_dir, rep_run).string();
      }
      const auto report = mb::make_report(mb::read_records_file(path), parse_levels(rep_levels));
      const std::string md = mb::report_markdown(report);
      if (!rep_out.empty()) {
        const std::filesystem::path out(rep_out);
        write_text(out / "report.csv", mb::report_csv(report));
        write_text(out / "report.md", md);
        write_text(out / "report.json", mb::report_json(report).dump(2) + "\n");
      }
      std::cout << md;
      return 0;
    }

    if (*srv) {
      if (!srv_scenes.empty()) scfg.scenes = load_scenes(srv_scenes);
      if (!srv_static.empty()) scfg.static_dir = srv_static;
      scfg.episode.step_timeout = std::chrono::seconds(srv_timeout_s);
      mb::Service service(scfg);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "serving on http://" << scfg.host << ":" << service.start() << "/" << std::endl;
      service.wait();
      service.stop();
      g_service = nullptr;
      return 0;
    }
  } catch (const mb::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const mb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
