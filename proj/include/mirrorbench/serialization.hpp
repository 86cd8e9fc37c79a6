#pragma once

// JSON forms of scenes, asset pools, sampling plans and episode records.
// Layouts are documented in docs/formats.md.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mirrorbench/assets.hpp"
#include "mirrorbench/errors.hpp"
#include "mirrorbench/generate.hpp"
#include "mirrorbench/protocol.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

using Json = nlohmann::ordered_json;

inline constexpr int kSceneSchemaVersion = 1;

namespace detail {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

// --- vectors and small types ----------------------------------------------

inline Json to_json(Vec3i v) { return Json::array({v.x, v.y, v.z}); }
inline Json to_json(Vec3d v) { return Json::array({v.x, v.y, v.z}); }
inline Json to_json(Rgb c) { return Json::array({c.r, c.g, c.b}); }

inline Vec3i vec3i_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected an integer triple");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}
inline Vec3d vec3d_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a number triple");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
inline Rgb rgb_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected an RGB triple");
  auto c = [](const Json& v) {
    const int x = v.get<int>();
    if (x < 0 || x > 255) throw ConfigError("colour channel outside 0..255");
    return static_cast<std::uint8_t>(x);
  };
  return {c(j[0]), c(j[1]), c(j[2])};
}

inline Setting setting_from_string(const std::string& s) {
  if (s == "Human") return Setting::Human;
  if (s == "Robot") return Setting::Robot;
  throw ConfigError("unknown setting '" + s + "'");
}

// --- assets ---------------------------------------------------------------

inline Json to_json(const Primitive& p) {
  Json j;
  switch (p.kind) {
    case PrimitiveKind::Box:
      j["kind"] = "box";
      j["center"] = to_json(p.center);
      j["half_extents"] = to_json(p.half_extents);
      break;
    case PrimitiveKind::Sphere:
      j["kind"] = "sphere";
      j["center"] = to_json(p.center);
      j["radius"] = p.radius;
      break;
    case PrimitiveKind::Capsule:
      j["kind"] = "capsule";
      j["a"] = to_json(p.center);
      j["b"] = to_json(p.end);
      j["radius"] = p.radius;
      break;
  }
  j["color"] = to_json(p.color);
  return j;
}

inline Primitive primitive_from_json(const Json& j) {
  Primitive p;
  const auto kind = detail::get_field<std::string>(j, "kind");
  if (kind == "box") {
    p.kind = PrimitiveKind::Box;
    p.center = vec3d_from_json(j.at("center"));
    p.half_extents = vec3d_from_json(j.at("half_extents"));
    if (p.half_extents.x <= 0 || p.half_extents.y <= 0 || p.half_extents.z <= 0) {
      throw ConfigError("box half extents must be positive");
    }
  } else if (kind == "sphere") {
    p.kind = PrimitiveKind::Sphere;
    p.center = vec3d_from_json(j.at("center"));
    p.radius = detail::get_field<double>(j, "radius");
  } else if (kind == "capsule") {
    p.kind = PrimitiveKind::Capsule;
    p.center = vec3d_from_json(j.at("a"));
    p.end = vec3d_from_json(j.at("b"));
    p.radius = detail::get_field<double>(j, "radius");
  } else {
    throw ConfigError("unknown primitive kind '" + kind + "'");
  }
  if (p.kind != PrimitiveKind::Box && p.radius <= 0) throw ConfigError("radius must be positive");
  p.color = rgb_from_json(j.at("color"));
  return p;
}

inline Json to_json(const AssetSpec& a) {
  Json j;
  j["kind"] = std::string(to_string(a.kind));
  j["id"] = a.id;
  if (a.setting) j["setting"] = std::string(to_string(*a.setting));
  j["description"] = a.description;
  if (a.surface) {
    j["surface"] = {{"front_y", a.surface->front_y}, {"x_min", a.surface->x_min},
                    {"x_max", a.surface->x_max},     {"z_min", a.surface->z_min},
                    {"z_max", a.surface->z_max}};
  }
  Json shape = Json::array();
  for (const auto& p : a.shape) shape.push_back(to_json(p));
  j["shape"] = std::move(shape);
  return j;
}

inline AssetSpec asset_from_json(const Json& j) {
  AssetSpec a;
  const auto kind = detail::get_field<std::string>(j, "kind");
  if (kind == "Body") a.kind = AssetKind::Body;
  else if (kind == "Hand") a.kind = AssetKind::Hand;
  else if (kind == "Mark") a.kind = AssetKind::Mark;
  else throw ConfigError("unknown asset kind '" + kind + "'");
  a.id = detail::get_field<std::string>(j, "id");
  if (j.contains("setting")) a.setting = setting_from_string(j.at("setting").get<std::string>());
  a.description = detail::get_field<std::string>(j, "description");
  if (j.contains("surface")) {
    const Json& s = j.at("surface");
    a.surface = MarkSurface{detail::get_field<int>(s, "front_y"), detail::get_field<int>(s, "x_min"),
                            detail::get_field<int>(s, "x_max"), detail::get_field<int>(s, "z_min"),
                            detail::get_field<int>(s, "z_max")};
  }
  for (const auto& p : j.at("shape")) a.shape.push_back(primitive_from_json(p));
  return a;
}

inline Json to_json(const AssetPool& pool) {
  Json j;
  Json bodies = Json::array(), hands = Json::array(), marks = Json::array();
  for (const auto& b : pool.bodies) bodies.push_back(to_json(b));
  for (const auto& h : pool.hands) {
    hands.push_back({{"id", h.id}, {"human", to_json(h.human)}, {"robot", to_json(h.robot)}});
  }
  for (const auto& m : pool.marks) marks.push_back(to_json(m));
  j["bodies"] = std::move(bodies);
  j["hands"] = std::move(hands);
  j["marks"] = std::move(marks);
  return j;
}

inline AssetPool pool_from_json(const Json& j) {
  AssetPool pool;
  for (const auto& b : j.at("bodies")) pool.bodies.push_back(asset_from_json(b));
  for (const auto& h : j.at("hands")) {
    pool.hands.push_back({detail::get_field<std::string>(h, "id"), asset_from_json(h.at("human")),
                          asset_from_json(h.at("robot"))});
  }
  for (const auto& m : j.at("marks")) pool.marks.push_back(asset_from_json(m));
  return pool;
}

// --- sampling plan ----------------------------------------------------------

inline Json to_json(const SceneLayout& l) {
  return {{"body_position", to_json(l.body_pose.position)},
          {"body_facing", std::string(to_string(l.body_pose.facing))},
          {"workspace_half", l.workspace_half},
          {"mirror_distance", l.mirror_distance},
          {"mirror_half_width", l.mirror_half_width},
          {"mirror_z_min", l.mirror_z_min},
          {"mirror_z_max", l.mirror_z_max},
          {"camera_eye", to_json(l.camera_eye)},
          {"camera_target", to_json(l.camera_target)},
          {"camera_fov_deg", l.camera_fov_deg},
          {"hand_min", to_json(l.hand_min)},
          {"hand_max", to_json(l.hand_max)},
          {"environment", l.environment}};
}

inline SceneLayout layout_from_json(const Json& j) {
  SceneLayout l;
  if (j.contains("body_position")) l.body_pose.position = vec3i_from_json(j.at("body_position"));
  if (j.contains("body_facing")) {
    auto f = facing_from_string(j.at("body_facing").get<std::string>());
    if (!f) throw ConfigError("body_facing must be one of +Y, -Y, +X, -X");
    l.body_pose.facing = *f;
  }
  l.workspace_half = j.value("workspace_half", l.workspace_half);
  l.mirror_distance = j.value("mirror_distance", l.mirror_distance);
  l.mirror_half_width = j.value("mirror_half_width", l.mirror_half_width);
  l.mirror_z_min = j.value("mirror_z_min", l.mirror_z_min);
  l.mirror_z_max = j.value("mirror_z_max", l.mirror_z_max);
  if (j.contains("camera_eye")) l.camera_eye = vec3d_from_json(j.at("camera_eye"));
  if (j.contains("camera_target")) l.camera_target = vec3d_from_json(j.at("camera_target"));
  l.camera_fov_deg = j.value("camera_fov_deg", l.camera_fov_deg);
  if (j.contains("hand_min")) l.hand_min = vec3i_from_json(j.at("hand_min"));
  if (j.contains("hand_max")) l.hand_max = vec3i_from_json(j.at("hand_max"));
  l.environment = j.value("environment", l.environment);
  return l;
}

inline Json to_json(const SamplingPlan& p) {
  Json j;
  j["mode"] = p.mode == SamplingMode::Enumerate ? "enumerate" : "sample";
  j["sample_count"] = p.sample_count;
  j["poses_per_combination"] = p.poses_per_combination;
  if (p.setting) j["setting"] = std::string(to_string(*p.setting));
  j["body_ids"] = p.body_ids;
  j["hand_ids"] = p.hand_ids;
  j["mark_ids"] = p.mark_ids;
  j["d_th"] = p.d_th;
  j["max_redraws"] = p.max_redraws;
  j["strict_pool"] = p.strict_pool;
  j["layout"] = to_json(p.layout);
  return j;
}

inline SamplingPlan plan_from_json(const Json& j) {
  SamplingPlan p;
  const std::string mode = j.value("mode", std::string("enumerate"));
  if (mode == "enumerate") p.mode = SamplingMode::Enumerate;
  else if (mode == "sample") p.mode = SamplingMode::Sample;
  else throw ConfigError("sampling mode must be 'enumerate' or 'sample'");
  p.sample_count = j.value("sample_count", p.sample_count);
  p.poses_per_combination = j.value("poses_per_combination", p.poses_per_combination);
  if (j.contains("setting") && !j.at("setting").is_null()) {
    p.setting = setting_from_string(j.at("setting").get<std::string>());
  }
  p.body_ids = j.value("body_ids", p.body_ids);
  p.hand_ids = j.value("hand_ids", p.hand_ids);
  p.mark_ids = j.value("mark_ids", p.mark_ids);
  p.d_th = j.value("d_th", p.d_th);
  p.max_redraws = j.value("max_redraws", p.max_redraws);
  p.strict_pool = j.value("strict_pool", p.strict_pool);
  if (j.contains("layout")) p.layout = layout_from_json(j.at("layout"));
  return p;
}

// Scene-generation config: {"seed", "sampling", "pool"}; a missing pool means
// the built-in one.
struct GenerationConfig {
  std::uint64_t seed = 0;
  SamplingPlan plan;
  AssetPool pool = default_pool();
};

inline GenerationConfig generation_config_from_json(const Json& j) {
  GenerationConfig c;
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("sampling")) c.plan = plan_from_json(j.at("sampling"));
  if (j.contains("pool")) c.pool = pool_from_json(j.at("pool"));
  return c;
}

inline Json to_json(const GenerationConfig& c) {
  return {{"seed", c.seed}, {"sampling", to_json(c.plan)}, {"pool", to_json(c.pool)}};
}

// --- scenes ---------------------------------------------------------------

inline Json to_json(const MirrorPlane& m) {
  return {{"axis", std::string(to_string(m.axis))},
          {"offset", m.offset},
          {"u_min", m.u_min},
          {"u_max", m.u_max},
          {"v_min", m.v_min},
          {"v_max", m.v_max}};
}

inline MirrorPlane mirror_from_json(const Json& j) {
  MirrorPlane m;
  auto axis = axis_from_string(detail::get_field<std::string>(j, "axis"));
  if (!axis) throw ConfigError("mirror axis must be X, Y or Z");
  m.axis = *axis;
  m.offset = detail::get_field<int>(j, "offset");
  m.u_min = detail::get_field<int>(j, "u_min");
  m.u_max = detail::get_field<int>(j, "u_max");
  m.v_min = detail::get_field<int>(j, "v_min");
  m.v_max = detail::get_field<int>(j, "v_max");
  return m;
}

inline Json to_json(const SceneSpec& s) {
  Json j;
  j["scene_id"] = s.scene_id;
  j["setting"] = std::string(to_string(s.setting()));
  j["body"] = to_json(s.body);
  j["hand"] = to_json(s.hand);
  j["mark"] = to_json(s.mark);
  j["mirror"] = to_json(s.mirror);
  j["body_pose"] = {{"position", to_json(s.body_pose.position)},
                    {"facing", std::string(to_string(s.body_pose.facing))}};
  j["mark_anchor"] = to_json(s.mark_anchor);
  j["hand_init"] = to_json(s.hand_init);
  j["workspace"] = {{"min", to_json(s.workspace.min)}, {"max", to_json(s.workspace.max)}};
  j["camera"] = {{"eye", to_json(s.camera.eye)},
                 {"target", to_json(s.camera.target)},
                 {"up", to_json(s.camera.up)},
                 {"fov_y_deg", s.camera.fov_y_deg}};
  j["descriptions"] = {{"body", s.descriptions.body},
                       {"hand", s.descriptions.hand},
                       {"mark", s.descriptions.mark},
                       {"environment", s.descriptions.environment}};
  return j;
}

namespace detail {

inline SceneSpec scene_fields(const Json& j) {
  SceneSpec s;
  s.scene_id = detail::get_field<std::string>(j, "scene_id");
  s.body = asset_from_json(j.at("body"));
  s.hand = asset_from_json(j.at("hand"));
  s.mark = asset_from_json(j.at("mark"));
  s.mirror = mirror_from_json(j.at("mirror"));
  s.body_pose.position = vec3i_from_json(j.at("body_pose").at("position"));
  auto facing = facing_from_string(j.at("body_pose").at("facing").get<std::string>());
  if (!facing) throw ConfigError("body_pose.facing must be one of +Y, -Y, +X, -X");
  s.body_pose.facing = *facing;
  s.mark_anchor = vec3i_from_json(j.at("mark_anchor"));
  s.hand_init = vec3i_from_json(j.at("hand_init"));
  s.workspace = {vec3i_from_json(j.at("workspace").at("min")),
                 vec3i_from_json(j.at("workspace").at("max"))};
  const Json& cam = j.at("camera");
  s.camera = {vec3d_from_json(cam.at("eye")), vec3d_from_json(cam.at("target")),
              vec3d_from_json(cam.at("up")), detail::get_field<double>(cam, "fov_y_deg")};
  const Json& d = j.at("descriptions");
  s.descriptions = {d.at("body").get<std::string>(), d.at("hand").get<std::string>(),
                    d.at("mark").get<std::string>(), d.at("environment").get<std::string>()};
  return s;
}

}  // namespace detail

// Any structural problem surfaces as ConfigError naming the scene.
inline SceneSpec scene_from_json(const Json& j) {
  try {
    return detail::scene_fields(j);
  } catch (const nlohmann::json::exception& e) {
    const std::string id = j.is_object() && j.contains("scene_id") && j["scene_id"].is_string()
                               ? j["scene_id"].get<std::string>()
                               : std::string("?");
    throw ConfigError("scene '" + id + "': " + e.what());
  }
}

inline Json scenes_document(const std::vector<SceneSpec>& scenes) {
  Json arr = Json::array();
  for (const auto& s : scenes) arr.push_back(to_json(s));
  return {{"schema_version", kSceneSchemaVersion}, {"scenes", std::move(arr)}};
}

inline std::vector<SceneSpec> scenes_from_document(const Json& j) {
  const int version = j.value("schema_version", -1);
  if (version != kSceneSchemaVersion) {
    throw ConfigError("unsupported scene schema_version " + std::to_string(version));
  }
  std::vector<SceneSpec> out;
  for (const auto& s : j.at("scenes")) out.push_back(scene_from_json(s));
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f << j.dump(2) << '\n';
}

// --- episode records --------------------------------------------------------

inline Json metrics_to_json(const MetricSet& m) {
  return {{"tsr", m.tsr}, {"sir", m.sir}, {"fcr", m.fcr}, {"pcr", m.pcr}, {"avg", m.avg()}};
}

// `canonical` drops wall-clock timestamps so reruns compare byte for byte.
inline Json to_json(const EpisodeRecord& r, bool canonical = false) {
  Json j;
  j["episode_id"] = r.episode_id;
  j["scene_id"] = r.scene_id;
  j["setting"] = std::string(to_string(r.setting));
  j["level"] = to_int(r.level);
  j["agent_id"] = r.agent_id;
  j["agent_kind"] = std::string(to_string(r.agent_kind));
  j["d_th"] = r.d_th;
  j["max_steps"] = r.max_steps;
  j["seed"] = r.seed;
  j["valid"] = r.valid;
  j["distances"] = r.trajectory.distances;
  Json actions = Json::array();
  for (const auto& a : r.trajectory.actions) {
    actions.push_back(a ? Json(std::string(to_token(*a))) : Json(nullptr));
  }
  j["actions"] = std::move(actions);
  j["outcome"] = r.valid ? Json(std::string(to_string(r.trajectory.outcome))) : Json(nullptr);
  j["flags"] = {{"clamped", r.trajectory.clamp_flags}, {"malformed", r.trajectory.malformed_flags}};
  j["metrics"] = r.metrics ? metrics_to_json(*r.metrics) : Json(nullptr);
  j["error"] = r.valid ? Json(nullptr) : Json{{"kind", r.error_kind}, {"message", r.error_message}};
  if (!canonical) j["timestamps"] = {{"started_at", r.started_at}, {"finished_at", r.finished_at}};
  return j;
}

// Structural check of one record against the published layout; returns the
// list of problems (empty when valid).
inline std::vector<std::string> validate_record_json(const Json& j) {
  std::vector<std::string> errs;
  auto need = [&](const char* key, auto pred, const char* what) {
    if (!j.contains(key)) {
      errs.push_back(std::string("missing '") + key + "'");
    } else if (!pred(j.at(key))) {
      errs.push_back(std::string("'") + key + "' must be " + what);
    }
  };
  auto is_str = [](const Json& v) { return v.is_string(); };
  auto is_uint = [](const Json& v) { return v.is_number_unsigned(); };
  auto is_int = [](const Json& v) { return v.is_number_integer(); };
  if (!j.is_object()) return {"record is not an object"};
  need("episode_id", is_str, "a string");
  need("scene_id", is_str, "a string");
  need("setting", [](const Json& v) { return v == "Human" || v == "Robot"; }, "Human or Robot");
  need("level", [](const Json& v) { return v.is_number_integer() && v >= 0 && v <= 3; }, "0..3");
  need("agent_id", is_str, "a string");
  need("agent_kind", [](const Json& v) { return v.is_string() && agent_kind_from_string(v.get<std::string>()); },
       "a known agent kind");
  need("d_th", [](const Json& v) { return v.is_number_integer() && v >= 1; }, "an integer >= 1");
  need("max_steps", is_int, "an integer");
  need("seed", is_uint, "an unsigned integer");
  need("valid", [](const Json& v) { return v.is_boolean(); }, "a boolean");
  need("distances", [](const Json& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const auto& d : v) if (!d.is_number_integer() || d < 0) return false;
    return true;
  }, "a non-empty array of non-negative integers");
  need("actions", [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& a : v) {
      if (a.is_null()) continue;
      if (!a.is_string() || !action_from_token(a.get<std::string>())) return false;
    }
    return true;
  }, "an array of action tokens or nulls");
  need("outcome", [](const Json& v) { return v.is_null() || v == "Success" || v == "StepLimit"; },
       "Success, StepLimit or null");
  need("flags", [](const Json& v) {
    return v.is_object() && v.contains("clamped") && v.contains("malformed") &&
           v["clamped"].is_array() && v["malformed"].is_array();
  }, "an object with clamped and malformed arrays");
  need("metrics", [](const Json& v) {
    if (v.is_null()) return true;
    for (const char* k : {"tsr", "sir", "fcr", "pcr", "avg"}) {
      if (!v.contains(k) || !v[k].is_number()) return false;
    }
    return true;
  }, "null or an object with tsr, sir, fcr, pcr, avg");
  need("error", [](const Json& v) {
    return v.is_null() || (v.is_object() && v.contains("kind") && v.contains("message"));
  }, "null or {kind, message}");
  if (!errs.empty()) return errs;

  const auto& d = j["distances"];
  const auto& a = j["actions"];
  if (a.size() + 1 != d.size()) errs.push_back("actions must be one shorter than distances");
  if (j["flags"]["clamped"].size() != a.size() || j["flags"]["malformed"].size() != a.size()) {
    errs.push_back("flag arrays must match the number of steps");
  }
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (std::abs(d[i + 1].get<int>() - d[i].get<int>()) > 1) {
      errs.push_back("consecutive distances differ by more than 1");
      break;
    }
  }
  if (j["valid"].get<bool>()) {
    if (j["outcome"].is_null() || j["metrics"].is_null()) {
      errs.push_back("valid records need an outcome and metrics");
    } else {
      const bool success = d.back().get<int>() <= j["d_th"].get<int>();
      if (success != (j["outcome"] == "Success")) errs.push_back("outcome disagrees with d_T");
    }
  } else if (j["error"].is_null()) {
    errs.push_back("invalid records need an error");
  }
  return errs;
}

inline EpisodeRecord record_from_json(const Json& j) {
  const auto errs = validate_record_json(j);
  if (!errs.empty()) throw ConfigError("episode record: " + errs.front());
  EpisodeRecord r;
  r.episode_id = j["episode_id"].get<std::string>();
  r.scene_id = j["scene_id"].get<std::string>();
  r.setting = setting_from_string(j["setting"].get<std::string>());
  r.level = level_from_int(j["level"].get<int>());
  r.agent_id = j["agent_id"].get<std::string>();
  r.agent_kind = *agent_kind_from_string(j["agent_kind"].get<std::string>());
  r.d_th = j["d_th"].get<int>();
  r.max_steps = j["max_steps"].get<int>();
  r.seed = j["seed"].get<std::uint64_t>();
  r.valid = j["valid"].get<bool>();
  r.trajectory.distances = j["distances"].get<std::vector<int>>();
  for (const auto& a : j["actions"]) {
    r.trajectory.actions.push_back(a.is_null() ? std::nullopt
                                               : action_from_token(a.get<std::string>()));
  }
  r.trajectory.clamp_flags = j["flags"]["clamped"].get<std::vector<bool>>();
  r.trajectory.malformed_flags = j["flags"]["malformed"].get<std::vector<bool>>();
  if (r.valid) {
    r.trajectory.outcome = j["outcome"] == "Success" ? Outcome::Success : Outcome::StepLimit;
    const Json& m = j["metrics"];
    r.metrics = MetricSet{m["tsr"].get<double>(), m["sir"].get<double>(), m["fcr"].get<double>(),
                          m["pcr"].get<double>()};
  } else {
    r.error_kind = j["error"]["kind"].get<std::string>();
    r.error_message = j["error"]["message"].get<std::string>();
  }
  if (j.contains("timestamps")) {
    r.started_at = j["timestamps"].value("started_at", "");
    r.finished_at = j["timestamps"].value("finished_at", "");
  }
  return r;
}

// Strict JSON-lines reader: any unparseable or invalid line is a ParseError
// carrying its 1-based line number. Blank lines are skipped.
inline std::vector<EpisodeRecord> read_records(std::istream& in) {
  std::vector<EpisodeRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed episode line: ") + e.what(), n);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), n);
    }
  }
  return out;
}

inline std::vector<EpisodeRecord> read_records_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  return read_records(f);
}

}  // namespace mirrorbench
