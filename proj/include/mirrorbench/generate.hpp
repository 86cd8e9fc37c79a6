#pragma once

// Procedural scene generation from an asset pool, and scene validity checks.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mirrorbench/assets.hpp"
#include "mirrorbench/errors.hpp"
#include "mirrorbench/reflection.hpp"
#include "mirrorbench/render.hpp"
#include "mirrorbench/rng.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

// Fixed placement of body, mirror, workspace and camera. Offsets are given in
// the body frame (+Y toward the mirror, +Z up).
struct SceneLayout {
  BodyPose body_pose{{0, 0, 0}, Facing::PosY};
  int workspace_half = 16;
  int mirror_distance = 8;
  int mirror_half_width = 10;
  int mirror_z_min = -2;
  int mirror_z_max = 20;
  Vec3d camera_eye{0, -22, 30};
  Vec3d camera_target{0, 8, 6};
  double camera_fov_deg = 60.0;
  // Hand start region, inclusive, body frame.
  Vec3i hand_min{-6, 3, 1};
  Vec3i hand_max{6, 6, 12};
  std::string environment = "You stand in an empty grey room. A fixed camera looks at the scene.";
};

enum class SamplingMode { Enumerate, Sample };

struct SamplingPlan {
  SamplingMode mode = SamplingMode::Enumerate;
  int sample_count = 0;           // Sample mode only
  int poses_per_combination = 1;  // Enumerate mode only
  std::optional<Setting> setting;
  std::vector<std::string> body_ids;  // empty = all
  std::vector<std::string> hand_ids;
  std::vector<std::string> mark_ids;
  int d_th = 1;
  int max_redraws = 256;
  bool strict_pool = true;  // require the 7/6/6 pool
  SceneLayout layout;
};

// Throws ConfigError when the pool is malformed.
inline void validate_pool(const AssetPool& pool, bool strict) {
  auto check_desc = [](const AssetSpec& a) {
    if (a.description.empty()) throw ConfigError("asset '" + a.id + "' has no description");
    if (a.shape.empty()) throw ConfigError("asset '" + a.id + "' has no shape");
  };
  int human = 0, robot = 0;
  for (const auto& b : pool.bodies) {
    check_desc(b);
    if (b.kind != AssetKind::Body) throw ConfigError("asset '" + b.id + "' is not a body");
    if (!b.setting) throw ConfigError("body '" + b.id + "' has no setting");
    if (!b.surface) throw ConfigError("body '" + b.id + "' has no mark surface");
    if (b.surface->x_min > b.surface->x_max || b.surface->z_min > b.surface->z_max) {
      throw ConfigError("body '" + b.id + "' has an empty mark surface");
    }
    (*b.setting == Setting::Human ? human : robot) += 1;
  }
  for (const auto& h : pool.hands) {
    check_desc(h.human);
    check_desc(h.robot);
    if (h.human.setting != Setting::Human || h.robot.setting != Setting::Robot) {
      throw ConfigError("hand '" + h.id + "' variants carry the wrong settings");
    }
  }
  for (const auto& m : pool.marks) {
    check_desc(m);
    if (m.kind != AssetKind::Mark) throw ConfigError("asset '" + m.id + "' is not a mark");
  }
  if (strict && (pool.bodies.size() != 7 || human != 4 || robot != 3 || pool.hands.size() != 6 ||
                 pool.marks.size() != 6)) {
    throw ConfigError("asset pool must hold 7 bodies (4 human, 3 robot), 6 hands and 6 marks");
  }
}

inline Vec3i body_to_world(const BodyPose& pose, Vec3i local) {
  return pose.position + rotate_to_world(local, pose.facing);
}

inline MirrorPlane mirror_for(const SceneLayout& layout) {
  const BodyPose& pose = layout.body_pose;
  const Vec3i ahead = rotate_to_world(Vec3i{0, layout.mirror_distance, 0}, pose.facing);
  MirrorPlane m;
  m.axis = (pose.facing == Facing::PosY || pose.facing == Facing::NegY) ? Axis::Y : Axis::X;
  m.offset = (pose.position + ahead)[m.axis];
  const Axis lateral = m.axis == Axis::Y ? Axis::X : Axis::Y;
  m.u_min = pose.position[lateral] - layout.mirror_half_width;
  m.u_max = pose.position[lateral] + layout.mirror_half_width;
  m.v_min = pose.position.z + layout.mirror_z_min;
  m.v_max = pose.position.z + layout.mirror_z_max;
  return m;
}

inline CameraPose camera_for(const SceneLayout& layout) {
  const Vec3d origin = to_vec3d(layout.body_pose.position);
  const Facing f = layout.body_pose.facing;
  return {origin + rotate_to_world(layout.camera_eye, f),
          origin + rotate_to_world(layout.camera_target, f), {0, 0, 1}, layout.camera_fov_deg};
}

inline Bounds workspace_for(const SceneLayout& layout) {
  const int h = layout.workspace_half;
  const Vec3i p = layout.body_pose.position;
  return {{p.x - h, p.y - h, p.z - h}, {p.x + h, p.y + h, p.z + h}};
}

// True iff `anchor` lies on the body's front face inside its mark surface.
inline bool on_mark_surface(const SceneSpec& spec, Vec3i anchor) {
  if (!spec.body.surface) return false;
  const MarkSurface& s = *spec.body.surface;
  for (int x = s.x_min; x <= s.x_max; ++x) {
    for (int z = s.z_min; z <= s.z_max; ++z) {
      if (body_to_world(spec.body_pose, {x, s.front_y, z}) == anchor) return true;
    }
  }
  return false;
}

// Lists every violated scene invariant; empty means valid.
inline std::vector<std::string> validate_scene(const SceneSpec& spec, int d_th,
                                               const RenderConfig& render_cfg = {}) {
  std::vector<std::string> problems;
  if (spec.scene_id.empty()) problems.push_back("empty scene_id");
  if (!spec.body.setting || !spec.hand.setting || *spec.body.setting != *spec.hand.setting) {
    problems.push_back("body and hand settings disagree");
  }
  if (!is_valid(spec.mirror)) problems.push_back("mirror extent is degenerate");
  if (!spec.workspace.contains(spec.hand_init)) problems.push_back("hand_init outside workspace");
  if (!spec.workspace.contains(spec.mark_anchor)) problems.push_back("mark_anchor outside workspace");
  if (!on_mark_surface(spec, spec.mark_anchor)) {
    problems.push_back("mark_anchor is not on the body's mirror-facing surface");
  }
  if (manhattan_distance(spec.hand_init, spec.mark_anchor) <= d_th) {
    problems.push_back("initial distance does not exceed the success threshold");
  }
  if (spec.body.description.empty() || spec.hand.description.empty() ||
      spec.mark.description.empty()) {
    problems.push_back("missing asset description");
  }
  try {
    if (!validate_mark_hidden(spec, render_cfg)) {
      problems.push_back("mark is visible without the mirror");
    }
  } catch (const RenderConfigError& e) {
    problems.push_back(std::string("render configuration: ") + e.what());
  }
  return problems;
}

namespace detail {

inline bool selected(const std::vector<std::string>& ids, const std::string& id) {
  return ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end();
}

inline SceneSpec draw_scene(const AssetSpec& body, const HandType& hand, const AssetSpec& mark,
                            const SamplingPlan& plan, Rng& rng, std::string scene_id) {
  const SceneLayout& L = plan.layout;
  const MarkSurface& s = *body.surface;
  const Setting setting = *body.setting;
  SceneSpec spec;
  spec.scene_id = std::move(scene_id);
  spec.body = body;
  spec.hand = hand.variant(setting);
  spec.mark = mark;
  spec.body_pose = L.body_pose;
  spec.mirror = mirror_for(L);
  spec.workspace = workspace_for(L);
  spec.camera = camera_for(L);
  const int mx = static_cast<int>(uniform_int(rng, s.x_min, s.x_max));
  const int mz = static_cast<int>(uniform_int(rng, s.z_min, s.z_max));
  spec.mark_anchor = body_to_world(L.body_pose, {mx, s.front_y, mz});
  const Vec3i h{static_cast<int>(uniform_int(rng, L.hand_min.x, L.hand_max.x)),
                static_cast<int>(uniform_int(rng, L.hand_min.y, L.hand_max.y)),
                static_cast<int>(uniform_int(rng, L.hand_min.z, L.hand_max.z))};
  spec.hand_init = body_to_world(L.body_pose, h);
  spec.descriptions = {spec.body.description, spec.hand.description, spec.mark.description,
                       L.environment};
  return spec;
}

}  // namespace detail

// Deterministic in (pool, plan, seed). Each combination draws from its own
// stream, so filtering one dimension never shifts the poses of another.
inline std::vector<SceneSpec> generate_scenes(const AssetPool& pool, const SamplingPlan& plan,
                                              std::uint64_t seed) {
  validate_pool(pool, plan.strict_pool);
  struct Combo {
    const AssetSpec* body;
    const HandType* hand;
    const AssetSpec* mark;
  };
  std::vector<Combo> combos;
  for (const auto& b : pool.bodies) {
    if (plan.setting && *b.setting != *plan.setting) continue;
    if (!detail::selected(plan.body_ids, b.id)) continue;
    for (const auto& h : pool.hands) {
      if (!detail::selected(plan.hand_ids, h.id)) continue;
      for (const auto& m : pool.marks) {
        if (!detail::selected(plan.mark_ids, m.id)) continue;
        combos.push_back({&b, &h, &m});
      }
    }
  }

  auto make = [&](const Combo& c, int pose_index, const std::string& tag) {
    const std::string base = c.body->id + "-" + c.hand->id + "-" + c.mark->id;
    const std::string id = base + "-p" + std::to_string(pose_index);
    Rng rng(derive_seed(seed, tag.empty() ? id : tag));
    for (int attempt = 0; attempt < plan.max_redraws; ++attempt) {
      SceneSpec spec = detail::draw_scene(*c.body, *c.hand, *c.mark, plan, rng, id);
      if (validate_scene(spec, plan.d_th).empty()) return spec;
    }
    throw SamplingExhausted("no valid pose for " + id + " within " +
                            std::to_string(plan.max_redraws) + " draws");
  };

  std::vector<SceneSpec> out;
  if (plan.mode == SamplingMode::Enumerate) {
    for (const auto& c : combos) {
      for (int k = 0; k < plan.poses_per_combination; ++k) out.push_back(make(c, k, ""));
    }
  } else {
    if (combos.empty()) return out;
    Rng pick(derive_seed(seed, "scene-sample"));
    for (int i = 0; i < plan.sample_count; ++i) {
      const auto& c = combos[static_cast<std::size_t>(
          uniform_int(pick, 0, static_cast<std::int64_t>(combos.size()) - 1))];
      out.push_back(make(c, i, "sample-" + std::to_string(i)));
    }
  }
  return out;
}

}  // namespace mirrorbench
