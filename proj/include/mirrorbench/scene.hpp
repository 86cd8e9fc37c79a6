#pragma once

// Scene geometry, assets, actions and the lattice state of one mirror scene.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorbench/errors.hpp"

namespace mirrorbench {

// ---------------------------------------------------------------------------
// Lattice and continuous vectors
// ---------------------------------------------------------------------------

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

struct Vec3i {
  int x = 0;
  int y = 0;
  int z = 0;

  int operator[](Axis a) const { return a == Axis::X ? x : (a == Axis::Y ? y : z); }
  int& operator[](Axis a) { return a == Axis::X ? x : (a == Axis::Y ? y : z); }

  friend Vec3i operator+(Vec3i a, Vec3i b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3i operator-(Vec3i a, Vec3i b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend bool operator==(const Vec3i&, const Vec3i&) = default;
};

struct Vec3d {
  double x = 0;
  double y = 0;
  double z = 0;

  double operator[](Axis a) const { return a == Axis::X ? x : (a == Axis::Y ? y : z); }
  double& operator[](Axis a) { return a == Axis::X ? x : (a == Axis::Y ? y : z); }

  friend Vec3d operator+(Vec3d a, Vec3d b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3d operator-(Vec3d a, Vec3d b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3d operator*(double s, Vec3d v) { return {s * v.x, s * v.y, s * v.z}; }
  friend bool operator==(const Vec3d&, const Vec3d&) = default;
};

inline Vec3d to_vec3d(Vec3i v) {
  return {static_cast<double>(v.x), static_cast<double>(v.y), static_cast<double>(v.z)};
}

inline double dot(Vec3d a, Vec3d b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3d cross(Vec3d a, Vec3d b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline int manhattan_distance(Vec3i p, Vec3i q) {
  return std::abs(p.x - q.x) + std::abs(p.y - q.y) + std::abs(p.z - q.z);
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class Action : std::uint8_t { PosX = 0, NegX, PosY, NegY, PosZ, NegZ };

inline constexpr std::array<Action, 6> kAllActions = {Action::PosX, Action::NegX, Action::PosY,
                                                      Action::NegY, Action::PosZ, Action::NegZ};

inline Vec3i unit_vector(Action a) {
  switch (a) {
    case Action::PosX: return {1, 0, 0};
    case Action::NegX: return {-1, 0, 0};
    case Action::PosY: return {0, 1, 0};
    case Action::NegY: return {0, -1, 0};
    case Action::PosZ: return {0, 0, 1};
    case Action::NegZ: return {0, 0, -1};
  }
  return {};
}

inline Action inverse(Action a) {
  switch (a) {
    case Action::PosX: return Action::NegX;
    case Action::NegX: return Action::PosX;
    case Action::PosY: return Action::NegY;
    case Action::NegY: return Action::PosY;
    case Action::PosZ: return Action::NegZ;
    case Action::NegZ: return Action::PosZ;
  }
  return a;
}

inline Action action_along(Axis axis, bool positive) {
  return static_cast<Action>(static_cast<int>(axis) * 2 + (positive ? 0 : 1));
}

// Canonical token, e.g. "+X".
inline std::string_view to_token(Action a) {
  static constexpr std::array<std::string_view, 6> kTokens = {"+X", "-X", "+Y", "-Y", "+Z", "-Z"};
  return kTokens[static_cast<std::size_t>(a)];
}

inline std::optional<Action> action_from_token(std::string_view tok) {
  for (Action a : kAllActions) {
    if (to_token(a) == tok) return a;
  }
  return std::nullopt;
}

inline std::string_view to_string(Axis a) {
  return a == Axis::X ? "X" : (a == Axis::Y ? "Y" : "Z");
}

inline std::optional<Axis> axis_from_string(std::string_view s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  if (s == "Z" || s == "z") return Axis::Z;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Assets
// ---------------------------------------------------------------------------

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

enum class PrimitiveKind : std::uint8_t { Box, Sphere, Capsule };

// One solid in an asset's local frame. Boxes use `center` and `half_extents`;
// spheres use `center` and `radius`; capsules span `center`..`end` with `radius`.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::Box;
  Vec3d center;
  Vec3d end;
  Vec3d half_extents;
  double radius = 0;
  Rgb color;
  friend bool operator==(const Primitive&, const Primitive&) = default;
};

enum class AssetKind : std::uint8_t { Body, Hand, Mark };
enum class Setting : std::uint8_t { Human, Robot };

inline std::string_view to_string(Setting s) { return s == Setting::Human ? "Human" : "Robot"; }
inline std::string_view to_string(AssetKind k) {
  return k == AssetKind::Body ? "Body" : (k == AssetKind::Hand ? "Hand" : "Mark");
}

// Local-frame rectangle on the body's front face where marks may be placed.
// The face is the plane y = front_y in the body frame (+Y faces the mirror).
struct MarkSurface {
  int front_y = 1;
  int x_min = 0;
  int x_max = 0;
  int z_min = 0;
  int z_max = 0;
  friend bool operator==(const MarkSurface&, const MarkSurface&) = default;
};

struct AssetSpec {
  AssetKind kind = AssetKind::Body;
  std::string id;
  std::optional<Setting> setting;  // bodies and hands only
  std::vector<Primitive> shape;
  std::string description;
  std::optional<MarkSurface> surface;  // bodies only
  friend bool operator==(const AssetSpec&, const AssetSpec&) = default;
};

// A hand type exists in an anthropomorphic and a robotic variant; scenes pick
// the variant matching the body's setting.
struct HandType {
  std::string id;
  AssetSpec human;
  AssetSpec robot;

  const AssetSpec& variant(Setting s) const { return s == Setting::Human ? human : robot; }
};

struct AssetPool {
  std::vector<AssetSpec> bodies;
  std::vector<HandType> hands;
  std::vector<AssetSpec> marks;
};

// ---------------------------------------------------------------------------
// Mirror, camera, body pose
// ---------------------------------------------------------------------------

// Axis-aligned planar mirror: the plane `axis == offset`, bounded by a closed
// rectangle over the two remaining axes (in ascending axis order).
struct MirrorPlane {
  Axis axis = Axis::Y;
  int offset = 0;
  int u_min = 0, u_max = 0;
  int v_min = 0, v_max = 0;
  friend bool operator==(const MirrorPlane&, const MirrorPlane&) = default;
};

inline std::array<Axis, 2> in_plane_axes(Axis normal) {
  switch (normal) {
    case Axis::X: return {Axis::Y, Axis::Z};
    case Axis::Y: return {Axis::X, Axis::Z};
    case Axis::Z: return {Axis::X, Axis::Y};
  }
  return {Axis::X, Axis::Y};
}

inline bool is_valid(const MirrorPlane& m) { return m.u_max > m.u_min && m.v_max > m.v_min; }

struct CameraPose {
  Vec3d eye;
  Vec3d target;
  Vec3d up{0, 0, 1};
  double fov_y_deg = 60.0;
  friend bool operator==(const CameraPose&, const CameraPose&) = default;
};

// Horizontal facing of the body; +Y in the body frame maps to this direction.
enum class Facing : std::uint8_t { PosY = 0, NegX = 1, NegY = 2, PosX = 3 };

inline std::string_view to_string(Facing f) {
  switch (f) {
    case Facing::PosY: return "+Y";
    case Facing::NegX: return "-X";
    case Facing::NegY: return "-Y";
    case Facing::PosX: return "+X";
  }
  return "+Y";
}

inline std::optional<Facing> facing_from_string(std::string_view s) {
  if (s == "+Y") return Facing::PosY;
  if (s == "-X") return Facing::NegX;
  if (s == "-Y") return Facing::NegY;
  if (s == "+X") return Facing::PosX;
  return std::nullopt;
}

// Quarter turns about +Z taking the body frame to the world frame.
template <typename V>
V rotate_to_world(V v, Facing f) {
  for (int k = 0; k < static_cast<int>(f); ++k) {
    auto x = v.x;
    v.x = -v.y;
    v.y = x;
  }
  return v;
}

struct BodyPose {
  Vec3i position;
  Facing facing = Facing::PosY;
  friend bool operator==(const BodyPose&, const BodyPose&) = default;
};

struct Bounds {
  Vec3i min;
  Vec3i max;
  friend bool operator==(const Bounds&, const Bounds&) = default;

  bool contains(Vec3i p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
};

struct SceneDescriptions {
  std::string body;
  std::string hand;
  std::string mark;
  std::string environment;
  friend bool operator==(const SceneDescriptions&, const SceneDescriptions&) = default;
};

struct SceneSpec {
  std::string scene_id;
  AssetSpec body;
  AssetSpec hand;
  AssetSpec mark;
  MirrorPlane mirror;
  BodyPose body_pose;
  Vec3i mark_anchor;
  Vec3i hand_init;
  Bounds workspace;
  CameraPose camera;
  SceneDescriptions descriptions;
  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;

  Setting setting() const { return body.setting.value_or(Setting::Human); }
};

// ---------------------------------------------------------------------------
// Mutable state
// ---------------------------------------------------------------------------

enum class MoveOutcome : std::uint8_t { Moved, ClampedAtBound };

struct SceneState {
  const SceneSpec* spec = nullptr;
  Vec3i hand_pos;
  int step_index = 0;

  static SceneState initial(const SceneSpec& s) { return SceneState{&s, s.hand_init, 0}; }
  int distance() const { return manhattan_distance(hand_pos, spec->mark_anchor); }
};

struct StepResult {
  SceneState state;
  MoveOutcome outcome = MoveOutcome::Moved;
};

// Moves the hand one lattice unit. A move that would leave the workspace keeps
// the hand in place and reports ClampedAtBound; the step still counts.
inline StepResult apply_action(const SceneState& state, Action a) {
  SceneState next = state;
  Vec3i target = state.hand_pos + unit_vector(a);
  MoveOutcome outcome = MoveOutcome::Moved;
  if (state.spec->workspace.contains(target)) {
    next.hand_pos = target;
  } else {
    outcome = MoveOutcome::ClampedAtBound;
  }
  ++next.step_index;
  return {next, outcome};
}

}  // namespace mirrorbench
