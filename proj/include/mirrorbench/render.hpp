#pragma once

// Software rasterizer for mirror scenes.
//
// Frames are composed in three layers, each drawn back to front with the
// painter's algorithm (no depth buffer):
//   1. direct primitives lying behind the mirror plane,
//   2. the mirror rectangle with the reflected copies of every primitive on
//      the camera side, clipped to the rectangle's projection and tinted,
//   3. direct primitives on the camera side of the mirror.
// Every primitive is reduced to a convex screen-space polygon and filled by
// pixel-centre sampling, so identical input gives byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mirrorbench/errors.hpp"
#include "mirrorbench/reflection.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  Image() = default;
  Image(int w, int h, Rgb fill) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
      rgb[i] = fill.r;
      rgb[i + 1] = fill.g;
      rgb[i + 2] = fill.b;
    }
  }

  Rgb at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    rgb[i] = c.r;
    rgb[i + 1] = c.g;
    rgb[i + 2] = c.b;
  }
  friend bool operator==(const Image&, const Image&) = default;
};

struct RenderConfig {
  int width = 1024;
  int height = 1024;
  bool mirror_pass = true;
  Rgb background{92, 96, 104};
  Rgb mirror_color{168, 186, 198};
  Rgb mirror_tint{205, 225, 240};
  std::uint8_t tint_alpha = 40;  // 0 disables tinting
};

inline Rgb blend(Rgb c, Rgb tint, std::uint8_t alpha) {
  auto mix = [alpha](int a, int b) {
    return static_cast<std::uint8_t>((a * (255 - alpha) + b * alpha + 127) / 255);
  };
  return {mix(c.r, tint.r), mix(c.g, tint.g), mix(c.b, tint.b)};
}

// Colour a primitive of colour `c` takes when seen in the mirror.
inline Rgb mirrored_color(Rgb c, const RenderConfig& cfg) {
  return blend(c, cfg.mirror_tint, cfg.tint_alpha);
}

// Ground truth attached to an observation. Only trusted agents and tests may
// read it; it is never placed into remote or human requests.
struct GroundTruth {
  Vec3i hand_pos;
  Vec3i mark_anchor;
  MirrorPlane mirror;
  int distance = 0;
};

struct Observation {
  Image frame;
  int step_index = 0;
  GroundTruth sidecar;
};

enum class Role : std::uint8_t { Body, Hand, Mark };

struct WorldPrimitive {
  Primitive prim;
  Role role = Role::Body;
};

// Per-pixel provenance, used by the mark-visibility check.
enum Label : std::uint8_t {
  kLabelNone = 0,
  kLabelBody = 1,
  kLabelHand = 2,
  kLabelMark = 3,
  kLabelMirror = 4,
  kLabelReflected = 8,  // or-ed with a role label
};

namespace detail {

inline Primitive place(const Primitive& local, Vec3d origin, Facing facing) {
  Primitive p = local;
  p.center = origin + rotate_to_world(local.center, facing);
  p.end = origin + rotate_to_world(local.end, facing);
  if (facing == Facing::NegX || facing == Facing::PosX) {
    std::swap(p.half_extents.x, p.half_extents.y);
  }
  return p;
}

inline Primitive reflected(const Primitive& p, const MirrorPlane& m) {
  Primitive r = p;
  r.center = reflect_point(p.center, m);
  r.end = reflect_point(p.end, m);
  return r;
}

struct Point2 {
  double x;
  double y;
};

inline double cross2(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns a counter-clockwise hull.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

inline bool inside_convex(std::span<const Point2> poly, Point2 p) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (cross2(poly[i], poly[(i + 1) % poly.size()], p) < 0) return false;
  }
  return true;
}

}  // namespace detail

// Pinhole projection from a fixed camera.
class Projector {
 public:
  Projector(const CameraPose& cam, int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0 || width > 16384 || height > 16384) {
      throw RenderConfigError("resolution must be within 1..16384 per side");
    }
    if (!(cam.fov_y_deg > 0.0 && cam.fov_y_deg < 180.0)) {
      throw RenderConfigError("camera fov_y_deg must lie in (0, 180)");
    }
    Vec3d fwd = cam.target - cam.eye;
    const double len = std::sqrt(dot(fwd, fwd));
    if (!(len > 0.0)) throw RenderConfigError("camera eye and target coincide");
    forward_ = (1.0 / len) * fwd;
    Vec3d right = cross(forward_, cam.up);
    const double rlen = std::sqrt(dot(right, right));
    if (!(rlen > 1e-9)) throw RenderConfigError("camera up vector is parallel to view direction");
    right_ = (1.0 / rlen) * right;
    up_ = cross(right_, forward_);
    eye_ = cam.eye;
    focal_ = (height * 0.5) / std::tan(cam.fov_y_deg * M_PI / 360.0);
  }

  double depth(Vec3d p) const { return dot(p - eye_, forward_); }

  detail::Point2 project(Vec3d p) const {
    const Vec3d d = p - eye_;
    const double z = dot(d, forward_);
    return {width_ * 0.5 + focal_ * dot(d, right_) / z, height_ * 0.5 - focal_ * dot(d, up_) / z};
  }

  double focal() const { return focal_; }
  int width() const { return width_; }
  int height() const { return height_; }

  static constexpr double kNear = 0.05;

 private:
  int width_;
  int height_;
  Vec3d eye_;
  Vec3d forward_;
  Vec3d right_;
  Vec3d up_;
  double focal_ = 1.0;
};

namespace detail {

inline constexpr int kCircleSegments = 32;

inline void circle_points(const Projector& proj, Vec3d c, double r, std::vector<Point2>& out) {
  const Point2 pc = proj.project(c);
  const double pr = r * proj.focal() / proj.depth(c);
  for (int i = 0; i < kCircleSegments; ++i) {
    const double a = 2.0 * M_PI * i / kCircleSegments;
    out.push_back({pc.x + pr * std::cos(a), pc.y + pr * std::sin(a)});
  }
}

// Painter's items. Boxes contribute one quad per camera-facing face, keyed by
// the face centre depth; spheres and capsules contribute one outline keyed by
// their nearest depth.
struct Patch {
  double key;
  std::vector<Point2> poly;
};

inline void box_patches(const Projector& proj, const Primitive& p, Vec3d eye,
                        std::vector<Patch>& out) {
  const Vec3d h = p.half_extents;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {-1, 1}) {
      Vec3d normal;
      normal[static_cast<Axis>(axis)] = sign;
      Vec3d fc = p.center;
      fc[static_cast<Axis>(axis)] += sign * h[static_cast<Axis>(axis)];
      if (dot(normal, eye - fc) <= 0.0) continue;  // back face
      const Axis a1 = static_cast<Axis>((axis + 1) % 3);
      const Axis a2 = static_cast<Axis>((axis + 2) % 3);
      std::vector<Point2> pts;
      bool ok = true;
      for (int i = 0; i < 4; ++i) {
        Vec3d c = fc;
        c[a1] += (i & 1) ? h[a1] : -h[a1];
        c[a2] += (i & 2) ? h[a2] : -h[a2];
        if (proj.depth(c) <= Projector::kNear) ok = false;
        pts.push_back(proj.project(c));
      }
      if (!ok) continue;
      out.push_back({proj.depth(fc), convex_hull(std::move(pts))});
    }
  }
}

inline void primitive_patches(const Projector& proj, const Primitive& p, Vec3d eye,
                              std::vector<Patch>& out) {
  switch (p.kind) {
    case PrimitiveKind::Box: box_patches(proj, p, eye, out); return;
    case PrimitiveKind::Sphere: {
      const double key = proj.depth(p.center) - p.radius;
      if (key <= Projector::kNear) return;
      std::vector<Point2> pts;
      circle_points(proj, p.center, p.radius, pts);
      out.push_back({key, convex_hull(std::move(pts))});
      return;
    }
    case PrimitiveKind::Capsule: {
      const double key = std::min(proj.depth(p.center), proj.depth(p.end)) - p.radius;
      if (key <= Projector::kNear) return;
      std::vector<Point2> pts;
      circle_points(proj, p.center, p.radius, pts);
      circle_points(proj, p.end, p.radius, pts);
      out.push_back({key, convex_hull(std::move(pts))});
      return;
    }
  }
}

struct HostFace {
  bool visible = false;
  double key = 0;
};

// Face of box `p` containing `point`, if any.
inline std::optional<HostFace> host_face(const Projector& proj, const Primitive& p, Vec3d point,
                                         Vec3d eye) {
  if (p.kind != PrimitiveKind::Box) return std::nullopt;
  constexpr double kEps = 1e-9;
  const Vec3d h = p.half_extents;
  for (int axis = 0; axis < 3; ++axis) {
    const Axis a = static_cast<Axis>(axis);
    const Axis a1 = static_cast<Axis>((axis + 1) % 3);
    const Axis a2 = static_cast<Axis>((axis + 2) % 3);
    if (std::abs(point[a1] - p.center[a1]) > h[a1] + kEps) continue;
    if (std::abs(point[a2] - p.center[a2]) > h[a2] + kEps) continue;
    for (int sign : {-1, 1}) {
      Vec3d fc = p.center;
      fc[a] += sign * h[a];
      if (std::abs(point[a] - fc[a]) > kEps) continue;
      Vec3d normal;
      normal[a] = sign;
      return HostFace{dot(normal, eye - fc) > 0.0, proj.depth(fc)};
    }
  }
  return std::nullopt;
}

// Closed x-interval covered by a convex polygon on the horizontal line y.
inline bool row_span(std::span<const Point2> poly, double y, double& xl, double& xr) {
  xl = INFINITY;
  xr = -INFINITY;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    if ((y < a.y && y < b.y) || (y > a.y && y > b.y)) continue;
    if (a.y == b.y) {
      xl = std::min({xl, a.x, b.x});
      xr = std::max({xr, a.x, b.x});
    } else {
      const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
      xl = std::min(xl, x);
      xr = std::max(xr, x);
    }
  }
  return xl <= xr;
}

class Canvas {
 public:
  Canvas(Image& img, std::vector<std::uint8_t>* labels) : img_(img), labels_(labels) {}

  // Fills pixels whose centre lies in `poly` (and in `clip`, when given).
  template <typename Shade>
  void fill(std::span<const Point2> poly, std::span<const Point2> clip, std::uint8_t label,
            Shade&& shade) {
    if (poly.size() < 3) return;
    double y0 = INFINITY, y1 = -INFINITY;
    for (auto q : poly) {
      y0 = std::min(y0, q.y);
      y1 = std::max(y1, q.y);
    }
    const int py0 = std::max(0, static_cast<int>(std::ceil(y0 - 0.5)));
    const int py1 = std::min(img_.height - 1, static_cast<int>(std::floor(y1 - 0.5)));
    for (int y = py0; y <= py1; ++y) {
      const double cy = y + 0.5;
      double xl, xr;
      if (!row_span(poly, cy, xl, xr)) continue;
      if (!clip.empty()) {
        double cl, cr;
        if (clip.size() < 3 || !row_span(clip, cy, cl, cr)) continue;
        xl = std::max(xl, cl);
        xr = std::min(xr, cr);
      }
      const int px0 = std::max(0, static_cast<int>(std::ceil(xl - 0.5)));
      const int px1 = std::min(img_.width - 1, static_cast<int>(std::floor(xr - 0.5)));
      for (int x = px0; x <= px1; ++x) {
        img_.set(x, y, shade(img_.at(x, y)));
        if (labels_) (*labels_)[static_cast<std::size_t>(y) * img_.width + x] = label;
      }
    }
  }

 private:
  Image& img_;
  std::vector<std::uint8_t>* labels_;
};

}  // namespace detail

// World-frame primitives of a scene for a given hand position.
inline std::vector<WorldPrimitive> world_primitives(const SceneSpec& spec, Vec3i hand_pos) {
  std::vector<WorldPrimitive> out;
  const Facing f = spec.body_pose.facing;
  for (const auto& p : spec.body.shape) {
    out.push_back({detail::place(p, to_vec3d(spec.body_pose.position), f), Role::Body});
  }
  for (const auto& p : spec.mark.shape) {
    out.push_back({detail::place(p, to_vec3d(spec.mark_anchor), f), Role::Mark});
  }
  for (const auto& p : spec.hand.shape) {
    out.push_back({detail::place(p, to_vec3d(hand_pos), f), Role::Hand});
  }
  return out;
}

// Screen polygon of the mirror rectangle.
inline std::vector<detail::Point2> mirror_polygon(const Projector& proj, const MirrorPlane& m) {
  const auto [ua, va] = in_plane_axes(m.axis);
  std::vector<detail::Point2> pts;
  for (int i = 0; i < 4; ++i) {
    Vec3d c;
    c[m.axis] = m.offset;
    c[ua] = (i & 1) ? m.u_max : m.u_min;
    c[va] = (i & 2) ? m.v_max : m.v_min;
    if (proj.depth(c) <= Projector::kNear) return {};
    pts.push_back(proj.project(c));
  }
  return detail::convex_hull(std::move(pts));
}

inline std::uint8_t role_label(Role r) {
  switch (r) {
    case Role::Body: return kLabelBody;
    case Role::Hand: return kLabelHand;
    case Role::Mark: return kLabelMark;
  }
  return kLabelNone;
}

// Renders the scene with the hand at `hand_pos`. When `labels` is non-null it
// receives one provenance label per pixel.
inline Image render_frame(const SceneSpec& spec, Vec3i hand_pos, const RenderConfig& cfg,
                          std::vector<std::uint8_t>* labels = nullptr) {
  const Projector proj(spec.camera, cfg.width, cfg.height);
  Image img(cfg.width, cfg.height, cfg.background);
  if (labels) labels->assign(static_cast<std::size_t>(cfg.width) * cfg.height, kLabelNone);
  detail::Canvas canvas(img, labels);

  const auto prims = world_primitives(spec, hand_pos);
  const MirrorPlane& m = spec.mirror;
  const Vec3d eye = spec.camera.eye;
  const double eye_side = eye[m.axis] - m.offset;
  auto camera_side = [&](const Primitive& p) {
    return (p.center[m.axis] - m.offset) * eye_side > 0.0;
  };

  // Marks are decals: they are drawn right after the body face that carries
  // them, and only when that face looks toward the camera.
  struct Item {
    double key;
    int layer;
    std::size_t order;
    std::vector<detail::Point2> poly;
    Rgb color;
    std::uint8_t label;
  };
  auto collect = [&](std::vector<Item>& items, const Primitive& p, Role role, bool mirrored) {
    const auto label =
        static_cast<std::uint8_t>(role_label(role) | (mirrored ? kLabelReflected : 0));
    std::vector<detail::Patch> patches;
    detail::primitive_patches(proj, p, eye, patches);
    std::optional<double> decal_key;
    if (role == Role::Mark) {
      const Vec3d anchor =
          mirrored ? reflect_point(to_vec3d(spec.mark_anchor), m) : to_vec3d(spec.mark_anchor);
      for (const auto& wp : prims) {
        if (wp.role != Role::Body) continue;
        const Primitive host = mirrored ? detail::reflected(wp.prim, m) : wp.prim;
        if (auto face = detail::host_face(proj, host, anchor, eye)) {
          if (!face->visible) return;
          decal_key = face->key;
          break;
        }
      }
    }
    for (auto& patch : patches) {
      items.push_back({decal_key.value_or(patch.key), decal_key ? 1 : 0, items.size(),
                       std::move(patch.poly), p.color, label});
    }
  };
  auto draw_sorted = [&](std::vector<Item>& items, std::span<const detail::Point2> clip) {
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.key != b.key) return a.key > b.key;
      if (a.layer != b.layer) return a.layer < b.layer;
      return a.order < b.order;
    });
    for (const auto& it : items) {
      const Rgb color = it.color;
      canvas.fill(it.poly, clip, it.label, [color](Rgb) { return color; });
    }
  };

  std::vector<Item> behind, front, mirrored;
  for (const auto& wp : prims) {
    const bool cam_side = camera_side(wp.prim);
    collect((!cfg.mirror_pass || cam_side) ? front : behind, wp.prim, wp.role, false);
    if (cfg.mirror_pass && cam_side) collect(mirrored, detail::reflected(wp.prim, m), wp.role, true);
  }

  draw_sorted(behind, {});
  if (cfg.mirror_pass) {
    const auto quad = mirror_polygon(proj, m);
    if (!quad.empty()) {
      const Rgb base = cfg.mirror_color;
      canvas.fill(quad, {}, kLabelMirror, [base](Rgb) { return base; });
      draw_sorted(mirrored, quad);
      if (cfg.tint_alpha != 0) {
        // Tint only; labels stay as drawn.
        detail::Canvas tint_canvas(img, nullptr);
        const Rgb tint = cfg.mirror_tint;
        const std::uint8_t alpha = cfg.tint_alpha;
        tint_canvas.fill(quad, {}, 0, [tint, alpha](Rgb c) { return blend(c, tint, alpha); });
      }
    }
  }
  draw_sorted(front, {});
  return img;
}

inline Observation render(const SceneState& state, const RenderConfig& cfg = {}) {
  const SceneSpec& spec = *state.spec;
  Observation obs;
  obs.frame = render_frame(spec, state.hand_pos, cfg);
  obs.step_index = state.step_index;
  obs.sidecar = {state.hand_pos, spec.mark_anchor, spec.mirror, state.distance()};
  return obs;
}

// True iff the mark is fully occluded in the direct (mirror-less) view.
inline bool validate_mark_hidden(const SceneSpec& spec, const RenderConfig& base = {}) {
  RenderConfig cfg = base;
  cfg.mirror_pass = false;
  SceneSpec bare = spec;
  bare.hand.shape.clear();  // the hand may cover the mark but never reveals it
  std::vector<std::uint8_t> labels;
  render_frame(bare, spec.hand_init, cfg, &labels);
  return std::none_of(labels.begin(), labels.end(),
                      [](std::uint8_t l) { return l == kLabelMark; });
}

}  // namespace mirrorbench
