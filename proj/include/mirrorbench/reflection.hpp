#pragma once

// Single-bounce reflection in an axis-aligned planar mirror.

#include "mirrorbench/scene.hpp"

namespace mirrorbench {

struct ReflectedPoint {
  Vec3i source;
  Vec3i image;
  bool visible_in_mirror = false;
};

inline Vec3i reflect_point(Vec3i p, const MirrorPlane& mirror) {
  p[mirror.axis] = 2 * mirror.offset - p[mirror.axis];
  return p;
}

inline Vec3d reflect_point(Vec3d p, const MirrorPlane& mirror) {
  p[mirror.axis] = 2.0 * mirror.offset - p[mirror.axis];
  return p;
}

inline bool on_plane(Vec3i p, const MirrorPlane& mirror) { return p[mirror.axis] == mirror.offset; }

// True iff the segment from the camera eye to the virtual image of `p` crosses
// the mirror rectangle. The rectangle is closed: edge hits count.
inline bool mirror_visibility(Vec3d p, const MirrorPlane& mirror, const CameraPose& camera) {
  const Vec3d image = reflect_point(p, mirror);
  const Axis n = mirror.axis;
  const double plane = mirror.offset;
  const double e = camera.eye[n] - plane;
  const double i = image[n] - plane;
  // Eye and image must lie on opposite sides (or the image on the plane).
  if (e == 0.0 || ((e > 0.0) == (i > 0.0) && i != 0.0)) return false;
  const double t = e / (e - i);
  const auto [ua, va] = in_plane_axes(n);
  const double u = camera.eye[ua] + (image[ua] - camera.eye[ua]) * t;
  const double v = camera.eye[va] + (image[va] - camera.eye[va]) * t;
  return u >= mirror.u_min && u <= mirror.u_max && v >= mirror.v_min && v <= mirror.v_max;
}

inline bool mirror_visibility(Vec3i p, const MirrorPlane& mirror, const CameraPose& camera) {
  return mirror_visibility(to_vec3d(p), mirror, camera);
}

inline ReflectedPoint reflect(Vec3i p, const MirrorPlane& mirror, const CameraPose& camera) {
  return {p, reflect_point(p, mirror), mirror_visibility(p, mirror, camera)};
}

}  // namespace mirrorbench
