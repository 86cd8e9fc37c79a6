#include <gtest/gtest.h>

#include <random>

#include "mirrorbench/reflection.hpp"

using namespace mirrorbench;

namespace {

MirrorPlane plane_x(int offset) { return {Axis::X, offset, -10, 10, -10, 10}; }

// Independent segment/rectangle test for a plane y = offset with extent
// x in [u_min, u_max], z in [v_min, v_max], done in exact integer arithmetic:
// the crossing point is eye + (img - eye) * t with t = (off - ey) / (iy - ey).
bool crosses_y_rect(Vec3i eye, Vec3i img, int off, int u0, int u1, int v0, int v1) {
  const long den = img.y - eye.y;
  if (den == 0) return false;
  const long num = off - eye.y;
  long n = num, d = den;
  if (d < 0) n = -n, d = -d;
  if (n < 0 || n > d) return false;
  const long xn = eye.x * d + (img.x - eye.x) * n;  // x * d
  const long zn = eye.z * d + (img.z - eye.z) * n;
  return xn >= u0 * d && xn <= u1 * d && zn >= v0 * d && zn <= v1 * d;
}

}  // namespace

TEST(Reflect, Examples) {
  EXPECT_EQ(reflect_point(Vec3i{2, 1, 1}, plane_x(0)), (Vec3i{-2, 1, 1}));
  EXPECT_EQ(reflect_point(Vec3i{4, 7, 7}, plane_x(4)), (Vec3i{4, 7, 7}));
}

TEST(Reflect, InvolutionIsometryFixedPoints) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-30, 30);
  for (int i = 0; i < 5000; ++i) {
    const Axis ax = static_cast<Axis>(rng() % 3);
    const MirrorPlane m{ax, c(rng), -5, 5, -5, 5};
    const Vec3i p{c(rng), c(rng), c(rng)}, q{c(rng), c(rng), c(rng)};
    EXPECT_EQ(reflect_point(reflect_point(p, m), m), p);
    EXPECT_EQ(manhattan_distance(reflect_point(p, m), reflect_point(q, m)), manhattan_distance(p, q));
    EXPECT_EQ(reflect_point(p, m) == p, on_plane(p, m));
  }
}

TEST(Visibility, OnAxisAndLateralMiss) {
  const MirrorPlane m{Axis::Y, 8, -10, 10, -2, 20};
  const CameraPose cam{{0, -22, 30}, {0, 8, 6}, {0, 0, 1}, 60};
  EXPECT_TRUE(mirror_visibility(Vec3i{0, 1, 8}, m, cam));
  EXPECT_FALSE(mirror_visibility(Vec3i{200, 1, 8}, m, cam));
}

TEST(Visibility, EdgeIsClosed) {
  // Eye at y=0, plane y=4, image at y=8: the segment crosses the plane at the
  // midpoint, so a source with image x = 2*u_max lands exactly on the edge.
  const MirrorPlane m{Axis::Y, 4, -3, 3, -3, 3};
  const CameraPose cam{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, 60};
  EXPECT_TRUE(mirror_visibility(Vec3i{6, 0, 0}, m, cam));
  EXPECT_FALSE(mirror_visibility(Vec3i{7, 0, 0}, m, cam));
  EXPECT_TRUE(mirror_visibility(Vec3i{-6, 0, 6}, m, cam));
}

TEST(Visibility, MatchesExactOracle) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-12, 12);
  int visible = 0, hidden = 0;
  for (int i = 0; i < 20000; ++i) {
    const int off = 4;
    const MirrorPlane m{Axis::Y, off, -4, 4, -3, 5};
    const Vec3i eye{c(rng), -c(rng) % 6 - 6, c(rng)};
    const CameraPose cam{to_vec3d(eye), {0, 4, 0}, {0, 0, 1}, 60};
    const Vec3i p{c(rng), (c(rng) + 12) % 4, c(rng)};  // in front of the plane, same side as eye
    const Vec3i img = reflect_point(p, m);
    const bool expect = crosses_y_rect(eye, img, off, m.u_min, m.u_max, m.v_min, m.v_max);
    EXPECT_EQ(mirror_visibility(p, m, cam), expect) << p.x << "," << p.y << "," << p.z;
    (expect ? visible : hidden)++;
  }
  EXPECT_GT(visible, 100);
  EXPECT_GT(hidden, 100);
}

TEST(Reflect, ReflectedPointRecord) {
  const MirrorPlane m{Axis::Y, 8, -10, 10, -2, 20};
  const CameraPose cam{{0, -22, 30}, {0, 8, 6}, {0, 0, 1}, 60};
  const ReflectedPoint r = reflect(Vec3i{1, 1, 7}, m, cam);
  EXPECT_EQ(r.source, (Vec3i{1, 1, 7}));
  EXPECT_EQ(r.image, (Vec3i{1, 15, 7}));
  EXPECT_EQ(r.visible_in_mirror, mirror_visibility(Vec3i{1, 1, 7}, m, cam));
}
