#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mirrorbench/codec.hpp"
#include "mirrorbench/render.hpp"
#include "test_util.hpp"

using namespace mirrorbench;

namespace {

// Reference pinhole camera, written from the look-at definition.
struct Pinhole {
  double ex, ey, ez;
  double f[3], r[3], u[3];
  double focal, w, h;

  Pinhole(const CameraPose& c, int width, int height) : w(width), h(height) {
    ex = c.eye.x, ey = c.eye.y, ez = c.eye.z;
    double d[3] = {c.target.x - ex, c.target.y - ey, c.target.z - ez};
    double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    for (int i = 0; i < 3; ++i) f[i] = d[i] / n;
    const double up[3] = {c.up.x, c.up.y, c.up.z};
    r[0] = f[1] * up[2] - f[2] * up[1];
    r[1] = f[2] * up[0] - f[0] * up[2];
    r[2] = f[0] * up[1] - f[1] * up[0];
    n = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    for (double& v : r) v /= n;
    u[0] = r[1] * f[2] - r[2] * f[1];
    u[1] = r[2] * f[0] - r[0] * f[2];
    u[2] = r[0] * f[1] - r[1] * f[0];
    focal = (height / 2.0) / std::tan(c.fov_y_deg * M_PI / 360.0);
  }

  std::pair<double, double> operator()(double x, double y, double z) const {
    const double d[3] = {x - ex, y - ey, z - ez};
    const double zc = d[0] * f[0] + d[1] * f[1] + d[2] * f[2];
    const double xc = d[0] * r[0] + d[1] * r[1] + d[2] * r[2];
    const double yc = d[0] * u[0] + d[1] * u[1] + d[2] * u[2];
    return {w / 2 + focal * xc / zc, h / 2 - focal * yc / zc};
  }
};

// Distance-tolerant point-in-convex-quad test (quad given in order).
bool in_quad(const std::vector<std::pair<double, double>>& q, double x, double y, double tol) {
  double sign = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto [ax, ay] = q[i];
    const auto [bx, by] = q[(i + 1) % q.size()];
    const double len = std::hypot(bx - ax, by - ay);
    const double c = ((bx - ax) * (y - ay) - (by - ay) * (x - ax)) / len;
    if (sign == 0 && std::abs(c) > tol) sign = c > 0 ? 1 : -1;
    if (sign != 0 && c * sign < -tol) return false;
  }
  return true;
}

std::vector<std::pair<double, double>> mirror_quad(const SceneSpec& s, const Pinhole& cam) {
  const MirrorPlane& m = s.mirror;
  const double o = m.offset;
  // Plane y = offset with x in [u_min, u_max], z in [v_min, v_max].
  EXPECT_EQ(m.axis, Axis::Y);
  return {cam(m.u_min, o, m.v_min), cam(m.u_max, o, m.v_min), cam(m.u_max, o, m.v_max),
          cam(m.u_min, o, m.v_max)};
}

std::set<std::tuple<int, int, int>> colours_of(const AssetSpec& a) {
  std::set<std::tuple<int, int, int>> out;
  for (const auto& p : a.shape) out.insert({p.color.r, p.color.g, p.color.b});
  return out;
}

struct Centroid {
  double x = 0, y = 0;
  long n = 0;
};

template <typename Pred>
Centroid centroid(const Image& img, Pred pred) {
  Centroid c;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!pred(img.at(x, y))) continue;
      c.x += x + 0.5;
      c.y += y + 0.5;
      ++c.n;
    }
  }
  if (c.n) c.x /= c.n, c.y /= c.n;
  return c;
}

bool has(const std::set<std::tuple<int, int, int>>& s, Rgb c) { return s.count({c.r, c.g, c.b}) > 0; }

}  // namespace

TEST(Render, DeterministicAndSized) {
  const SceneSpec& s = testutil::scene(3);
  const auto a = render(SceneState::initial(s));
  const auto b = render(SceneState::initial(s));
  EXPECT_EQ(a.frame, b.frame);
  EXPECT_EQ(a.frame.width, 1024);
  EXPECT_EQ(a.frame.height, 1024);
  RenderConfig small;
  small.width = 320;
  small.height = 200;
  const Image c = render_frame(s, s.hand_init, small);
  EXPECT_EQ(c.width, 320);
  EXPECT_EQ(c.height, 200);
  EXPECT_EQ(c.rgb.size(), 320u * 200u * 3u);
}

TEST(Render, ConfigErrors) {
  SceneSpec s = testutil::scene();
  RenderConfig bad;
  bad.width = 0;
  EXPECT_THROW(render_frame(s, s.hand_init, bad), RenderConfigError);
  s.camera.target = s.camera.eye;
  EXPECT_THROW(render_frame(s, s.hand_init, {}), RenderConfigError);
  s = testutil::scene();
  s.camera.fov_y_deg = 180;
  EXPECT_THROW(render_frame(s, s.hand_init, {}), RenderConfigError);
}

TEST(Render, MarkColoursOnlyInsideMirror) {
  const auto& scenes = testutil::default_scenes();
  const RenderConfig cfg;
  for (std::size_t i = 0; i < scenes.size(); i += 9) {
    const SceneSpec& s = scenes[i];
    const Pinhole cam(s.camera, cfg.width, cfg.height);
    const auto quad = mirror_quad(s, cam);
    std::set<std::tuple<int, int, int>> mark;
    for (const auto& p : s.mark.shape) {
      mark.insert({p.color.r, p.color.g, p.color.b});
      const Rgb t = mirrored_color(p.color, cfg);
      mark.insert({t.r, t.g, t.b});
    }
    const Image img = render_frame(s, s.hand_init, cfg);
    long inside = 0;
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        if (!has(mark, img.at(x, y))) continue;
        ASSERT_TRUE(in_quad(quad, x + 0.5, y + 0.5, 0.5)) << s.scene_id << " pixel " << x << "," << y;
        ++inside;
      }
    }
    EXPECT_GT(inside, 0) << s.scene_id << ": reflected mark not drawn";
  }
}

TEST(Render, HandCentroidFollowsProjectedStep) {
  // Without body and mark nothing can occlude the hand, so the centroid shift
  // is pure projection.
  SceneSpec s = testutil::scene();
  s.body.shape.clear();
  s.mark.shape.clear();
  const RenderConfig cfg;
  const Pinhole cam(s.camera, cfg.width, cfg.height);
  const auto hand = colours_of(s.hand);
  auto is_hand = [&](Rgb c) { return has(hand, c); };
  for (Vec3i start : {Vec3i{6, 4, 13}, Vec3i{-7, 5, 3}, Vec3i{5, 3, 8}}) {
    for (Action a : {Action::PosX, Action::PosZ, Action::NegX}) {
      const Vec3i end = start + unit_vector(a);
      const Centroid c0 = centroid(render_frame(s, start, cfg), is_hand);
      const Centroid c1 = centroid(render_frame(s, end, cfg), is_hand);
      ASSERT_GT(c0.n, 50);
      ASSERT_GT(c1.n, 50);
      const auto p0 = cam(start.x, start.y, start.z);
      const auto p1 = cam(end.x, end.y, end.z);
      EXPECT_NEAR(c1.x - c0.x, p1.first - p0.first, 1.0) << to_token(a);
      EXPECT_NEAR(c1.y - c0.y, p1.second - p0.second, 1.0) << to_token(a);
    }
  }
}

TEST(Render, ReflectedMarkDrawnAtReflectedProjection) {
  const RenderConfig cfg;
  const auto& scenes = testutil::default_scenes();
  for (std::size_t i = 1; i < scenes.size(); i += 23) {
    SceneSpec s = scenes[i];
    s.hand_init = {-15, 6, 1};  // keep the hand clear of the mark's image
    const Pinhole cam(s.camera, cfg.width, cfg.height);
    std::set<std::tuple<int, int, int>> tinted;
    for (const auto& p : s.mark.shape) {
      const Rgb t = mirrored_color(p.color, cfg);
      tinted.insert({t.r, t.g, t.b});
    }
    const Image img = render_frame(s, s.hand_init, cfg);
    const Centroid c = centroid(img, [&](Rgb x) { return has(tinted, x); });
    ASSERT_GT(c.n, 10) << s.scene_id;
    const Vec3d centre{s.mark_anchor.x + 0.0, s.mark_anchor.y + 0.1, s.mark_anchor.z + 0.0};
    const Vec3d img_centre = reflect_point(centre, s.mirror);
    const auto p = cam(img_centre.x, img_centre.y, img_centre.z);
    EXPECT_NEAR(c.x, p.first, 1.5) << s.scene_id;
    EXPECT_NEAR(c.y, p.second, 1.5) << s.scene_id;
  }
}

TEST(Render, MarkHiddenCheck) {
  const SceneSpec& s = testutil::scene();
  EXPECT_TRUE(validate_mark_hidden(s));
  SceneSpec back = s;
  back.mark_anchor = {0, -1, 7};  // on the torso's camera-facing back
  EXPECT_FALSE(validate_mark_hidden(back));
}

TEST(Render, MirrorPassOffHasNoReflection) {
  const SceneSpec& s = testutil::scene();
  RenderConfig cfg;
  cfg.mirror_pass = false;
  std::vector<std::uint8_t> labels;
  render_frame(s, s.hand_init, cfg, &labels);
  for (auto l : labels) {
    EXPECT_EQ(l & kLabelReflected, 0);
    EXPECT_NE(l, kLabelMirror);
  }
}

TEST(Codec, PngRoundTrip) {
  const SceneSpec& s = testutil::scene();
  RenderConfig cfg;
  cfg.width = 200;
  cfg.height = 120;
  const Image img = render_frame(s, s.hand_init, cfg);
  const auto png = encode_png(img);
  ASSERT_GT(png.size(), 8u);
  EXPECT_EQ(png[1], 'P');
  EXPECT_EQ(decode_png(png), img);
}

TEST(Codec, Base64) {
  const auto enc = [](std::string s) { return base64_encode(std::vector<std::uint8_t>(s.begin(), s.end())); };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
  std::vector<std::uint8_t> all(256);
  for (int i = 0; i < 256; ++i) all[i] = static_cast<std::uint8_t>(i);
  EXPECT_EQ(base64_decode(base64_encode(all)), all);
}
