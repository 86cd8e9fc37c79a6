#pragma once

// Built-in asset pool: 7 bodies (4 human, 3 robot), 6 hand types with a human
// and a robot variant each, and 6 mark designs.
//
// Asset frames: bodies stand on z = 0 at their origin and face +Y, with the
// mark-bearing front face at y = 1. Hands are centred on the hand position and
// marks on the mark anchor. Colours are disjoint between kinds so masks can be
// recovered from frames by colour alone.

#include <string>
#include <utility>
#include <vector>

#include "mirrorbench/scene.hpp"

namespace mirrorbench {

namespace shapes {

inline Primitive box(Vec3d c, Vec3d half, Rgb color) {
  return {PrimitiveKind::Box, c, {}, half, 0.0, color};
}
inline Primitive sphere(Vec3d c, double r, Rgb color) {
  return {PrimitiveKind::Sphere, c, {}, {}, r, color};
}
inline Primitive capsule(Vec3d a, Vec3d b, double r, Rgb color) {
  return {PrimitiveKind::Capsule, a, b, {}, r, color};
}

}  // namespace shapes

namespace detail {

inline AssetSpec body_asset(std::string id, Setting setting, std::vector<Primitive> shape,
                            std::string description, MarkSurface surface) {
  return {AssetKind::Body, std::move(id), setting, std::move(shape), std::move(description),
          surface};
}

inline AssetSpec hand_asset(std::string id, Setting setting, std::vector<Primitive> shape,
                            std::string description) {
  return {AssetKind::Hand, std::move(id), setting, std::move(shape), std::move(description),
          std::nullopt};
}

inline AssetSpec mark_asset(std::string id, std::vector<Primitive> shape, std::string description) {
  return {AssetKind::Mark,         std::move(id),          std::nullopt, std::move(shape),
          std::move(description), std::nullopt};
}

inline std::vector<Primitive> humanoid(Rgb legs, Rgb torso, Rgb head, double torso_half_x,
                                       double torso_half_z, double leg_h, double head_r) {
  using namespace shapes;
  const double torso_z = 2.0 * leg_h + torso_half_z;
  const double shoulder = torso_z + torso_half_z - 0.5;
  const double arm_x = torso_half_x + 0.7;
  return {
      box({-torso_half_x * 0.45, 0, leg_h}, {torso_half_x * 0.3, 0.8, leg_h}, legs),
      box({torso_half_x * 0.45, 0, leg_h}, {torso_half_x * 0.3, 0.8, leg_h}, legs),
      box({0, 0, torso_z}, {torso_half_x, 1.0, torso_half_z}, torso),
      capsule({-arm_x, 0, shoulder}, {-arm_x, 0, shoulder - 2.0 * torso_half_z + 1.0}, 0.6, torso),
      capsule({arm_x, 0, shoulder}, {arm_x, 0, shoulder - 2.0 * torso_half_z + 1.0}, 0.6, torso),
      sphere({0, 0, torso_z + torso_half_z + head_r + 0.2}, head_r, head),
  };
}

}  // namespace detail

inline std::vector<AssetSpec> default_bodies() {
  using namespace shapes;
  using detail::body_asset;
  using detail::humanoid;
  std::vector<AssetSpec> out;
  out.push_back(body_asset(
      "adult_man", Setting::Human,
      humanoid({40, 48, 88}, {70, 110, 160}, {226, 190, 160}, 3.0, 3.0, 2.0, 1.8),
      "You are an adult man wearing a blue shirt and dark trousers.", {1, -2, 2, 5, 9}));
  out.push_back(body_asset(
      "adult_woman", Setting::Human,
      humanoid({64, 40, 52}, {170, 70, 92}, {232, 198, 170}, 2.6, 3.0, 2.0, 1.7),
      "You are an adult woman wearing a rose-coloured top and dark trousers.", {1, -1, 1, 5, 9}));
  out.push_back(body_asset(
      "child", Setting::Human,
      humanoid({52, 70, 44}, {222, 170, 58}, {236, 200, 172}, 2.2, 2.0, 1.25, 1.5),
      "You are a small child wearing a yellow sweater.", {1, -1, 1, 3, 5}));
  out.push_back(body_asset(
      "elderly_person", Setting::Human,
      humanoid({78, 72, 66}, {122, 100, 80}, {218, 184, 156}, 3.0, 3.0, 2.0, 1.8),
      "You are an elderly person wearing a brown cardigan.", {1, -2, 2, 5, 9}));

  out.push_back(body_asset("humanoid_robot", Setting::Robot,
                           {
                               box({-1.3, 0, 2}, {0.9, 0.8, 2}, {88, 90, 96}),
                               box({1.3, 0, 2}, {0.9, 0.8, 2}, {88, 90, 96}),
                               box({0, 0, 7}, {3, 1, 3}, {150, 152, 162}),
                               capsule({-3.7, 0, 9.5}, {-3.7, 0, 5}, 0.6, {88, 90, 96}),
                               capsule({3.7, 0, 9.5}, {3.7, 0, 5}, 0.6, {88, 90, 96}),
                               box({0, 0, 11.8}, {1.5, 1.0, 1.5}, {110, 116, 126}),
                           },
                           "You are a humanoid robot with a grey metal torso and a boxy head.",
                           {1, -2, 2, 5, 9}));
  out.push_back(body_asset("quadruped_robot", Setting::Robot,
                           {
                               capsule({-2, -6, 4}, {-2, -6, 0.5}, 0.5, {60, 62, 70}),
                               capsule({2, -6, 4}, {2, -6, 0.5}, 0.5, {60, 62, 70}),
                               capsule({-2, -0.5, 4}, {-2, -0.5, 0.5}, 0.5, {60, 62, 70}),
                               capsule({2, -0.5, 4}, {2, -0.5, 0.5}, 0.5, {60, 62, 70}),
                               box({0, -3, 6}, {2.5, 4, 2}, {196, 160, 40}),
                           },
                           "You are a four-legged robot with a long yellow body.",
                           {1, -1, 1, 5, 7}));
  out.push_back(body_asset("mobile_manipulator", Setting::Robot,
                           {
                               box({0, -1, 1}, {3, 2, 1}, {44, 46, 52}),
                               box({0, 0, 6.5}, {1.8, 1, 4.5}, {200, 204, 210}),
                               capsule({-2.4, -0.5, 10.5}, {-2.4, -0.5, 7}, 0.5, {44, 46, 52}),
                           },
                           "You are a wheeled mobile manipulator with a white column body.",
                           {1, -1, 1, 5, 9}));
  return out;
}

inline std::vector<HandType> default_hands() {
  using namespace shapes;
  using detail::hand_asset;
  const Rgb skin{214, 150, 110};
  const Rgb skin_dark{190, 124, 88};
  const Rgb metal{124, 134, 146};
  const Rgb metal_dark{70, 82, 98};
  std::vector<HandType> out;
  auto add = [&](std::string id, std::vector<Primitive> human, std::string human_desc,
                 std::vector<Primitive> robot, std::string robot_desc) {
    out.push_back({id, hand_asset(id, Setting::Human, std::move(human), std::move(human_desc)),
                   hand_asset(id, Setting::Robot, std::move(robot), std::move(robot_desc))});
  };
  add("open_palm",
      {box({0, 0, 0}, {0.7, 0.25, 0.8}, skin),
       capsule({-0.45, 0, 0.8}, {-0.45, 0, 1.5}, 0.18, skin_dark),
       capsule({0.45, 0, 0.8}, {0.45, 0, 1.5}, 0.18, skin_dark)},
      "Your hand is an open palm with fingers extended.",
      {box({0, 0, 0}, {0.8, 0.25, 0.8}, metal),
       capsule({-0.5, 0, 0.8}, {-0.5, 0, 1.5}, 0.2, metal_dark),
       capsule({0.5, 0, 0.8}, {0.5, 0, 1.5}, 0.2, metal_dark)},
      "Your hand is a flat robotic palm with two rigid fingers.");
  add("fist", {sphere({0, 0, 0}, 0.8, skin)}, "Your hand is a closed fist.",
      {box({0, 0, 0}, {0.7, 0.7, 0.7}, metal)}, "Your hand is a solid metal block end-effector.");
  add("pointing",
      {box({0, 0, 0}, {0.6, 0.35, 0.7}, skin),
       capsule({0, 0.35, 0.3}, {0, 1.4, 0.3}, 0.18, skin_dark)},
      "Your hand points forward with the index finger.",
      {box({0, 0, 0}, {0.6, 0.4, 0.6}, metal),
       capsule({0, 0.4, 0}, {0, 1.5, 0}, 0.2, metal_dark)},
      "Your hand is a robotic probe with a single pointed tip.");
  add("pinch",
      {sphere({0, 0, 0}, 0.6, skin), capsule({-0.3, 0.3, 0.4}, {-0.1, 1.0, 0.2}, 0.16, skin_dark),
       capsule({0.3, 0.3, -0.3}, {0.1, 1.0, 0.1}, 0.16, skin_dark)},
      "Your hand is held in a pinching gesture.",
      {box({0, 0, 0}, {0.8, 0.4, 0.5}, metal), box({-0.55, 0.8, 0}, {0.15, 0.5, 0.35}, metal_dark),
       box({0.55, 0.8, 0}, {0.15, 0.5, 0.35}, metal_dark)},
      "Your hand is a parallel-jaw gripper.");
  add("claw",
      {sphere({0, 0, 0}, 0.55, skin), capsule({-0.5, 0.2, 0}, {-0.6, 0.9, 0.5}, 0.15, skin_dark),
       capsule({0, 0.2, 0}, {0, 1.0, 0.55}, 0.15, skin_dark),
       capsule({0.5, 0.2, 0}, {0.6, 0.9, 0.5}, 0.15, skin_dark)},
      "Your hand is curled like a claw.",
      {sphere({0, 0, 0}, 0.6, metal), capsule({-0.5, 0.2, 0}, {-0.7, 1.0, 0}, 0.18, metal_dark),
       capsule({0, 0.2, 0.3}, {0, 1.0, 0.6}, 0.18, metal_dark),
       capsule({0.5, 0.2, 0}, {0.7, 1.0, 0}, 0.18, metal_dark)},
      "Your hand is a three-fingered robotic claw.");
  add("mitten", {capsule({0, 0, -0.4}, {0, 0, 0.6}, 0.6, skin)},
      "Your hand is a rounded mitten-like hand.",
      {capsule({0, 0, -0.4}, {0, 0, 0.6}, 0.6, metal), sphere({0, 0.55, 0}, 0.35, metal_dark)},
      "Your hand is a cylindrical suction-cup end-effector.");
  return out;
}

inline std::vector<AssetSpec> default_marks() {
  using namespace shapes;
  using detail::mark_asset;
  std::vector<AssetSpec> out;
  out.push_back(mark_asset("red_dot", {sphere({0, 0.1, 0}, 0.5, {232, 28, 40})},
                           "a small red circular dot"));
  out.push_back(mark_asset("blue_square", {box({0, 0.1, 0}, {0.5, 0.12, 0.5}, {30, 72, 232})},
                           "a blue square sticker"));
  out.push_back(mark_asset("green_cross",
                           {box({0, 0.1, 0}, {0.6, 0.12, 0.15}, {36, 204, 72}),
                            box({0, 0.1, 0}, {0.15, 0.12, 0.6}, {36, 204, 72})},
                           "a green cross-shaped mark"));
  out.push_back(mark_asset("yellow_star",
                           {box({0, 0.1, 0}, {0.55, 0.12, 0.2}, {248, 218, 16}),
                            box({0, 0.1, 0}, {0.2, 0.12, 0.55}, {248, 218, 16}),
                            sphere({0, 0.1, 0}, 0.3, {248, 218, 16})},
                           "a yellow star-shaped sticker"));
  out.push_back(mark_asset("purple_ring",
                           {box({0, 0.1, 0.45}, {0.5, 0.12, 0.1}, {164, 48, 214}),
                            box({0, 0.1, -0.45}, {0.5, 0.12, 0.1}, {164, 48, 214}),
                            box({0.45, 0.1, 0}, {0.1, 0.12, 0.5}, {164, 48, 214}),
                            box({-0.45, 0.1, 0}, {0.1, 0.12, 0.5}, {164, 48, 214})},
                           "a purple ring-shaped mark"));
  out.push_back(mark_asset("orange_triangle",
                           {sphere({0, 0.1, 0.35}, 0.22, {255, 132, 16}),
                            sphere({-0.35, 0.1, -0.25}, 0.22, {255, 132, 16}),
                            sphere({0.35, 0.1, -0.25}, 0.22, {255, 132, 16}),
                            box({0, 0.1, -0.05}, {0.3, 0.12, 0.25}, {255, 132, 16})},
                           "an orange triangular mark"));
  return out;
}

inline AssetPool default_pool() { return {default_bodies(), default_hands(), default_marks()}; }

}  // namespace mirrorbench
