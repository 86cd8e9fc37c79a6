#pragma once

// Level-dependent prompts built by removing tagged information blocks.
//
// A template asset is plain text split into sections by header lines:
//
//   ## system            text sent as the system message
//   ## task              task message; contains one "{BlockName}" marker line
//                        per information block
//   ## block BlockName   body of one block
//   ## reminder          format reminder used after malformed replies
//
// Ablation deletes a block's marker line; sentences are never rewritten. Block
// bodies and the task text may use {body}, {hand}, {mark}, {environment} and
// {actions} placeholders.

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorbench/errors.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

enum class Level : std::uint8_t { L0 = 0, L1 = 1, L2 = 2, L3 = 3 };

inline constexpr std::array<Level, 4> kAllLevels = {Level::L0, Level::L1, Level::L2, Level::L3};

inline int to_int(Level l) { return static_cast<int>(l); }

inline Level level_from_int(int v) {
  if (v < 0 || v > 3) throw ConfigError("level must be 0..3, got " + std::to_string(v));
  return static_cast<Level>(v);
}

enum class Block : std::uint8_t {
  SceneDescriptions,
  MirrorDisclosure,
  MarkOnSelfDisclosure,
  CoTTemplate,
  ActionMenu,
};

inline constexpr std::array<Block, 5> kAllBlocks = {Block::SceneDescriptions,
                                                    Block::MirrorDisclosure,
                                                    Block::MarkOnSelfDisclosure,
                                                    Block::CoTTemplate, Block::ActionMenu};

inline std::string_view to_string(Block b) {
  switch (b) {
    case Block::SceneDescriptions: return "SceneDescriptions";
    case Block::MirrorDisclosure: return "MirrorDisclosure";
    case Block::MarkOnSelfDisclosure: return "MarkOnSelfDisclosure";
    case Block::CoTTemplate: return "CoTTemplate";
    case Block::ActionMenu: return "ActionMenu";
  }
  return "";
}

// Level 0 carries every block; each further level drops one.
inline std::set<Block> blocks_for(Level level) {
  std::set<Block> s(kAllBlocks.begin(), kAllBlocks.end());
  if (level >= Level::L1) s.erase(Block::CoTTemplate);
  if (level >= Level::L2) s.erase(Block::MirrorDisclosure);
  if (level >= Level::L3) s.erase(Block::MarkOnSelfDisclosure);
  return s;
}

struct PromptBundle {
  std::string system_text;
  std::string task_text;
  std::set<Block> included_blocks;
  std::map<Block, std::string> block_text;  // rendered text of each included block
  std::string format_reminder;
};

inline constexpr std::string_view kDefaultPromptTemplate = R"(## system
You are the mind of an embodied agent. You control one of your own hands and see the world only through images from a fixed camera. You act by choosing one movement per turn.

## task
Your goal is to move your hand until it touches the target mark.
{SceneDescriptions}
{MirrorDisclosure}
{MarkOnSelfDisclosure}
{CoTTemplate}
{ActionMenu}

## block SceneDescriptions
Scene: {environment} {body} {hand} The target mark is {mark}.

## block MirrorDisclosure
Important: a mirror is present in the environment. Some of what you see in the image is a reflection, not the real scene.

## block MarkOnSelfDisclosure
The target mark is attached to your own body.

## block CoTTemplate
Reason step by step before acting: (1) locate the mirror in the image; (2) tell your real hand apart from its reflection; (3) find the mark in the reflected view; (4) invert the reflection to work out where the mark is on your real body relative to your real hand; (5) choose the single move that most reduces the distance between your real hand and the mark.

## block ActionMenu
Each turn you may take exactly one action, moving your hand one step:
{actions}
Finish every reply with a final line of the form "Action: <token>" where <token> is one of +X, -X, +Y, -Y, +Z, -Z.

## reminder
Your previous reply did not contain a valid action. Reply with a single line "Action: <token>" where <token> is one of +X, -X, +Y, -Y, +Z, -Z.
)";

class PromptTemplates {
 public:
  static PromptTemplates parse(std::string_view text) {
    PromptTemplates t;
    std::string current;
    std::string body;
    auto flush = [&]() {
      if (current.empty()) return;
      while (!body.empty() && (body.back() == '\n' || body.back() == ' ')) body.pop_back();
      t.sections_[current] = body;
      body.clear();
    };
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("## ", 0) == 0) {
        flush();
        current = line.substr(3);
        while (!current.empty() && current.back() == '\r') current.pop_back();
        continue;
      }
      if (current.empty()) continue;
      if (body.empty() && line.empty()) continue;
      body += line;
      body += '\n';
    }
    flush();
    return t;
  }

  static PromptTemplates load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw TemplateMissing("cannot read prompt template file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  static const PromptTemplates& defaults() {
    static const PromptTemplates t = parse(kDefaultPromptTemplate);
    return t;
  }

  const std::string& section(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) throw TemplateMissing("prompt template section '" + name + "' is absent");
    return it->second;
  }

  const std::string& block(Block b) const { return section("block " + std::string(to_string(b))); }

 private:
  std::map<std::string, std::string> sections_;
};

namespace detail {

inline void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

// Describes each action relative to the body's facing.
inline std::string action_menu_lines(Facing facing) {
  const Vec3i right = rotate_to_world(Vec3i{1, 0, 0}, facing);
  const Vec3i forward = rotate_to_world(Vec3i{0, 1, 0}, facing);
  std::string out;
  for (Action a : kAllActions) {
    const Vec3i u = unit_vector(a);
    std::string_view what;
    if (u == right) what = "one step to your right";
    else if (u == Vec3i{-right.x, -right.y, -right.z}) what = "one step to your left";
    else if (u == forward) what = "one step forward, in the direction you face";
    else if (u == Vec3i{-forward.x, -forward.y, -forward.z}) what = "one step backward";
    else if (u.z > 0) what = "one step up";
    else what = "one step down";
    out += "  ";
    out += to_token(a);
    out += ": move your hand ";
    out += what;
    out += '\n';
  }
  if (!out.empty()) out.pop_back();
  return out;
}

inline std::string interpolate(std::string text, const SceneSpec& spec) {
  replace_all(text, "{body}", spec.descriptions.body);
  replace_all(text, "{hand}", spec.descriptions.hand);
  replace_all(text, "{mark}", spec.descriptions.mark);
  replace_all(text, "{environment}", spec.descriptions.environment);
  replace_all(text, "{actions}", action_menu_lines(spec.body_pose.facing));
  return text;
}

}  // namespace detail

inline PromptBundle build_prompt(Level level, const SceneSpec& spec,
                                 const PromptTemplates& templates = PromptTemplates::defaults()) {
  PromptBundle bundle;
  bundle.included_blocks = blocks_for(level);
  bundle.system_text = templates.section("system");
  bundle.format_reminder = templates.section("reminder");
  const std::string& task = templates.section("task");

  for (Block b : kAllBlocks) {
    const std::string marker = "{" + std::string(to_string(b)) + "}";
    if (task.find(marker) == std::string::npos) {
      throw TemplateMissing("task template lacks the " + marker + " marker");
    }
  }

  std::string out;
  std::istringstream in(task);
  std::string line;
  while (std::getline(in, line)) {
    bool handled = false;
    for (Block b : kAllBlocks) {
      if (line != "{" + std::string(to_string(b)) + "}") continue;
      handled = true;
      if (bundle.included_blocks.count(b)) {
        std::string text = detail::interpolate(templates.block(b), spec);
        while (!text.empty() && text.back() == '\n') text.pop_back();
        out += text;
        out += '\n';
        bundle.block_text[b] = std::move(text);
      }
    }
    if (!handled) {
      out += detail::interpolate(line, spec);
      out += '\n';
    }
  }
  bundle.task_text = std::move(out);
  return bundle;
}

}  // namespace mirrorbench
