#pragma once

// Trajectory metrics (TSR, SIR, FCR, PCR), Human/Robot/Overall aggregation and
// Cognitive Stability.
//
// Ratios are evaluated as a single integer division, e.g. FCR as
// (d_0 - d_T) / (d_0 - d_th), which equals 1 - (d_T - d_th) / (d_0 - d_th) and
// is correctly rounded. On success FCR and PCR are clamped to 1: termination
// fires at d <= d_th, so the raw ratio can overshoot.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mirrorbench/errors.hpp"
#include "mirrorbench/prompt.hpp"
#include "mirrorbench/scene.hpp"

namespace mirrorbench {

struct MetricSet {
  double tsr = 0;
  double sir = 0;
  double fcr = 0;
  double pcr = 0;

  double avg() const { return (tsr + sir + fcr + pcr) / 4.0; }
  friend bool operator==(const MetricSet&, const MetricSet&) = default;
};

enum class ScoreField : std::uint8_t { TSR, SIR, FCR, PCR, AVG };

inline double field(const MetricSet& m, ScoreField f) {
  switch (f) {
    case ScoreField::TSR: return m.tsr;
    case ScoreField::SIR: return m.sir;
    case ScoreField::FCR: return m.fcr;
    case ScoreField::PCR: return m.pcr;
    case ScoreField::AVG: return m.avg();
  }
  return 0;
}

inline std::optional<ScoreField> score_field_from_string(std::string_view s) {
  if (s == "tsr" || s == "TSR") return ScoreField::TSR;
  if (s == "sir" || s == "SIR") return ScoreField::SIR;
  if (s == "fcr" || s == "FCR") return ScoreField::FCR;
  if (s == "pcr" || s == "PCR") return ScoreField::PCR;
  if (s == "avg" || s == "AVG") return ScoreField::AVG;
  return std::nullopt;
}

namespace detail {

inline void require_nonempty(std::span<const int> d) {
  if (d.empty()) throw EmptyTrajectory("distance trajectory is empty");
}

inline void require_progress_range(std::span<const int> d, int d_th) {
  require_nonempty(d);
  if (d.front() <= d_th) {
    throw std::invalid_argument("completion ratios need d_0 > d_th");
  }
}

}  // namespace detail

inline double tsr(std::span<const int> d, int d_th) {
  detail::require_nonempty(d);
  return d.back() <= d_th ? 1.0 : 0.0;
}

inline double sir(std::span<const int> d) {
  detail::require_nonempty(d);
  const std::size_t steps = d.size() - 1;
  if (steps == 0) throw EmptyTrajectory("SIR needs at least one step");
  int improved = 0;
  for (std::size_t i = 0; i < steps; ++i) improved += d[i + 1] < d[i];
  return static_cast<double>(improved) / static_cast<double>(steps);
}

inline double fcr(std::span<const int> d, int d_th) {
  detail::require_progress_range(d, d_th);
  if (d.back() <= d_th) return 1.0;
  return static_cast<double>(d.front() - d.back()) / static_cast<double>(d.front() - d_th);
}

inline double pcr(std::span<const int> d, int d_th) {
  detail::require_progress_range(d, d_th);
  if (d.back() <= d_th) return 1.0;
  const int best = *std::min_element(d.begin(), d.end());
  return static_cast<double>(d.front() - best) / static_cast<double>(d.front() - d_th);
}

inline MetricSet compute_metrics(std::span<const int> d, int d_th) {
  return {tsr(d, d_th), sir(d), fcr(d, d_th), pcr(d, d_th)};
}

// ---------------------------------------------------------------------------
// Score grid and aggregation
// ---------------------------------------------------------------------------

enum class SettingGroup : std::uint8_t { Human, Robot, Overall };

inline constexpr std::array<SettingGroup, 3> kAllGroups = {SettingGroup::Human, SettingGroup::Robot,
                                                           SettingGroup::Overall};

inline std::string_view to_string(SettingGroup g) {
  switch (g) {
    case SettingGroup::Human: return "Human";
    case SettingGroup::Robot: return "Robot";
    case SettingGroup::Overall: return "Overall";
  }
  return "";
}

inline bool in_group(Setting s, SettingGroup g) {
  return g == SettingGroup::Overall || (g == SettingGroup::Human) == (s == Setting::Human);
}

struct GridEntry {
  Setting setting = Setting::Human;
  MetricSet metrics;
};

// Per-episode metrics keyed by (agent, level, scene).
class ScoreGrid {
 public:
  using Key = std::tuple<std::string, Level, std::string>;

  void add(const std::string& agent_id, Level level, const std::string& scene_id, Setting setting,
           const MetricSet& m) {
    cells_[{agent_id, level, scene_id}] = {setting, m};
  }

  const std::map<Key, GridEntry>& cells() const { return cells_; }

  const GridEntry* find(const std::string& agent_id, Level level, const std::string& scene_id) const {
    auto it = cells_.find({agent_id, level, scene_id});
    return it == cells_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> agents() const {
    std::set<std::string> s;
    for (const auto& [k, v] : cells_) s.insert(std::get<0>(k));
    return {s.begin(), s.end()};
  }

  std::set<std::string> scenes(const std::string& agent_id) const {
    std::set<std::string> s;
    for (const auto& [k, v] : cells_) {
      if (std::get<0>(k) == agent_id) s.insert(std::get<2>(k));
    }
    return s;
  }

  // Scenes recorded at all four levels for this agent.
  std::set<std::string> complete_scenes(const std::string& agent_id) const {
    std::set<std::string> out;
    for (const auto& sc : scenes(agent_id)) {
      bool all = true;
      for (Level l : kAllLevels) all = all && find(agent_id, l, sc);
      if (all) out.insert(sc);
    }
    return out;
  }

 private:
  std::map<Key, GridEntry> cells_;
};

inline int sign(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Mean over `scenes` of the summed level-to-level signs, in [-3, 3].
inline double cognitive_stability(const ScoreGrid& grid, const std::string& agent_id,
                                  const std::set<std::string>& scenes,
                                  ScoreField score = ScoreField::AVG) {
  if (scenes.empty()) throw IncompleteGrid("no scenes for agent '" + agent_id + "'");
  long total = 0;
  for (const auto& sc : scenes) {
    std::array<double, 4> s{};
    for (Level l : kAllLevels) {
      const GridEntry* e = grid.find(agent_id, l, sc);
      if (!e) {
        throw IncompleteGrid("agent '" + agent_id + "' has no level " + std::to_string(to_int(l)) +
                             " result for scene '" + sc + "'");
      }
      s[static_cast<std::size_t>(to_int(l))] = field(e->metrics, score);
    }
    for (std::size_t l = 0; l < 3; ++l) total += sign(s[l] - s[l + 1]);
  }
  return static_cast<double>(total) / static_cast<double>(scenes.size());
}

inline double cognitive_stability(const ScoreGrid& grid, const std::string& agent_id,
                                  ScoreField score = ScoreField::AVG) {
  return cognitive_stability(grid, agent_id, grid.scenes(agent_id), score);
}

struct Aggregate {
  MetricSet mean;
  std::size_t episodes = 0;
};

// (agent, level, group) -> unweighted mean over the group's episodes. Overall
// pools both settings, so it is episode-weighted.
class AggregateTable {
 public:
  using Key = std::tuple<std::string, Level, SettingGroup>;

  std::map<Key, Aggregate> cells;

  const Aggregate* find(const std::string& agent, Level level, SettingGroup g) const {
    auto it = cells.find({agent, level, g});
    return it == cells.end() ? nullptr : &it->second;
  }

  // Mean of the per-level group means over the levels present.
  std::optional<MetricSet> level_average(const std::string& agent, SettingGroup g,
                                         const std::set<Level>& levels) const {
    MetricSet sum;
    int n = 0;
    for (Level l : levels) {
      const Aggregate* a = find(agent, l, g);
      if (!a || a->episodes == 0) continue;
      sum.tsr += a->mean.tsr;
      sum.sir += a->mean.sir;
      sum.fcr += a->mean.fcr;
      sum.pcr += a->mean.pcr;
      ++n;
    }
    if (n == 0) return std::nullopt;
    return MetricSet{sum.tsr / n, sum.sir / n, sum.fcr / n, sum.pcr / n};
  }
};

inline AggregateTable aggregate(const ScoreGrid& grid) {
  struct Acc {
    MetricSet sum;
    std::size_t n = 0;
  };
  std::map<AggregateTable::Key, Acc> acc;
  for (const auto& [key, entry] : grid.cells()) {
    const auto& [agent, level, scene] = key;
    for (SettingGroup g : kAllGroups) {
      if (!in_group(entry.setting, g)) continue;
      Acc& a = acc[{agent, level, g}];
      a.sum.tsr += entry.metrics.tsr;
      a.sum.sir += entry.metrics.sir;
      a.sum.fcr += entry.metrics.fcr;
      a.sum.pcr += entry.metrics.pcr;
      ++a.n;
    }
  }
  AggregateTable out;
  for (const auto& [key, a] : acc) {
    const double n = static_cast<double>(a.n);
    out.cells[key] = {{a.sum.tsr / n, a.sum.sir / n, a.sum.fcr / n, a.sum.pcr / n}, a.n};
  }
  return out;
}

// Agents ordered by the Overall AVG averaged across `levels`, best first; ties
// by agent id.
inline std::vector<std::string> rank_agents(const AggregateTable& table,
                                            const std::vector<std::string>& agents,
                                            const std::set<Level>& levels) {
  std::vector<std::pair<double, std::string>> keyed;
  for (const auto& a : agents) {
    const auto m = table.level_average(a, SettingGroup::Overall, levels);
    keyed.emplace_back(m ? m->avg() : -INFINITY, a);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  std::vector<std::string> out;
  for (auto& [k, a] : keyed) out.push_back(a);
  return out;
}

}  // namespace mirrorbench
