#pragma once

// Result tables derived from an episodes file. Every table lists agents in the
// same order: descending Overall AVG averaged over the selected levels.

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorbench/metrics.hpp"
#include "mirrorbench/serialization.hpp"

namespace mirrorbench {

struct ReportRow {
  std::string agent_id;
  std::map<SettingGroup, MetricSet> groups;  // absent group = no episodes
  std::map<SettingGroup, std::size_t> episodes;
};

struct ReportTable {
  std::optional<Level> level;  // empty for the level-averaged table
  std::vector<ReportRow> rows;

  const ReportRow* row(const std::string& agent) const {
    for (const auto& r : rows) {
      if (r.agent_id == agent) return &r;
    }
    return nullptr;
  }
};

struct StabilityEntry {
  std::string agent_id;
  double cs = 0;
  std::size_t scenes = 0;
};

struct Report {
  std::set<Level> levels;
  std::vector<ReportTable> per_level;
  ReportTable averaged;
  std::vector<StabilityEntry> stability;  // best first
  std::size_t episodes = 0;
  std::size_t invalid = 0;
};

// `level_filter` empty means all four levels.
inline Report make_report(const std::vector<EpisodeRecord>& records,
                          const std::set<Level>& level_filter = {}) {
  Report rep;
  rep.levels = level_filter.empty() ? std::set<Level>(kAllLevels.begin(), kAllLevels.end()) : level_filter;

  ScoreGrid grid;
  for (const auto& r : records) {
    if (!rep.levels.count(r.level)) continue;
    if (!r.valid || !r.metrics) {
      ++rep.invalid;
      continue;
    }
    ++rep.episodes;
    grid.add(r.agent_id, r.level, r.scene_id, r.setting, *r.metrics);
  }

  const AggregateTable table = aggregate(grid);
  const auto agents = rank_agents(table, grid.agents(), rep.levels);

  for (Level l : rep.levels) {
    ReportTable t;
    t.level = l;
    for (const auto& a : agents) {
      ReportRow row{a, {}, {}};
      for (SettingGroup g : kAllGroups) {
        if (const Aggregate* agg = table.find(a, l, g)) {
          row.groups[g] = agg->mean;
          row.episodes[g] = agg->episodes;
        }
      }
      t.rows.push_back(std::move(row));
    }
    rep.per_level.push_back(std::move(t));
  }

  for (const auto& a : agents) {
    ReportRow row{a, {}, {}};
    for (SettingGroup g : kAllGroups) {
      if (auto m = table.level_average(a, g, rep.levels)) {
        row.groups[g] = *m;
        std::size_t n = 0;
        for (Level l : rep.levels) {
          if (const Aggregate* agg = table.find(a, l, g)) n += agg->episodes;
        }
        row.episodes[g] = n;
      }
    }
    rep.averaged.rows.push_back(std::move(row));
  }

  // Stability needs every level, so it is computed only without a filter.
  if (rep.levels.size() == kAllLevels.size()) {
    for (const auto& a : grid.agents()) {
      const auto scenes = grid.complete_scenes(a);
      if (scenes.empty()) continue;
      rep.stability.push_back({a, cognitive_stability(grid, a, scenes), scenes.size()});
    }
    std::sort(rep.stability.begin(), rep.stability.end(), [](const auto& x, const auto& y) {
      if (x.cs != y.cs) return x.cs > y.cs;
      return x.agent_id < y.agent_id;
    });
  }
  return rep;
}

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string level_label(const std::optional<Level>& l) {
  return l ? "L" + std::to_string(to_int(*l)) : std::string("AVG");
}

}  // namespace detail

// agent,level,setting,TSR,SIR,FCR,PCR,AVG,episodes
inline std::string report_csv(const Report& rep) {
  std::ostringstream out;
  out << "agent,level,setting,TSR,SIR,FCR,PCR,AVG,episodes\n";
  auto emit = [&](const ReportTable& t) {
    for (const auto& row : t.rows) {
      for (SettingGroup g : kAllGroups) {
        auto it = row.groups.find(g);
        if (it == row.groups.end()) continue;
        const MetricSet& m = it->second;
        out << row.agent_id << ',' << detail::level_label(t.level) << ',' << to_string(g) << ','
            << detail::fmt3(m.tsr) << ',' << detail::fmt3(m.sir) << ',' << detail::fmt3(m.fcr) << ','
            << detail::fmt3(m.pcr) << ',' << detail::fmt3(m.avg()) << ',' << row.episodes.at(g) << '\n';
      }
    }
  };
  for (const auto& t : rep.per_level) emit(t);
  emit(rep.averaged);
  return out.str();
}

inline std::string markdown_table(const ReportTable& t) {
  std::ostringstream out;
  out << "| Agent |";
  for (SettingGroup g : kAllGroups) {
    for (const char* m : {"TSR", "SIR", "FCR", "PCR", "AVG"}) out << ' ' << to_string(g) << ' ' << m << " |";
  }
  out << "\n|---|";
  for (int i = 0; i < 15; ++i) out << "---:|";
  out << '\n';
  for (const auto& row : t.rows) {
    out << "| " << row.agent_id << " |";
    for (SettingGroup g : kAllGroups) {
      auto it = row.groups.find(g);
      if (it == row.groups.end()) {
        out << " - | - | - | - | - |";
        continue;
      }
      const MetricSet& m = it->second;
      for (double v : {m.tsr, m.sir, m.fcr, m.pcr, m.avg()}) out << ' ' << detail::fmt3(v) << " |";
    }
    out << '\n';
  }
  return out.str();
}

inline std::string report_markdown(const Report& rep) {
  std::ostringstream out;
  for (const auto& t : rep.per_level) {
    out << "## Level " << to_int(*t.level) << "\n\n" << markdown_table(t) << '\n';
  }
  out << "## Average over levels";
  for (Level l : rep.levels) out << ' ' << detail::level_label(l);
  out << "\n\n" << markdown_table(rep.averaged) << '\n';
  if (!rep.stability.empty()) {
    out << "## Cognitive Stability ranking\n\n| Rank | Agent | CS | Scenes |\n|---:|---|---:|---:|\n";
    int rank = 1;
    for (const auto& s : rep.stability) {
      out << "| " << rank++ << " | " << s.agent_id << " | " << detail::fmt3(s.cs) << " | " << s.scenes << " |\n";
    }
    out << '\n';
  }
  out << "Episodes aggregated: " << rep.episodes << ".";
  if (rep.invalid > 0) out << " Invalid episodes excluded: " << rep.invalid << ".";
  out << '\n';
  return out.str();
}

inline Json report_json(const Report& rep) {
  auto table_json = [](const ReportTable& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json groups = Json::object();
      for (const auto& [g, m] : row.groups) {
        Json mj = metrics_to_json(m);
        mj["episodes"] = row.episodes.at(g);
        groups[std::string(to_string(g))] = std::move(mj);
      }
      rows.push_back({{"agent", row.agent_id}, {"groups", std::move(groups)}});
    }
    return Json{{"level", detail::level_label(t.level)}, {"rows", std::move(rows)}};
  };
  Json j;
  Json levels = Json::array();
  for (Level l : rep.levels) levels.push_back(to_int(l));
  j["levels"] = levels;
  Json per = Json::array();
  for (const auto& t : rep.per_level) per.push_back(table_json(t));
  j["per_level"] = std::move(per);
  j["averaged"] = table_json(rep.averaged);
  Json cs = Json::array();
  for (const auto& s : rep.stability) cs.push_back({{"agent", s.agent_id}, {"cs", s.cs}, {"scenes", s.scenes}});
  j["stability"] = std::move(cs);
  j["episodes"] = rep.episodes;
  j["invalid"] = rep.invalid;
  return j;
}

}  // namespace mirrorbench
