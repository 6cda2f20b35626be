/*
 * Copyright 2026 The powerindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "powerindex/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "powerindex/error.h"

namespace powerindex {

namespace {

using json = nlohmann::ordered_json;

constexpr int kFullPrecision = 17;

double RoundTo(double v, int precision) {
  if (precision >= kFullPrecision || !std::isfinite(v)) return v;
  const double scale = std::pow(10.0, precision);
  const double r = std::round(v * scale) / scale;
  return r == 0 ? 0.0 : r;  // no "-0"
}

std::string FormatReal(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  if (precision >= kFullPrecision) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.*f", precision, RoundTo(v, precision));
  }
  return buf;
}

std::string CellText(const Cell& cell, int precision) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return FormatReal(v, precision);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

json CellJson(const Cell& cell, int precision) {
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return FormatReal(v, precision);
          return RoundTo(v, precision);
        } else {
          return v;
        }
      },
      cell);
}

std::string CsvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string RenderJson(const Document& doc, int precision) {
  json out;
  out["kind"] = doc.kind;
  for (const auto& [key, value] : doc.fields)
    out[key] = CellJson(value, precision);
  for (const Table& t : doc.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        obj[t.columns[c]] = CellJson(row[c], precision);
      }
      rows.push_back(std::move(obj));
    }
    if (out.contains(t.name)) {
      throw Error(ErrorCode::kInvariantViolation,
                  "report table '" + t.name + "' clashes with a field");
    }
    out[t.name] = std::move(rows);
  }
  if (!doc.warnings.empty()) out["warnings"] = doc.warnings;
  return out.dump(2) + "\n";
}

std::string RenderCsv(const Document& doc, int precision) {
  std::ostringstream out;
  bool first = true;
  if (!doc.fields.empty()) {
    out << "field,value\n";
    for (const auto& [key, value] : doc.fields) {
      out << CsvEscape(key) << "," << CsvEscape(CellText(value, precision))
          << "\n";
    }
    first = false;
  }
  for (const Table& t : doc.tables) {
    if (!first) out << "\n";
    first = false;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out << (c ? "," : "") << CsvEscape(t.columns[c]);
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << CsvEscape(CellText(row[c], precision));
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string RenderTable(const Document& doc, int precision) {
  std::ostringstream out;
  std::size_t key_width = 0;
  for (const auto& [key, value] : doc.fields)
    key_width = std::max(key_width, key.size());
  for (const auto& [key, value] : doc.fields) {
    out << key << std::string(key_width - key.size(), ' ') << " : "
        << CellText(value, precision) << "\n";
  }
  for (const Table& t : doc.tables) {
    if (out.tellp() > 0) out << "\n";
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      width[c] = t.columns[c].size();
    for (const auto& row : t.rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line.push_back(CellText(row[c], precision));
        width[c] = std::max(width[c], line.back().size());
      }
      text.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) line += "  ";
        // First column left-aligned, the rest right-aligned.
        if (c == 0) {
          line += cells[c] + std::string(width[c] - cells[c].size(), ' ');
        } else {
          line += std::string(width[c] - cells[c].size(), ' ') + cells[c];
        }
      }
      line.erase(line.find_last_not_of(' ') + 1);
      out << line << "\n";
    };
    emit(t.columns);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 2 * (width.size() - 1), '-') << "\n";
    for (const auto& line : text) emit(line);
  }
  for (const auto& w : doc.warnings) out << "warning: " << w << "\n";
  return out.str();
}

Cell Optional(std::optional<int> v) {
  if (!v) return std::string("none");
  return static_cast<std::int64_t>(*v);
}

}  // namespace

OutputFormat ParseOutputFormat(const std::string& name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "table") return OutputFormat::kTable;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown format '" + name + "' (expected json, csv or table)");
}

std::string Render(const Document& doc, OutputFormat format, int precision) {
  switch (format) {
    case OutputFormat::kJson:
      return RenderJson(doc, precision);
    case OutputFormat::kCsv:
      return RenderCsv(doc, precision);
    case OutputFormat::kTable:
      return RenderTable(doc, precision);
  }
  return {};
}

Document ExactDocument(const IndexReport& report) {
  Document doc;
  doc.kind = "exact";
  doc.fields = {
      {"mode", std::string(IndexModeName(report.mode))},
      {"players", static_cast<std::int64_t>(report.num_players())},
      {"coalitions_per_player", report.coalitions_per_player},
      {"total_swings", report.TotalSwings()},
  };
  if (report.mode == IndexMode::kAssociation) {
    doc.fields.emplace_back(
        "persuasion_scope",
        std::string(report.scope == PersuasionScope::kAllPlayers
                        ? "all_players"
                        : "coalition_only"));
  }
  Table t{"indices", {"player", "swing_count", "absolute", "normalized"}, {}};
  for (int i = 0; i < report.num_players(); ++i) {
    t.rows.push_back({report.player_ids[i], report.swing_counts[i],
                      report.absolute[i], report.normalized[i]});
  }
  doc.tables.push_back(std::move(t));
  doc.warnings = report.warnings;
  return doc;
}

Document ApproxDocument(const EstimateReport& estimate,
                        const std::vector<ConfidenceInterval>& intervals,
                        double epsilon) {
  Document doc;
  doc.kind = "approx";
  const IntervalMethod method =
      intervals.empty() ? IntervalMethod::kHoeffding : intervals[0].method;
  doc.fields = {
      {"mode", std::string(IndexModeName(estimate.mode))},
      {"samples_per_player", estimate.samples},
      {"seed", estimate.seed},
      {"method", std::string(IntervalMethodName(method))},
      {"epsilon", epsilon},
      {"delta", intervals.empty() ? Cell{} : Cell{intervals[0].delta}},
  };
  Table t{"estimates",
          {"player", "swing_count", "estimate", "sample_variance", "lower",
           "upper", "halfwidth", "B"},
          {}};
  for (int i = 0; i < estimate.num_players(); ++i) {
    const ConfidenceInterval& ci = intervals[i];
    t.rows.push_back({estimate.player_ids[i], estimate.swing_counts[i],
                      estimate.estimates[i], estimate.sample_variance[i],
                      ci.lower, ci.upper, ci.halfwidth,
                      ci.bound_b ? Cell{*ci.bound_b} : Cell{}});
  }
  doc.tables.push_back(std::move(t));
  return doc;
}

Document BoundsDocument(const BoundsReport& report, std::optional<int> player) {
  Document doc;
  doc.kind = "bounds";
  const GlobalBounds& g = report.global;
  doc.fields = {
      {"m_low", g.window.m_low},
      {"m_high",
       g.window.m_high ? Cell{*g.window.m_high} : Cell{std::string("inf")}},
      {"bound1", g.bound1},
      {"bound2", g.bound2},
  };
  if (g.max_index) {
    doc.fields.emplace_back("max_absolute_index", *g.max_index);
    doc.fields.emplace_back("bound1_violated", *g.bound1_violated);
    doc.fields.emplace_back("bound2_violated", *g.bound2_violated);
  }
  for (const auto& [key, note] : report.notes) {
    doc.fields.emplace_back("reading_" + key, note);
  }
  Table t{"players",
          {"player", "t", "h", "ht_bound", "absolute", "ht_violated"},
          {}};
  for (int i = 0; i < static_cast<int>(report.player_ids.size()); ++i) {
    if (player && *player != i) continue;
    const HtBoundResult& ht = report.ht[i];
    t.rows.push_back(
        {report.player_ids[i], Optional(ht.t), Optional(ht.h), ht.bound,
         report.exact ? Cell{report.exact->absolute[i]} : Cell{},
         report.exact ? Cell{static_cast<bool>(report.ht_violated[i])}
                      : Cell{}});
  }
  doc.tables.push_back(std::move(t));
  if (!report.exact) {
    doc.warnings.push_back(
        "game too large for exact enumeration; violation flags omitted");
  }
  return doc;
}

Document ConjectureDocument(const ConjectureReport& report,
                            const ConjectureParams& params,
                            std::uint64_t seed) {
  Document doc;
  doc.kind = "conjecture";
  doc.fields = {
      {"games_scanned", report.games_scanned},
      {"seed", seed},
      {"min_players", static_cast<std::int64_t>(params.min_players)},
      {"max_players", static_cast<std::int64_t>(params.max_players)},
      {"min_weight", static_cast<std::int64_t>(params.min_weight)},
      {"max_weight", static_cast<std::int64_t>(params.max_weight)},
      {"quota_fraction", params.quota_fraction},
      {"counterexample_count",
       static_cast<std::uint64_t>(report.counterexamples.size())},
      {"min_slack", report.min_slack},
      {"min_slack_trial", report.min_slack_trial},
  };
  Table t{"counterexamples",
          {"trial", "weights", "quota", "player", "normalized", "bound"},
          {}};
  for (const auto& cx : report.counterexamples) {
    std::ostringstream w;
    for (std::size_t i = 0; i < cx.weights.size(); ++i) {
      w << (i ? " " : "") << cx.weights[i];
    }
    t.rows.push_back({cx.trial, w.str(), cx.quota,
                      static_cast<std::int64_t>(cx.player), cx.normalized_index,
                      cx.bound});
  }
  doc.tables.push_back(std::move(t));
  return doc;
}

}  // namespace powerindex
