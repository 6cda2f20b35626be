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

#include "powerindex/data.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "powerindex/error.h"
#include "powerindex/random.h"

namespace powerindex {

namespace {

using nlohmann::json;

constexpr std::array<EuCountry, 18> kEuCountries = {{
    {"AUT", "Austria", 10, 8.58, 0.03549},
    {"BEL", "Belgium", 12, 11.25, 0.04403},
    {"CZE", "Czech Republic", 12, 10.53, 0.04403},
    {"DEU", "Germany", 29, 82.30, 0.09560},
    {"DNK", "Denmark", 7, 5.66, 0.02629},
    {"ESP", "Spain", 27, 46.46, 0.08853},
    {"FIN", "Finland", 7, 5.47, 0.02629},
    {"FRA", "France", 29, 66.99, 0.09560},
    {"GBR", "Britain", 29, 65.11, 0.09560},
    {"GRC", "Greece", 12, 10.81, 0.04403},
    {"HUN", "Hungary", 12, 9.85, 0.04403},
    {"IRL", "Ireland", 7, 4.63, 0.02629},
    {"ITA", "Italy", 29, 60.79, 0.09560},
    {"NLD", "Netherlands", 13, 17.10, 0.04418},
    {"POL", "Poland", 27, 38.56, 0.08853},
    {"PRT", "Portugal", 12, 10.37, 0.04403},
    {"SVK", "Slovakia", 7, 5.42, 0.02629},
    {"SWE", "Sweden", 10, 10.01, 0.03549},
}};

constexpr double kEuVoteTotal = 291;
constexpr double kEuPopulationTotal = 469.93;
constexpr double kEuVoteShare = 0.74;
constexpr double kEuPopulationShare = 0.62;
constexpr double kEuCountryQuota = 10;

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool ParseNumber(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size() && std::isfinite(out);
}

// Reads non-blank lines, stripping a UTF-8 byte-order mark.
std::vector<std::pair<int, std::string>> ReadLines(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (Trim(line).empty()) continue;
    lines.emplace_back(number, line);
  }
  return lines;
}

[[noreturn]] void ParseFail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

[[noreturn]] void InvariantFail(const std::string& where,
                                const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, where + ": " + what);
}

double JsonNumber(const json& value, const std::string& where) {
  if (!value.is_number()) ParseFail(where, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) InvariantFail(where, "must be finite");
  return v;
}

}  // namespace

// Migration CSV

MigrationTable ParseMigrationCsv(std::istream& in) {
  const auto lines = ReadLines(in);
  if (lines.empty()) ParseFail("migration csv", "empty input");
  MigrationTable table;
  table.labels = SplitCsvLine(lines[0].second);
  const std::size_t m = table.labels.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (table.labels[i].empty()) {
      ParseFail("migration csv line " + std::to_string(lines[0].first),
                "empty country id in column " + std::to_string(i + 1));
    }
  }
  if (lines.size() - 1 != m) {
    ParseFail("migration csv", "expected " + std::to_string(m) +
                                   " data rows for " + std::to_string(m) +
                                   " countries, got " +
                                   std::to_string(lines.size() - 1));
  }
  table.flows.reserve(m * m);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string where =
        "migration csv line " + std::to_string(lines[r].first);
    const auto cells = SplitCsvLine(lines[r].second);
    if (cells.size() != m) {
      ParseFail(where, "expected " + std::to_string(m) + " values, got " +
                           std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < m; ++c) {
      double v;
      if (!ParseNumber(cells[c], v)) {
        ParseFail(where, "column " + std::to_string(c + 1) + ": '" + cells[c] +
                             "' is not a number");
      }
      if (v < 0) {
        InvariantFail(where, "column " + std::to_string(c + 1) +
                                 ": flows must be non-negative");
      }
      table.flows.push_back(v);
    }
  }
  return table;
}

MigrationTable ReadMigrationCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ParseMigrationCsv(in);
}

AssociationMatrix BuildMigrationAssociation(const MigrationTable& table) {
  const int m = table.size();
  if (m < 1 || table.flows.size() != static_cast<std::size_t>(m) * m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "migration table must be square and non-empty");
  }
  double max_gap = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) {
        max_gap =
            std::max(max_gap, std::abs(table.flow(i, j) - table.flow(j, i)));
      }
    }
  }
  if (max_gap == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "migration flows are fully symmetric; the normalizing maximum "
                "|M_ij - M_ji| is zero");
  }
  std::vector<double> phi(static_cast<std::size_t>(m) * m, 0.0);
  auto at = [&](int i, int j) -> double& {
    return phi[static_cast<std::size_t>(i) * m + j];
  };
  for (int i = 0; i < m; ++i) {
    at(i, i) = 1;
    for (int j = 0; j < i; ++j) {
      const double v = (table.flow(j, i) - table.flow(i, j)) / max_gap;
      at(i, j) = v;
      at(j, i) = v == 0 ? 0.0 : -v;
    }
  }
  return AssociationMatrix(m, std::move(phi));
}

AssociationMatrix RandomAssociation(int size, std::uint64_t seed) {
  if (size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "association size must be at least 1");
  }
  const CounterRng rng(seed);
  std::vector<double> phi(static_cast<std::size_t>(size) * size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      phi[static_cast<std::size_t>(i) * size + j] =
          i == j ? 1.0 : 2 * UnitInterval(rng(i, j)) - 1;
    }
  }
  return AssociationMatrix(size, std::move(phi));
}

// EU game

std::span<const EuCountry> EuCountries() { return kEuCountries; }

VotingGame EuGame(EuQuotaRule rule) {
  std::vector<std::string> ids;
  std::vector<double> weights;
  std::string order;
  for (const EuCountry& c : kEuCountries) {
    ids.emplace_back(c.code);
    weights.push_back(c.votes);
    weights.push_back(c.population_millions);
    weights.push_back(1);
    if (!order.empty()) order += ",";
    order += c.code;
  }
  const double vote_quota = rule == EuQuotaRule::kWholeVotes
                                ? std::round(kEuVoteShare * kEuVoteTotal)
                                : kEuVoteShare * kEuVoteTotal;
  std::map<std::string, std::string> metadata = {
      {"name", "EU Council, members with at least 7 votes"},
      {"country_order", order},
      {"dimensions", "votes,population_millions,countries"},
      {"vote_quota_rule",
       rule == EuQuotaRule::kWholeVotes ? "whole_votes" : "exact_fraction"},
      {"population_total", "469.93"},
  };
  return VotingGame(
      std::move(ids), std::move(weights),
      {vote_quota, kEuPopulationShare * kEuPopulationTotal, kEuCountryQuota},
      std::nullopt, std::move(metadata));
}

// Game files

namespace {

AssociationMatrix AssociationFromJson(const json& rows,
                                      const std::string& where) {
  if (!rows.is_array()) ParseFail(where, "expected an array of rows");
  std::vector<std::vector<double>> values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) ParseFail(row_where, "expected an array");
    std::vector<double> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      row.push_back(
          JsonNumber(rows[i][j], row_where + "[" + std::to_string(j) + "]"));
    }
    values.push_back(std::move(row));
  }
  try {
    return AssociationMatrix::FromRows(values);
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
}

}  // namespace

VotingGame LoadGame(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("game file: ") + e.what());
  }
  if (!doc.is_object()) ParseFail("game file", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static const std::array<const char*, 6> kKnown = {
        "players", "quotas", "quota", "association", "boundary", "metadata"};
    if (std::find_if(kKnown.begin(), kKnown.end(),
                     [&](const char* k) { return key == k; }) == kKnown.end()) {
      ParseFail(key, "unknown field");
    }
  }

  if (!doc.contains("players") || !doc["players"].is_array() ||
      doc["players"].empty()) {
    ParseFail("players", "expected a non-empty array");
  }
  const json& players = doc["players"];
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string where = "players[" + std::to_string(i) + "]";
    const json& p = players[i];
    if (!p.is_object()) ParseFail(where, "expected an object");
    if (p.contains("id")) {
      if (!p["id"].is_string()) ParseFail(where + ".id", "expected a string");
      ids.push_back(p["id"].get<std::string>());
    } else {
      ids.push_back("p" + std::to_string(i + 1));
    }
    std::vector<double> row;
    if (p.contains("weights")) {
      const json& w = p["weights"];
      if (!w.is_array() || w.empty()) {
        ParseFail(where + ".weights", "expected a non-empty array");
      }
      for (std::size_t d = 0; d < w.size(); ++d) {
        row.push_back(
            JsonNumber(w[d], where + ".weights[" + std::to_string(d) + "]"));
      }
    } else if (p.contains("weight")) {
      row.push_back(JsonNumber(p["weight"], where + ".weight"));
    } else {
      ParseFail(where, "missing 'weights'");
    }
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (row[d] < 0) {
        InvariantFail(where + ".weights[" + std::to_string(d) + "]",
                      "weights must be non-negative");
      }
    }
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  where + ".weights: expected " +
                      std::to_string(rows[0].size()) + " dimensions, got " +
                      std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (ids[i] == ids[j]) {
        InvariantFail("players[" + std::to_string(i) + "].id",
                      "duplicate id '" + ids[i] + "'");
      }
    }
  }
  const std::size_t k = rows[0].size();

  json quotas;
  if (doc.contains("quotas")) {
    quotas = doc["quotas"];
    if (!quotas.is_array()) ParseFail("quotas", "expected an array");
  } else if (doc.contains("quota")) {
    quotas = json::array({doc["quota"]});
  } else {
    ParseFail("quotas", "missing");
  }
  if (quotas.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch,
                "quotas: expected " + std::to_string(k) +
                    " entries (one per weight dimension), got " +
                    std::to_string(quotas.size()));
  }
  std::vector<double> resolved;
  for (std::size_t d = 0; d < k; ++d) {
    const std::string where = "quotas[" + std::to_string(d) + "]";
    const json& q = quotas[d];
    double value;
    if (q.is_number()) {
      value = JsonNumber(q, where);
    } else if (q.is_object() && q.contains("fraction") && q.size() == 1) {
      const double f = JsonNumber(q["fraction"], where + ".fraction");
      double total = 0;
      for (const auto& row : rows) total += row[d];
      value = f * total;
    } else if (q.is_object() && q.contains("absolute") && q.size() == 1) {
      value = JsonNumber(q["absolute"], where + ".absolute");
    } else {
      ParseFail(where,
                "expected a number, {\"fraction\": f} or {\"absolute\": x}");
    }
    if (!(value > 0)) InvariantFail(where, "quotas must be positive");
    resolved.push_back(value);
  }

  std::optional<AssociationMatrix> association;
  if (doc.contains("association") && !doc["association"].is_null()) {
    association = AssociationFromJson(doc["association"], "association");
    if (association->size() != static_cast<int>(ids.size())) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "association: matrix is " +
                      std::to_string(association->size()) + "x" +
                      std::to_string(association->size()) + " but there are " +
                      std::to_string(ids.size()) + " players");
    }
  }

  BoundaryRule boundary = BoundaryRule::kAtLeast;
  if (doc.contains("boundary")) {
    const json& b = doc["boundary"];
    if (b == "at_least") {
      boundary = BoundaryRule::kAtLeast;
    } else if (b == "strictly_above") {
      boundary = BoundaryRule::kStrictlyAbove;
    } else {
      ParseFail("boundary", "expected \"at_least\" or \"strictly_above\"");
    }
  }

  std::map<std::string, std::string> metadata;
  if (doc.contains("metadata")) {
    const json& md = doc["metadata"];
    if (!md.is_object()) ParseFail("metadata", "expected an object");
    for (const auto& [key, value] : md.items()) {
      metadata[key] =
          value.is_string() ? value.get<std::string>() : value.dump();
    }
  }

  std::vector<double> weights;
  for (const auto& row : rows)
    weights.insert(weights.end(), row.begin(), row.end());
  VotingGame game(std::move(ids), std::move(weights), std::move(resolved),
                  std::move(association), std::move(metadata));
  return boundary == BoundaryRule::kAtLeast ? game
                                            : game.WithBoundary(boundary);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

VotingGame LoadGameFile(const std::string& path) {
  try {
    return LoadGame(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string SerializeGame(const VotingGame& game) {
  json doc;
  json players = json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    const auto w = game.WeightVector(i);
    players.push_back({{"id", game.player_ids()[i]},
                       {"weights", std::vector<double>(w.begin(), w.end())}});
  }
  doc["players"] = std::move(players);
  doc["quotas"] = game.quotas();
  if (game.association()) {
    json rows = json::array();
    for (int i = 0; i < game.association()->size(); ++i) {
      const auto r = game.association()->Row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["association"] = std::move(rows);
  }
  doc["boundary"] =
      game.boundary() == BoundaryRule::kAtLeast ? "at_least" : "strictly_above";
  if (!game.metadata().empty()) doc["metadata"] = game.metadata();
  return doc.dump(2) + "\n";
}

// Association files

AssociationMatrix ParseAssociation(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first == std::string::npos) ParseFail("association", "empty input");
  if (text[first] == '[' || text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParse, std::string("association: ") + e.what());
    }
    if (doc.is_object()) {
      if (!doc.contains("association")) {
        ParseFail("association", "object has no 'association' member");
      }
      return AssociationFromJson(doc["association"], "association");
    }
    return AssociationFromJson(doc, "association");
  }

  std::istringstream in(text);
  auto lines = ReadLines(in);
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto cells = SplitCsvLine(lines[r].second);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& cell : cells) {
      double v;
      if (!ParseNumber(cell, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (r == 0) continue;  // header
      ParseFail("association csv line " + std::to_string(lines[r].first),
                "non-numeric value");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) ParseFail("association csv", "no numeric rows");
  return AssociationMatrix::FromRows(rows);
}

AssociationMatrix LoadAssociationFile(const std::string& path) {
  try {
    return ParseAssociation(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace powerindex
