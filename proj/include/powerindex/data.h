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

// Game construction and ingestion: JSON game files, migration-flow CSV
// association matrices, random association matrices and the embedded
// 18-country EU qualified-majority game.

#ifndef POWERINDEX_DATA_H_
#define POWERINDEX_DATA_H_

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "powerindex/game.h"

namespace powerindex {

// M_ij = migrants from country i to country j (row-major); the diagonal is
// ignored.
struct MigrationTable {
  std::vector<std::string> labels;
  std::vector<double> flows;

  int size() const { return static_cast<int>(labels.size()); }
  double flow(int from, int to) const {
    return flows[static_cast<std::size_t>(from) * labels.size() + to];
  }
};

// Header row of ids, then one row of counts per id. Throws Error(kParse)
// with the line number on malformed input.
MigrationTable ParseMigrationCsv(std::istream& in);
MigrationTable ReadMigrationCsv(const std::string& path);

// With M = max_{i != j} |M_ij - M_ji|: unit diagonal,
// phi_ij = (M_ji - M_ij) / M below the diagonal and phi_ij = -phi_ji above
// it. Throws Error(kInvalidArgument) when all flows are symmetric (M = 0).
AssociationMatrix BuildMigrationAssociation(const MigrationTable& table);

// Unit diagonal, off-diagonal entries uniform on [-1, 1]; deterministic in
// (size, seed).
AssociationMatrix RandomAssociation(int size, std::uint64_t seed);

struct EuCountry {
  const char* code;
  const char* name;
  int votes;
  double population_millions;
  // Normalized classical index of the 3-quota game, 5 decimals.
  double reference_index;
};

// The 18 members with at least 7 votes, in alphabetical code order.
std::span<const EuCountry> EuCountries();

enum class EuQuotaRule {
  // Vote quota 74% of 291 rounded to whole votes (215).
  kWholeVotes,
  // Vote quota exactly 0.74 * 291 = 215.34.
  kExactFraction,
};

// Dimensions: votes, population (millions), one per country. Quotas: 74% of
// votes, 62% of the reference population total 469.93, and 10 countries.
VotingGame EuGame(EuQuotaRule rule = EuQuotaRule::kWholeVotes);

// Game file (JSON):
//   {
//     "players": [{"id": "A", "weights": [3, 1]}, ...],   // or "weight": 3
//     "quotas": [4, {"fraction": 0.5}, {"absolute": 2}],   // or "quota": 4
//     "association": [[1, 0.5], [-0.2, 1]],                // optional
//     "boundary": "at_least" | "strictly_above",           // optional
//     "metadata": {"key": "value"}                         // optional
//   }
// Fraction quotas resolve against the dimension's total weight. Throws
// Error(kParse) on malformed JSON or wrong types and
// Error(kInvariantViolation) on invalid values, naming the field.
VotingGame LoadGame(const std::string& json_text);
VotingGame LoadGameFile(const std::string& path);

// Inverse of LoadGame with absolute quotas; LoadGame(SerializeGame(g)) == g.
std::string SerializeGame(const VotingGame& game);

// Association matrix from a JSON array of rows, a JSON object with an
// "association" member, or CSV rows of numbers (an optional non-numeric
// header row is skipped). Format chosen from the first non-blank character.
AssociationMatrix ParseAssociation(const std::string& text);
AssociationMatrix LoadAssociationFile(const std::string& path);

std::string ReadTextFile(const std::string& path);

}  // namespace powerindex

#endif  // POWERINDEX_DATA_H_
