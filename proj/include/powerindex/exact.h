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

// Exact Banzhaf indices by enumerating every coalition containing each
// player, in the classical and the association-aware variant.

#ifndef POWERINDEX_EXACT_H_
#define POWERINDEX_EXACT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powerindex/game.h"
#include "powerindex/swing_kernels.h"

namespace powerindex {

// Hard cap on players for exact enumeration; cost is m * 2^(m-1).
inline constexpr int kExactMaxPlayers = 32;
// Player count from which a runtime warning is attached to the report.
inline constexpr int kExactWarnPlayers = 26;

enum class IndexMode { kClassical, kAssociation };

const char* IndexModeName(IndexMode mode);

struct ExactOptions {
  PersuasionScope scope = PersuasionScope::kAllPlayers;
  Execution execution;
};

struct IndexReport {
  IndexMode mode = IndexMode::kClassical;
  PersuasionScope scope = PersuasionScope::kAllPlayers;
  std::vector<std::string> player_ids;
  std::vector<std::uint64_t> swing_counts;
  // swing_count / 2^(m-1)
  std::vector<double> absolute;
  // swing_count / total swings; all zero when no player ever swings.
  std::vector<double> normalized;
  std::uint64_t coalitions_per_player = 0;
  std::vector<std::string> warnings;

  int num_players() const { return static_cast<int>(player_ids.size()); }
  std::uint64_t TotalSwings() const;
};

// Throws Error(kCapacityExceeded) for more than kExactMaxPlayers players and
// Error(kDimensionMismatch) when phi does not fit the game.
IndexReport ExactIndices(const VotingGame& game,
                         const std::optional<AssociationMatrix>& phi,
                         const ExactOptions& options = {});

// Builds a report from raw swing counts (shared with the sampling and EU
// tooling).
IndexReport MakeIndexReport(const VotingGame& game, IndexMode mode,
                            std::vector<std::uint64_t> swing_counts);

// Change in a player's absolute index caused by association, counted
// through the persuasion window on coalition weight. Single-quota games.
struct DeltaReport {
  int player = 0;
  double surplus = 0;  // d_i
  // q_i = q + w_i; the window is [window_low, window_high).
  double shifted_quota = 0;
  double window_low = 0;
  double window_high = 0;
  std::uint64_t gain_count = 0;
  std::uint64_t loss_count = 0;
  double delta = 0;  // (gain - loss) / 2^(m-1)
};

// Throws Error(kUnsupported) for multi-quota games.
DeltaReport AssociationDelta(const VotingGame& game,
                             const AssociationMatrix& phi, int player);

}  // namespace powerindex

#endif  // POWERINDEX_EXACT_H_
