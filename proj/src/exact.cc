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

#include "powerindex/exact.h"

#include <algorithm>
#include <utility>

#include "powerindex/error.h"

namespace powerindex {

const char* IndexModeName(IndexMode mode) {
  return mode == IndexMode::kClassical ? "classical" : "association";
}

std::uint64_t IndexReport::TotalSwings() const {
  std::uint64_t total = 0;
  for (auto c : swing_counts) total += c;
  return total;
}

IndexReport MakeIndexReport(const VotingGame& game, IndexMode mode,
                            std::vector<std::uint64_t> swing_counts) {
  IndexReport report;
  report.mode = mode;
  report.player_ids = game.player_ids();
  report.coalitions_per_player = std::uint64_t{1} << (game.num_players() - 1);
  report.swing_counts = std::move(swing_counts);
  const double denom = static_cast<double>(report.coalitions_per_player);
  const std::uint64_t total = report.TotalSwings();
  for (auto c : report.swing_counts) {
    report.absolute.push_back(static_cast<double>(c) / denom);
    report.normalized.push_back(
        total == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(total));
  }
  return report;
}

IndexReport ExactIndices(const VotingGame& game,
                         const std::optional<AssociationMatrix>& phi,
                         const ExactOptions& options) {
  const int m = game.num_players();
  if (m > kExactMaxPlayers) {
    throw Error(ErrorCode::kCapacityExceeded,
                "exact enumeration supports at most " +
                    std::to_string(kExactMaxPlayers) + " players, got " +
                    std::to_string(m) + "; use sampling instead");
  }
  if (phi) CheckAssociationFits(game, *phi);
  SwingContext ctx(game, phi, options.scope);
  IndexReport report = MakeIndexReport(
      game, phi ? IndexMode::kAssociation : IndexMode::kClassical,
      CountAllSwings(ctx, options.execution));
  report.scope = options.scope;
  if (m >= kExactWarnPlayers) {
    report.warnings.push_back(
        "exact enumeration over " + std::to_string(m) +
        " players visits m*2^(m-1) coalitions; expect long runtimes");
  }
  return report;
}

DeltaReport AssociationDelta(const VotingGame& game,
                             const AssociationMatrix& phi, int player) {
  if (game.num_dimensions() != 1) {
    throw Error(ErrorCode::kUnsupported,
                "association delta is defined for single-quota games only");
  }
  if (game.num_players() > kExactMaxPlayers) {
    throw Error(ErrorCode::kCapacityExceeded,
                "association delta enumerates coalitions; at most " +
                    std::to_string(kExactMaxPlayers) + " players");
  }
  const PersuasionLoad load = ComputePersuasionLoad(game, phi, player);

  DeltaReport out;
  out.player = player;
  out.surplus = load.surplus[0];
  const double q = game.quota(0);
  const double w = game.weight(player, 0);
  out.shifted_quota = q + w;
  // Window on coalition weight where classical and association criticality
  // disagree. Gains when the surplus is positive, losses when negative.
  if (out.surplus > 0) {
    out.window_low = out.shifted_quota;
    out.window_high = out.shifted_quota + out.surplus;
  } else if (out.surplus < 0) {
    out.window_low = std::max(q, out.shifted_quota + out.surplus);
    out.window_high = out.shifted_quota;
  } else {
    out.window_low = out.window_high = out.shifted_quota;
  }

  const int m = game.num_players();
  const SubsetSumTable sums(m, 1, game.weights());
  const std::uint64_t total = std::uint64_t{1} << (m - 1);
  // In-window test expressed with the game's boundary comparison so the
  // tolerance matches the criticality predicates.
  const VotingGame low_gate = game.WithQuotas({out.window_low});
  std::uint64_t in_window = 0;
  if (out.window_high > out.window_low) {
    const VotingGame high_gate = game.WithQuotas({out.window_high});
    for (std::uint64_t r = 0; r < total; ++r) {
      const double s = sums.Sum(ExpandWithPlayer(r, player), 0);
      in_window += low_gate.Meets(s, 0) && !high_gate.Meets(s, 0);
    }
  }
  if (out.surplus > 0) {
    out.gain_count = in_window;
  } else {
    out.loss_count = in_window;
  }
  out.delta = (static_cast<double>(out.gain_count) -
               static_cast<double>(out.loss_count)) /
              static_cast<double>(total);
  return out;
}

}  // namespace powerindex
