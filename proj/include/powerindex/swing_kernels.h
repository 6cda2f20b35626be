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

// Coalition-enumeration kernels behind the exact engine. Each kernel counts,
// for one player, the coalitions containing that player in which the player
// is critical. The serial kernel is the reference; the OpenMP kernel splits
// the coalition range across threads and must agree with it bit for bit.

#ifndef POWERINDEX_SWING_KERNELS_H_
#define POWERINDEX_SWING_KERNELS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "powerindex/game.h"

namespace powerindex {

struct Execution {
  bool parallel = true;
  // 0 keeps the OpenMP default.
  int num_threads = 0;
};

// Subset sums of an m x k value matrix through two half-width lookup
// tables: sum(mask) = low[mask & low_mask] + high[mask >> low_bits]. Every
// caller sees the same floating-point sum for a given mask, regardless of
// how the mask range is partitioned.
class SubsetSumTable {
 public:
  SubsetSumTable(int num_players, int num_dimensions,
                 const std::vector<double>& row_major_values);

  void Sum(std::uint64_t mask, double* out) const {
    const double* lo = &low_[(mask & low_mask_) * dims_];
    const double* hi = &high_[(mask >> low_bits_) * dims_];
    for (int d = 0; d < dims_; ++d) out[d] = lo[d] + hi[d];
  }
  double Sum(std::uint64_t mask, int dim) const {
    return low_[(mask & low_mask_) * dims_ + dim] +
           high_[(mask >> low_bits_) * dims_ + dim];
  }

 private:
  int dims_;
  int low_bits_;
  std::uint64_t low_mask_;
  std::vector<double> low_;
  std::vector<double> high_;
};

// Everything a kernel needs for one game and one criticality mode.
class SwingContext {
 public:
  // `phi` absent selects classical criticality.
  SwingContext(const VotingGame& game,
               const std::optional<AssociationMatrix>& phi,
               PersuasionScope scope = PersuasionScope::kAllPlayers);

  const VotingGame& game() const { return game_; }
  int num_players() const { return game_.num_players(); }
  int num_dimensions() const { return game_.num_dimensions(); }
  bool association() const { return phi_.has_value(); }
  PersuasionScope scope() const { return scope_; }
  const SubsetSumTable& weight_sums() const { return weight_sums_; }

  // Fixed persuasion load of `player` in `dim` (own weight when classical);
  // meaningless for kCoalitionOnly scope.
  double load(int player, int dim) const {
    return loads_[static_cast<std::size_t>(player) * num_dimensions() + dim];
  }

  // Subset sums of a_ij w_jd for row `player`; used with kCoalitionOnly.
  SubsetSumTable PlayerLoadTable(int player) const;

  // Whether `player` is critical in coalition `mask` (which must contain
  // the player). `load_table` is required for kCoalitionOnly scope.
  bool IsCritical(int player, std::uint64_t mask,
                  const SubsetSumTable* load_table) const;

 private:
  const VotingGame& game_;
  std::optional<AssociationMatrix> phi_;
  PersuasionScope scope_;
  SubsetSumTable weight_sums_;
  std::vector<double> loads_;
};

// Inserts `player`'s bit into a mask over the other m-1 players.
constexpr std::uint64_t ExpandWithPlayer(std::uint64_t others, int player) {
  const std::uint64_t below = (std::uint64_t{1} << player) - 1;
  return (others & below) | ((others & ~below) << 1) |
         (std::uint64_t{1} << player);
}

std::uint64_t CountSwingsSerial(const SwingContext& ctx, int player);
std::uint64_t CountSwingsParallel(const SwingContext& ctx, int player,
                                  int num_threads = 0);

// Swing counts for every player under the given execution policy.
std::vector<std::uint64_t> CountAllSwings(const SwingContext& ctx,
                                          const Execution& exec);

}  // namespace powerindex

#endif  // POWERINDEX_SWING_KERNELS_H_
