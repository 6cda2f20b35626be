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

#include "powerindex/swing_kernels.h"

#include <omp.h>

#include "powerindex/error.h"

namespace powerindex {

namespace {

std::vector<double> BuildHalfTable(int bits, int offset, int dims,
                                   const std::vector<double>& values) {
  const std::size_t size = std::size_t{1} << bits;
  std::vector<double> table(size * dims, 0.0);
  // Entry for mask = entry for mask without its top bit + that player's row;
  // the summation order therefore depends only on the mask.
  for (std::size_t mask = 1; mask < size; ++mask) {
    const int top = 63 - __builtin_clzll(mask);
    const std::size_t rest = mask & ~(std::size_t{1} << top);
    const std::size_t row = static_cast<std::size_t>(offset + top) * dims;
    for (int d = 0; d < dims; ++d) {
      table[mask * dims + d] = table[rest * dims + d] + values[row + d];
    }
  }
  return table;
}

}  // namespace

SubsetSumTable::SubsetSumTable(int num_players, int num_dimensions,
                               const std::vector<double>& row_major_values)
    : dims_(num_dimensions),
      low_bits_((num_players + 1) / 2),
      low_mask_((std::uint64_t{1} << low_bits_) - 1) {
  if (num_players > 40) {
    throw Error(ErrorCode::kCapacityExceeded,
                "subset-sum tables support at most 40 players");
  }
  low_ = BuildHalfTable(low_bits_, 0, dims_, row_major_values);
  high_ = BuildHalfTable(num_players - low_bits_, low_bits_, dims_,
                         row_major_values);
}

SwingContext::SwingContext(const VotingGame& game,
                           const std::optional<AssociationMatrix>& phi,
                           PersuasionScope scope)
    : game_(game),
      phi_(phi),
      scope_(scope),
      weight_sums_(game.num_players(), game.num_dimensions(), game.weights()) {
  if (phi_) CheckAssociationFits(game_, *phi_);
  const int m = game.num_players();
  const int k = game.num_dimensions();
  loads_.assign(static_cast<std::size_t>(m) * k, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int d = 0; d < k; ++d) {
      double load;
      if (phi_) {
        // Same accumulation order as ComputePersuasionLoad.
        load = 0;
        for (int j = 0; j < m; ++j) load += (*phi_)(i, j) * game.weight(j, d);
      } else {
        load = game.weight(i, d);
      }
      loads_[static_cast<std::size_t>(i) * k + d] = load;
    }
  }
}

SubsetSumTable SwingContext::PlayerLoadTable(int player) const {
  const int m = num_players();
  const int k = num_dimensions();
  std::vector<double> values(static_cast<std::size_t>(m) * k);
  for (int j = 0; j < m; ++j) {
    for (int d = 0; d < k; ++d) {
      values[static_cast<std::size_t>(j) * k + d] =
          phi_ ? (*phi_)(player, j) * game_.weight(j, d)
               : (j == player ? game_.weight(j, d) : 0.0);
    }
  }
  return SubsetSumTable(m, k, values);
}

bool SwingContext::IsCritical(int player, std::uint64_t mask,
                              const SubsetSumTable* load_table) const {
  const int k = num_dimensions();
  const bool per_coalition = phi_ && scope_ == PersuasionScope::kCoalitionOnly;
  bool critical = false;
  for (int d = 0; d < k; ++d) {
    const double sum = weight_sums_.Sum(mask, d);
    if (!game_.Meets(sum, d)) return false;
    const double load =
        per_coalition ? load_table->Sum(mask, d) : this->load(player, d);
    if (!game_.Meets(sum - load, d)) critical = true;
  }
  return critical;
}

namespace {

// Range kernel shared by the serial and parallel drivers.
std::uint64_t CountRange(const SwingContext& ctx, int player,
                         const SubsetSumTable* load_table, std::uint64_t begin,
                         std::uint64_t end) {
  std::uint64_t count = 0;
  for (std::uint64_t r = begin; r < end; ++r) {
    count += ctx.IsCritical(player, ExpandWithPlayer(r, player), load_table);
  }
  return count;
}

std::optional<SubsetSumTable> MaybeLoadTable(const SwingContext& ctx,
                                             int player) {
  if (ctx.association() && ctx.scope() == PersuasionScope::kCoalitionOnly) {
    return ctx.PlayerLoadTable(player);
  }
  return std::nullopt;
}

void CheckPlayer(const SwingContext& ctx, int player) {
  if (player < 0 || player >= ctx.num_players()) {
    throw Error(ErrorCode::kInvalidArgument,
                "player index out of range: " + std::to_string(player));
  }
}

}  // namespace

std::uint64_t CountSwingsSerial(const SwingContext& ctx, int player) {
  CheckPlayer(ctx, player);
  const auto table = MaybeLoadTable(ctx, player);
  const std::uint64_t total = std::uint64_t{1} << (ctx.num_players() - 1);
  return CountRange(ctx, player, table ? &*table : nullptr, 0, total);
}

std::uint64_t CountSwingsParallel(const SwingContext& ctx, int player,
                                  int num_threads) {
  CheckPlayer(ctx, player);
  const auto table = MaybeLoadTable(ctx, player);
  const SubsetSumTable* table_ptr = table ? &*table : nullptr;
  const std::int64_t total =
      static_cast<std::int64_t>(std::uint64_t{1} << (ctx.num_players() - 1));
  const int threads = num_threads > 0 ? num_threads : omp_get_max_threads();
  std::uint64_t count = 0;
#pragma omp parallel for num_threads(threads) schedule(static) \
    reduction(+ : count)
  for (std::int64_t r = 0; r < total; ++r) {
    count += ctx.IsCritical(
        player, ExpandWithPlayer(static_cast<std::uint64_t>(r), player),
        table_ptr);
  }
  return count;
}

std::vector<std::uint64_t> CountAllSwings(const SwingContext& ctx,
                                          const Execution& exec) {
  std::vector<std::uint64_t> counts(ctx.num_players());
  for (int i = 0; i < ctx.num_players(); ++i) {
    counts[i] = exec.parallel ? CountSwingsParallel(ctx, i, exec.num_threads)
                              : CountSwingsSerial(ctx, i);
  }
  return counts;
}

}  // namespace powerindex
