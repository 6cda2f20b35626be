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

// Weighted voting games: players with k-dimensional weights, k quotas and an
// optional association (persuasion) matrix, together with the winning and
// criticality predicates every engine in this library is built on.
//
// Winning is componentwise: a coalition wins when, in every dimension d, the
// summed weight of its members meets quota d. A member is critical when the
// coalition wins and the residual weight after removing that member (or,
// with an association matrix, after removing the member's persuasion load)
// falls below quota in at least one dimension.

#ifndef POWERINDEX_GAME_H_
#define POWERINDEX_GAME_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace powerindex {

// Largest player count representable by a Coalition.
inline constexpr int kMaxPlayers = 64;

// Relative tolerance applied to the winning boundary for dimensions whose
// weights or quota are not all integers.
inline constexpr double kBoundaryRelTolerance = 1e-12;

// Subset of players as a bitmask; bit i set means player i is a member.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}

  static Coalition FromMembers(std::span<const int> members);
  static Coalition FromMembers(std::initializer_list<int> members) {
    return FromMembers(std::span<const int>(members.begin(), members.size()));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool Contains(int player) const { return (bits_ >> player) & 1u; }
  constexpr Coalition With(int player) const {
    return Coalition(bits_ | (std::uint64_t{1} << player));
  }
  constexpr Coalition Without(int player) const {
    return Coalition(bits_ & ~(std::uint64_t{1} << player));
  }
  int Size() const;
  std::vector<int> Members() const;

  // True when no bit at or beyond `num_players` is set.
  bool ValidFor(int num_players) const;

  friend constexpr bool operator==(Coalition, Coalition) = default;

 private:
  std::uint64_t bits_ = 0;
};

// m x m persuasion coefficients a_ij with |a_ij| <= 1 and a_ii = 1.
class AssociationMatrix {
 public:
  // Validates the invariants; throws Error(kInvariantViolation) naming the
  // offending entry.
  AssociationMatrix(int size, std::vector<double> row_major);

  static AssociationMatrix Identity(int size);
  static AssociationMatrix FromRows(
      const std::vector<std::vector<double>>& rows);

  int size() const { return size_; }
  double operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * size_ + col];
  }
  std::span<const double> Row(int row) const {
    return {entries_.data() + static_cast<std::size_t>(row) * size_,
            static_cast<std::size_t>(size_)};
  }
  const std::vector<double>& entries() const { return entries_; }
  bool IsIdentity() const;

  friend bool operator==(const AssociationMatrix&,
                         const AssociationMatrix&) = default;

 private:
  int size_;
  std::vector<double> entries_;
};

// Comparison used on the winning boundary.
enum class BoundaryRule {
  kAtLeast,       // sum >= quota wins
  kStrictlyAbove  // sum > quota wins
};

// Which players contribute to a member's persuasion load.
enum class PersuasionScope {
  kAllPlayers,    // sum over every player k of a_ik w_k
  kCoalitionOnly  // sum over members of the coalition only
};

class VotingGame {
 public:
  // `weights` is row-major m x k. Throws Error(kInvariantViolation) on
  // negative or non-finite weights, non-positive or non-finite quotas, and
  // Error(kDimensionMismatch) on inconsistent sizes.
  VotingGame(std::vector<std::string> player_ids, std::vector<double> weights,
             std::vector<double> quotas,
             std::optional<AssociationMatrix> association = std::nullopt,
             std::map<std::string, std::string> metadata = {});

  // Single-quota convenience constructor; players are labelled p1..pm.
  static VotingGame Scalar(const std::vector<double>& weights, double quota);

  int num_players() const { return static_cast<int>(player_ids_.size()); }
  int num_dimensions() const { return static_cast<int>(quotas_.size()); }

  const std::vector<std::string>& player_ids() const { return player_ids_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& quotas() const { return quotas_; }
  const std::optional<AssociationMatrix>& association() const {
    return association_;
  }
  const std::map<std::string, std::string>& metadata() const {
    return metadata_;
  }
  BoundaryRule boundary() const { return boundary_; }

  double weight(int player, int dim) const {
    return weights_[static_cast<std::size_t>(player) * quotas_.size() + dim];
  }
  std::span<const double> WeightVector(int player) const {
    return {weights_.data() + static_cast<std::size_t>(player) * quotas_.size(),
            quotas_.size()};
  }
  double quota(int dim) const { return quotas_[dim]; }
  double TotalWeight(int dim) const;

  // True when every weight and the quota in `dim` are integers, in which
  // case boundary comparisons are exact.
  bool IsExactDimension(int dim) const { return exact_dims_[dim] != 0; }

  // Winning test for one dimension under the game's boundary rule.
  bool Meets(double sum, int dim) const {
    return boundary_ == BoundaryRule::kAtLeast ? sum >= thresholds_[dim]
                                               : sum > thresholds_[dim];
  }

  // Copies carrying a different boundary rule / association.
  VotingGame WithBoundary(BoundaryRule rule) const;
  VotingGame WithAssociation(std::optional<AssociationMatrix> phi) const;
  VotingGame WithQuotas(std::vector<double> quotas) const;

  int PlayerIndex(const std::string& id) const;

  friend bool operator==(const VotingGame&, const VotingGame&) = default;

 private:
  std::vector<std::string> player_ids_;
  std::vector<double> weights_;
  std::vector<double> quotas_;
  std::optional<AssociationMatrix> association_;
  std::map<std::string, std::string> metadata_;
  BoundaryRule boundary_ = BoundaryRule::kAtLeast;
  std::vector<char> exact_dims_;
  // Quota shifted by the boundary tolerance, in the direction of the rule.
  std::vector<double> thresholds_;

  void ComputeThresholds();
};

// Load of player i in every dimension, sum_k a_ik w_kd, and its surplus
// over the player's own weight.
struct PersuasionLoad {
  int player = 0;
  std::vector<double> per_dim_load;
  std::vector<double> surplus;
};

// Summed member weight per dimension, accumulated in player index order.
std::vector<double> CoalitionWeight(const VotingGame& game, Coalition c);

bool IsWinning(const VotingGame& game, Coalition c);

// Throws Error(kInvalidArgument) when `player` is not a member of `c`.
bool IsCriticalClassical(const VotingGame& game, int player, Coalition c);

// Association criticality. Throws Error(kInvalidArgument) when `player` is
// not a member of `c`, Error(kDimensionMismatch) when phi does not match.
bool IsCriticalAssociation(
    const VotingGame& game, const AssociationMatrix& phi, int player,
    Coalition c, PersuasionScope scope = PersuasionScope::kAllPlayers);

PersuasionLoad ComputePersuasionLoad(const VotingGame& game,
                                     const AssociationMatrix& phi, int player);

// Throws Error(kDimensionMismatch) unless phi is num_players x num_players.
void CheckAssociationFits(const VotingGame& game, const AssociationMatrix& phi);

}  // namespace powerindex

#endif  // POWERINDEX_GAME_H_
