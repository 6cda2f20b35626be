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

#include "powerindex/game.h"

#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include "powerindex/error.h"

namespace powerindex {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorCode::kCapacityExceeded:
      return "capacity exceeded";
    case ErrorCode::kInvariantViolation:
      return "invariant violation";
    case ErrorCode::kUnsupported:
      return "unsupported";
    case ErrorCode::kParse:
      return "parse error";
    case ErrorCode::kIo:
      return "i/o error";
  }
  return "unknown";
}

namespace {

bool IsInteger(double v) {
  return std::isfinite(v) && std::nearbyint(v) == v && std::abs(v) < 0x1p52;
}

}  // namespace

// Coalition

Coalition Coalition::FromMembers(std::span<const int> members) {
  std::uint64_t bits = 0;
  for (int p : members) {
    if (p < 0 || p >= kMaxPlayers) {
      throw Error(ErrorCode::kInvalidArgument,
                  "coalition member index out of range: " + std::to_string(p));
    }
    bits |= std::uint64_t{1} << p;
  }
  return Coalition(bits);
}

int Coalition::Size() const { return std::popcount(bits_); }

std::vector<int> Coalition::Members() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b));
  }
  return out;
}

bool Coalition::ValidFor(int num_players) const {
  if (num_players >= 64) return true;
  return (bits_ >> num_players) == 0;
}

// AssociationMatrix

AssociationMatrix::AssociationMatrix(int size, std::vector<double> row_major)
    : size_(size), entries_(std::move(row_major)) {
  if (size_ < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "association matrix must be at least 1x1");
  }
  if (entries_.size() != static_cast<std::size_t>(size_) * size_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "association matrix expects " + std::to_string(size_ * size_) +
                    " entries, got " + std::to_string(entries_.size()));
  }
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      const double a = (*this)(i, j);
      std::ostringstream where;
      where << "association[" << i << "][" << j << "] = " << a;
      if (!std::isfinite(a) || std::abs(a) > 1.0) {
        throw Error(ErrorCode::kInvariantViolation,
                    where.str() + ": entries must satisfy |a_ij| <= 1");
      }
      if (i == j && a != 1.0) {
        throw Error(ErrorCode::kInvariantViolation,
                    where.str() + ": diagonal entries must equal 1");
      }
    }
  }
}

AssociationMatrix AssociationMatrix::Identity(int size) {
  std::vector<double> e(static_cast<std::size_t>(size) * size, 0.0);
  for (int i = 0; i < size; ++i) e[static_cast<std::size_t>(i) * size + i] = 1;
  return AssociationMatrix(size, std::move(e));
}

AssociationMatrix AssociationMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  const int m = static_cast<int>(rows.size());
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "association row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(m));
    }
    e.insert(e.end(), rows[i].begin(), rows[i].end());
  }
  return AssociationMatrix(m, std::move(e));
}

bool AssociationMatrix::IsIdentity() const {
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      if ((*this)(i, j) != (i == j ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

// VotingGame

VotingGame::VotingGame(std::vector<std::string> player_ids,
                       std::vector<double> weights, std::vector<double> quotas,
                       std::optional<AssociationMatrix> association,
                       std::map<std::string, std::string> metadata)
    : player_ids_(std::move(player_ids)),
      weights_(std::move(weights)),
      quotas_(std::move(quotas)),
      association_(std::move(association)),
      metadata_(std::move(metadata)) {
  const std::size_t m = player_ids_.size();
  const std::size_t k = quotas_.size();
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "a game needs at least 1 player");
  }
  if (m > static_cast<std::size_t>(kMaxPlayers)) {
    throw Error(ErrorCode::kCapacityExceeded,
                "at most " + std::to_string(kMaxPlayers) +
                    " players are supported, got " + std::to_string(m));
  }
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "a game needs at least 1 quota");
  }
  if (weights_.size() != m * k) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(m * k) + " weights for " +
                    std::to_string(m) + " players x " + std::to_string(k) +
                    " dimensions, got " + std::to_string(weights_.size()));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t d = 0; d < k; ++d) {
      const double w = weights_[i * k + d];
      if (!std::isfinite(w) || w < 0) {
        std::ostringstream msg;
        msg << "player '" << player_ids_[i] << "' weight[" << d << "] = " << w
            << ": weights must be finite and non-negative";
        throw Error(ErrorCode::kInvariantViolation, msg.str());
      }
    }
  }
  for (std::size_t d = 0; d < k; ++d) {
    if (!std::isfinite(quotas_[d]) || quotas_[d] <= 0) {
      std::ostringstream msg;
      msg << "quota[" << d << "] = " << quotas_[d]
          << ": quotas must be finite and positive";
      throw Error(ErrorCode::kInvariantViolation, msg.str());
    }
  }
  if (association_ && association_->size() != static_cast<int>(m)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "association matrix is " +
                    std::to_string(association_->size()) + "x" +
                    std::to_string(association_->size()) + " but game has " +
                    std::to_string(m) + " players");
  }
  exact_dims_.assign(k, 1);
  for (std::size_t d = 0; d < k; ++d) {
    bool exact = IsInteger(quotas_[d]);
    for (std::size_t i = 0; i < m && exact; ++i) {
      exact = IsInteger(weights_[i * k + d]);
    }
    exact_dims_[d] = exact ? 1 : 0;
  }
  ComputeThresholds();
}

VotingGame VotingGame::Scalar(const std::vector<double>& weights,
                              double quota) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    ids.push_back("p" + std::to_string(i + 1));
  }
  return VotingGame(std::move(ids), weights, {quota});
}

double VotingGame::TotalWeight(int dim) const {
  double total = 0;
  for (int i = 0; i < num_players(); ++i) total += weight(i, dim);
  return total;
}

void VotingGame::ComputeThresholds() {
  thresholds_.resize(quotas_.size());
  for (std::size_t d = 0; d < quotas_.size(); ++d) {
    const double q = quotas_[d];
    const double tol = exact_dims_[d] ? 0.0 : kBoundaryRelTolerance * q;
    thresholds_[d] = boundary_ == BoundaryRule::kAtLeast ? q - tol : q + tol;
  }
}

VotingGame VotingGame::WithBoundary(BoundaryRule rule) const {
  VotingGame copy = *this;
  copy.boundary_ = rule;
  copy.ComputeThresholds();
  return copy;
}

VotingGame VotingGame::WithAssociation(
    std::optional<AssociationMatrix> phi) const {
  VotingGame copy(player_ids_, weights_, quotas_, std::move(phi), metadata_);
  copy.boundary_ = boundary_;
  copy.ComputeThresholds();
  return copy;
}

VotingGame VotingGame::WithQuotas(std::vector<double> quotas) const {
  VotingGame copy(player_ids_, weights_, std::move(quotas), association_,
                  metadata_);
  copy.boundary_ = boundary_;
  copy.ComputeThresholds();
  return copy;
}

int VotingGame::PlayerIndex(const std::string& id) const {
  for (int i = 0; i < num_players(); ++i) {
    if (player_ids_[i] == id) return i;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown player id '" + id + "'");
}

// Predicates

void CheckAssociationFits(const VotingGame& game,
                          const AssociationMatrix& phi) {
  if (phi.size() != game.num_players()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "association matrix is " + std::to_string(phi.size()) + "x" +
                    std::to_string(phi.size()) + " but game has " +
                    std::to_string(game.num_players()) + " players");
  }
}

namespace {

void CheckCoalition(const VotingGame& game, Coalition c) {
  if (!c.ValidFor(game.num_players())) {
    throw Error(ErrorCode::kInvalidArgument,
                "coalition has members beyond player count " +
                    std::to_string(game.num_players()));
  }
}

void CheckMember(const VotingGame& game, int player, Coalition c) {
  CheckCoalition(game, c);
  if (player < 0 || player >= game.num_players()) {
    throw Error(ErrorCode::kInvalidArgument,
                "player index out of range: " + std::to_string(player));
  }
  if (!c.Contains(player)) {
    throw Error(ErrorCode::kInvalidArgument,
                "player " + std::to_string(player) +
                    " is not a member of the coalition");
  }
}

bool WinsWith(const VotingGame& game, std::span<const double> sums) {
  for (int d = 0; d < game.num_dimensions(); ++d) {
    if (!game.Meets(sums[d], d)) return false;
  }
  return true;
}

}  // namespace

std::vector<double> CoalitionWeight(const VotingGame& game, Coalition c) {
  std::vector<double> sums(game.num_dimensions(), 0.0);
  for (int i = 0; i < game.num_players(); ++i) {
    if (!c.Contains(i)) continue;
    for (int d = 0; d < game.num_dimensions(); ++d)
      sums[d] += game.weight(i, d);
  }
  return sums;
}

bool IsWinning(const VotingGame& game, Coalition c) {
  CheckCoalition(game, c);
  return WinsWith(game, CoalitionWeight(game, c));
}

bool IsCriticalClassical(const VotingGame& game, int player, Coalition c) {
  CheckMember(game, player, c);
  std::vector<double> sums = CoalitionWeight(game, c);
  if (!WinsWith(game, sums)) return false;
  for (int d = 0; d < game.num_dimensions(); ++d) {
    if (!game.Meets(sums[d] - game.weight(player, d), d)) return true;
  }
  return false;
}

bool IsCriticalAssociation(const VotingGame& game, const AssociationMatrix& phi,
                           int player, Coalition c, PersuasionScope scope) {
  CheckAssociationFits(game, phi);
  CheckMember(game, player, c);
  std::vector<double> sums = CoalitionWeight(game, c);
  if (!WinsWith(game, sums)) return false;
  for (int d = 0; d < game.num_dimensions(); ++d) {
    double load = 0;
    for (int k = 0; k < game.num_players(); ++k) {
      if (scope == PersuasionScope::kCoalitionOnly && !c.Contains(k)) continue;
      load += phi(player, k) * game.weight(k, d);
    }
    if (!game.Meets(sums[d] - load, d)) return true;
  }
  return false;
}

PersuasionLoad ComputePersuasionLoad(const VotingGame& game,
                                     const AssociationMatrix& phi, int player) {
  CheckAssociationFits(game, phi);
  if (player < 0 || player >= game.num_players()) {
    throw Error(ErrorCode::kInvalidArgument,
                "player index out of range: " + std::to_string(player));
  }
  PersuasionLoad out;
  out.player = player;
  for (int d = 0; d < game.num_dimensions(); ++d) {
    double load = 0;
    for (int k = 0; k < game.num_players(); ++k) {
      load += phi(player, k) * game.weight(k, d);
    }
    out.per_dim_load.push_back(load);
    out.surplus.push_back(load - game.weight(player, d));
  }
  return out;
}

}  // namespace powerindex
