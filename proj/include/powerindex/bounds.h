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

// Diagnostic upper bounds on single-quota Banzhaf indices, the all-critical
// coalition weight check, and an empirical scanner for the max-weight
// conjecture on normalized indices. Several of the closed-form bounds are
// not valid in general; they are computed from their closed forms and compared against
// exact indices where available, with violations flagged rather than fixed.

#ifndef POWERINDEX_BOUNDS_H_
#define POWERINDEX_BOUNDS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "powerindex/exact.h"
#include "powerindex/game.h"
#include "powerindex/swing_kernels.h"

namespace powerindex {

// Upper bound (2^n - 2^t - 2^(n-h)) / 2^n on a player's absolute index.
//   t: largest count such that the player plus the t-1 smallest other
//      weights stays below quota (none when the player alone meets quota;
//      its term is then 0).
//   h: smallest count such that the h largest other weights exceed quota
//      (none when no such count exists; its term is then 0).
struct HtBoundResult {
  int player = 0;
  std::optional<int> t;
  std::optional<int> h;
  double bound = 0;
};

// Throws Error(kUnsupported) for multi-quota games.
HtBoundResult HtBound(const VotingGame& game, int player);

// Coalition-size window. m_low is the largest l with l * max(W) < q (n when
// every weight is zero); m_high is the smallest M with M * min(W) - max(W)
// > q, absent (infinite) when min(W) = 0.
struct SizeWindow {
  std::int64_t m_low = 0;
  std::optional<std::int64_t> m_high;
};

SizeWindow ComputeSizeWindow(const VotingGame& game);

struct GlobalBounds {
  SizeWindow window;
  // (sum_{i=m_low+1}^{min(M,n)} C(n,i) - 2^(n-1)) / 2^n
  double bound1 = 0;
  // sum_{i=m_low+1}^{min(M,n)} i C(n,i) / (n 2^n) - 1/2
  double bound2 = 0;
  // Set when exact indices were supplied: max_i beta_i exceeds the bound.
  std::optional<double> max_index;
  std::optional<bool> bound1_violated;
  std::optional<bool> bound2_violated;
};

GlobalBounds ComputeGlobalBounds(const VotingGame& game,
                                 const IndexReport* exact = nullptr);

enum class AllCriticalCheck { kHolds, kViolated, kNotApplicable };

const char* AllCriticalCheckName(AllCriticalCheck check);

// For a winning coalition whose members are all classically critical and
// which has at least two members: kHolds iff w(C) < |C| q / (|C| - 1).
// Throws Error(kInvalidArgument) for losing coalitions.
AllCriticalCheck AllCriticalWeightCheck(const VotingGame& game, Coalition c);

struct BoundsReport {
  std::vector<std::string> player_ids;
  std::vector<HtBoundResult> ht;
  GlobalBounds global;
  std::optional<IndexReport> exact;
  // Per-player: absolute index exceeds its ht bound (only with exact).
  std::vector<bool> ht_violated;
  std::map<std::string, std::string> notes;
};

// Exact indices are included when the game is small enough to enumerate.
BoundsReport ComputeBounds(const VotingGame& game);

struct ConjectureParams {
  int min_players = 3;
  int max_players = 12;
  int min_weight = 1;
  int max_weight = 20;
  double quota_fraction = 0.5;
};

struct ConjectureCounterexample {
  std::uint64_t trial = 0;
  std::vector<double> weights;
  double quota = 0;
  int player = 0;
  double normalized_index = 0;
  double bound = 0;  // 2 * max weight / total weight
};

struct ConjectureReport {
  std::uint64_t games_scanned = 0;
  std::vector<ConjectureCounterexample> counterexamples;
  // min over games and players of 2w/N - normalized index.
  double min_slack = 0;
  std::uint64_t min_slack_trial = 0;
};

// Slack and counterexamples for a single game.
ConjectureReport CheckConjecture(const VotingGame& game);

// Random single-quota games with integer weights; trial t uses a seed
// derived from (seed, t). Throws Error(kInvalidArgument) for zero trials or
// a player range outside [1, kExactMaxPlayers].
ConjectureReport ScanConjecture(const ConjectureParams& params,
                                std::uint64_t trials, std::uint64_t seed,
                                const Execution& execution = {});

// The random game used by trial `trial` of a scan.
VotingGame ConjectureTrialGame(const ConjectureParams& params,
                               std::uint64_t seed, std::uint64_t trial);

}  // namespace powerindex

#endif  // POWERINDEX_BOUNDS_H_
