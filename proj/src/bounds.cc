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

#include "powerindex/bounds.h"

#include <omp.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

#include "powerindex/error.h"
#include "powerindex/random.h"

namespace powerindex {

namespace {

using boost::multiprecision::cpp_int;

// Exact enumeration is attached to bounds reports up to this many players.
constexpr int kBoundsExactLimit = 24;

void RequireSingleQuota(const VotingGame& game, const char* what) {
  if (game.num_dimensions() != 1) {
    throw Error(ErrorCode::kUnsupported,
                std::string(what) + " is defined for single-quota games only");
  }
}

std::vector<double> ScalarWeights(const VotingGame& game) {
  std::vector<double> w(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) w[i] = game.weight(i, 0);
  return w;
}

std::int64_t SaturatingInt(double v) {
  constexpr double kMax = 0x1p62;
  if (!(v < kMax)) return static_cast<std::int64_t>(kMax);
  return static_cast<std::int64_t>(v);
}

}  // namespace

HtBoundResult HtBound(const VotingGame& game, int player) {
  RequireSingleQuota(game, "ht bound");
  const int n = game.num_players();
  if (player < 0 || player >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "player index out of range: " + std::to_string(player));
  }
  const double q = game.quota(0);
  std::vector<double> others;
  for (int j = 0; j < n; ++j) {
    if (j != player) others.push_back(game.weight(j, 0));
  }
  std::sort(others.begin(), others.end());

  HtBoundResult out;
  out.player = player;
  double sum = game.weight(player, 0);
  if (!game.Meets(sum, 0)) {
    int t = 1;
    for (double w : others) {
      if (game.Meets(sum + w, 0)) break;
      sum += w;
      ++t;
    }
    out.t = t;
  }
  sum = 0;
  for (std::size_t h = 0; h < others.size(); ++h) {
    sum += others[others.size() - 1 - h];
    if (sum > q) {
      out.h = static_cast<int>(h) + 1;
      break;
    }
  }
  out.bound = 1.0;
  if (out.t) out.bound -= std::ldexp(1.0, *out.t - n);
  if (out.h) out.bound -= std::ldexp(1.0, -*out.h);
  return out;
}

SizeWindow ComputeSizeWindow(const VotingGame& game) {
  RequireSingleQuota(game, "size window");
  const std::vector<double> w = ScalarWeights(game);
  const double q = game.quota(0);
  const double max_w = *std::max_element(w.begin(), w.end());
  const double min_w = *std::min_element(w.begin(), w.end());

  SizeWindow out;
  if (max_w == 0) {
    out.m_low = game.num_players();
  } else {
    std::int64_t l =
        std::max<std::int64_t>(0, SaturatingInt(std::ceil(q / max_w)) - 1);
    while (static_cast<double>(l + 1) * max_w < q) ++l;
    while (l > 0 && static_cast<double>(l) * max_w >= q) --l;
    out.m_low = l;
  }
  if (min_w > 0) {
    std::int64_t big_m = SaturatingInt(std::floor((q + max_w) / min_w)) + 1;
    while (big_m > 0 && static_cast<double>(big_m - 1) * min_w - max_w > q) {
      --big_m;
    }
    while (static_cast<double>(big_m) * min_w - max_w <= q) ++big_m;
    out.m_high = big_m;
  }
  return out;
}

GlobalBounds ComputeGlobalBounds(const VotingGame& game,
                                 const IndexReport* exact) {
  GlobalBounds out;
  out.window = ComputeSizeWindow(game);
  const std::int64_t n = game.num_players();
  const std::int64_t upper =
      out.window.m_high ? std::min(*out.window.m_high, n) : n;

  // C(n, i) by the multiplicative recurrence C(n,i) = C(n,i-1)(n-i+1)/i.
  cpp_int binom = 1;
  cpp_int sum = 0;
  cpp_int weighted_sum = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    binom = binom * (n - i + 1) / i;
    if (i > out.window.m_low && i <= upper) {
      sum += binom;
      weighted_sum += binom * i;
    }
  }
  const cpp_int half = cpp_int(1) << (n - 1);
  const cpp_int full = cpp_int(1) << n;
  const cpp_int num1 = sum - half;
  const cpp_int num2 = weighted_sum - half * n;
  out.bound1 = num1.convert_to<double>() / full.convert_to<double>();
  out.bound2 = num2.convert_to<double>() / (full * n).convert_to<double>();

  if (exact) {
    const double max_index =
        *std::max_element(exact->absolute.begin(), exact->absolute.end());
    out.max_index = max_index;
    out.bound1_violated = max_index > out.bound1;
    out.bound2_violated = max_index > out.bound2;
  }
  return out;
}

const char* AllCriticalCheckName(AllCriticalCheck check) {
  switch (check) {
    case AllCriticalCheck::kHolds:
      return "holds";
    case AllCriticalCheck::kViolated:
      return "violated";
    case AllCriticalCheck::kNotApplicable:
      return "not-applicable";
  }
  return "unknown";
}

AllCriticalCheck AllCriticalWeightCheck(const VotingGame& game, Coalition c) {
  RequireSingleQuota(game, "all-critical weight check");
  if (!IsWinning(game, c)) {
    throw Error(ErrorCode::kInvalidArgument,
                "all-critical weight check needs a winning coalition");
  }
  const std::vector<int> members = c.Members();
  if (members.size() < 2) return AllCriticalCheck::kNotApplicable;
  for (int p : members) {
    if (!IsCriticalClassical(game, p, c))
      return AllCriticalCheck::kNotApplicable;
  }
  const double size = static_cast<double>(members.size());
  const double weight = CoalitionWeight(game, c)[0];
  return weight * (size - 1) < size * game.quota(0)
             ? AllCriticalCheck::kHolds
             : AllCriticalCheck::kViolated;
}

BoundsReport ComputeBounds(const VotingGame& game) {
  RequireSingleQuota(game, "bounds report");
  BoundsReport report;
  report.player_ids = game.player_ids();
  for (int i = 0; i < game.num_players(); ++i) {
    report.ht.push_back(HtBound(game, i));
  }
  if (game.num_players() <= kBoundsExactLimit) {
    report.exact = ExactIndices(game, std::nullopt);
    for (int i = 0; i < game.num_players(); ++i) {
      report.ht_violated.push_back(report.exact->absolute[i] >
                                   report.ht[i].bound);
    }
  }
  report.global =
      ComputeGlobalBounds(game, report.exact ? &*report.exact : nullptr);
  report.notes["m_low"] =
      "largest l with l*max(W) < q: coalitions of at most l players cannot "
      "win";
  report.notes["m_high"] = "smallest M with M*min(W) - max(W) > q";
  report.notes["t"] =
      "largest t with player + (t-1) smallest others below quota; none when "
      "the player alone meets quota";
  report.notes["h"] =
      "smallest h with the h largest other weights summing above quota";
  return report;
}

ConjectureReport CheckConjecture(const VotingGame& game) {
  RequireSingleQuota(game, "conjecture check");
  const IndexReport exact =
      ExactIndices(game, std::nullopt, {.execution = {.parallel = false}});
  double max_w = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    max_w = std::max(max_w, game.weight(i, 0));
  }
  const double bound = 2 * max_w / game.TotalWeight(0);

  ConjectureReport out;
  out.games_scanned = 1;
  out.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.num_players(); ++i) {
    const double slack = bound - exact.normalized[i];
    out.min_slack = std::min(out.min_slack, slack);
    if (slack < 0) {
      ConjectureCounterexample cx;
      cx.weights = ScalarWeights(game);
      cx.quota = game.quota(0);
      cx.player = i;
      cx.normalized_index = exact.normalized[i];
      cx.bound = bound;
      out.counterexamples.push_back(std::move(cx));
    }
  }
  return out;
}

VotingGame ConjectureTrialGame(const ConjectureParams& params,
                               std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 rng(CounterRng(seed).Derive(trial));
  const int m =
      static_cast<int>(UniformInt(rng, params.min_players, params.max_players));
  std::vector<double> weights(m);
  double total = 0;
  for (double& w : weights) {
    w = static_cast<double>(
        UniformInt(rng, params.min_weight, params.max_weight));
    total += w;
  }
  return VotingGame::Scalar(weights, params.quota_fraction * total);
}

ConjectureReport ScanConjecture(const ConjectureParams& params,
                                std::uint64_t trials, std::uint64_t seed,
                                const Execution& execution) {
  if (trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  }
  if (params.min_players < 1 || params.max_players > kExactMaxPlayers ||
      params.min_players > params.max_players) {
    throw Error(ErrorCode::kInvalidArgument,
                "player range must lie within [1, " +
                    std::to_string(kExactMaxPlayers) + "]");
  }
  if (params.min_weight < 1 || params.min_weight > params.max_weight) {
    throw Error(ErrorCode::kInvalidArgument,
                "weight range must be positive and non-empty");
  }
  if (!(params.quota_fraction > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "quota fraction must be positive");
  }

  std::vector<ConjectureReport> per_trial(trials);
  const std::int64_t count = static_cast<std::int64_t>(trials);
  const int threads =
      execution.num_threads > 0 ? execution.num_threads : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) \
    schedule(dynamic, 4) if (execution.parallel)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    per_trial[trial] =
        CheckConjecture(ConjectureTrialGame(params, seed, trial));
  }

  ConjectureReport out;
  out.min_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < trials; ++t) {
    ConjectureReport& r = per_trial[t];
    out.games_scanned += r.games_scanned;
    if (r.min_slack < out.min_slack) {
      out.min_slack = r.min_slack;
      out.min_slack_trial = t;
    }
    for (auto& cx : r.counterexamples) {
      cx.trial = t;
      out.counterexamples.push_back(std::move(cx));
    }
  }
  return out;
}

}  // namespace powerindex
