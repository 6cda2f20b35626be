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

// Monte Carlo estimation of (association) Banzhaf indices with confidence
// intervals and sample-size planning.
//
// Each player's index is estimated from n coalitions that contain the player
// and include every other player independently with probability 1/2. The
// estimate is the fraction of sampled coalitions in which the player is
// critical, an unbiased estimate of the absolute index.

#ifndef POWERINDEX_SAMPLING_H_
#define POWERINDEX_SAMPLING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powerindex/exact.h"
#include "powerindex/game.h"
#include "powerindex/swing_kernels.h"

namespace powerindex {

enum class IntervalMethod { kHoeffding, kStudent, kSelfBounding };

const char* IntervalMethodName(IntervalMethod method);
// Accepts "hoeffding", "student", "selfbounding"; throws otherwise.
IntervalMethod ParseIntervalMethod(const std::string& name);

struct SamplingOptions {
  PersuasionScope scope = PersuasionScope::kAllPlayers;
  Execution execution;
};

struct EstimateReport {
  IndexMode mode = IndexMode::kClassical;
  PersuasionScope scope = PersuasionScope::kAllPlayers;
  std::vector<std::string> player_ids;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> swing_counts;
  std::vector<double> estimates;
  // Unbiased variance of the 0/1 criticality indicators.
  std::vector<double> sample_variance;

  int num_players() const { return static_cast<int>(player_ids.size()); }
};

// Sampled coalition `sample` for `player`: deterministic in (seed, player,
// sample) only.
Coalition SampleCoalition(std::uint64_t seed, int num_players, int player,
                          std::uint64_t sample);

// Throws Error(kInvalidArgument) for samples == 0 and
// Error(kDimensionMismatch) when phi does not fit.
EstimateReport EstimateIndices(const VotingGame& game,
                               const std::optional<AssociationMatrix>& phi,
                               std::uint64_t samples, std::uint64_t seed,
                               const SamplingOptions& options = {});

// S^2 = (k - k^2/n) / (n - 1) for k successes in n Bernoulli draws; 0 when
// n < 2.
double BernoulliSampleVariance(std::uint64_t successes, std::uint64_t n);

struct ConfidenceInterval {
  IntervalMethod method = IntervalMethod::kHoeffding;
  double estimate = 0;
  double lower = 0;
  double upper = 0;
  // Before clipping to [0, 1].
  double halfwidth = 0;
  double delta = 0;
  std::optional<double> bound_b;
};

// Two-sided interval at confidence 1 - delta. kSelfBounding needs `bound_b`
// (see DefaultSelfBoundingB); kStudent needs at least two samples.
ConfidenceInterval ComputeConfidenceInterval(
    const EstimateReport& estimate, int player, double delta,
    IntervalMethod method, std::optional<double> bound_b = std::nullopt);

// Half-widths on their own.
double HoeffdingHalfwidth(std::uint64_t n, double delta);
double StudentHalfwidth(std::uint64_t n, double sample_variance, double delta);
double SelfBoundingHalfwidth(std::uint64_t n, double bound_b, double delta);

// Smallest n meeting accuracy epsilon at confidence 1 - delta.
// kStudent needs `sample_variance` and uses the large-sample normal
// quantile; kSelfBounding needs `bound_b`.
std::uint64_t RequiredSamples(double epsilon, double delta,
                              IntervalMethod method,
                              std::optional<double> sample_variance = {},
                              std::optional<double> bound_b = {});

// B substituted for 2*beta_i + epsilon: 2*min(1, best sound upper bound on
// beta_i) + epsilon, clamped to [epsilon, 2 + epsilon]. The only bound used
// is the ht bound, and only for classical single-quota games.
double DefaultSelfBoundingB(const VotingGame& game, IndexMode mode, int player,
                            double epsilon);

// t such that P(T > t) = alpha for Student's t with `dof` degrees of
// freedom, by bisection on the regularized incomplete beta function
// (absolute tolerance 1e-9).
double StudentUpperQuantile(double alpha, double dof);
double NormalUpperQuantile(double alpha);

}  // namespace powerindex

#endif  // POWERINDEX_SAMPLING_H_
