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

#include "powerindex/sampling.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "powerindex/bounds.h"
#include "powerindex/error.h"
#include "powerindex/random.h"

namespace powerindex {

const char* IntervalMethodName(IntervalMethod method) {
  switch (method) {
    case IntervalMethod::kHoeffding:
      return "hoeffding";
    case IntervalMethod::kStudent:
      return "student";
    case IntervalMethod::kSelfBounding:
      return "selfbounding";
  }
  return "unknown";
}

IntervalMethod ParseIntervalMethod(const std::string& name) {
  if (name == "hoeffding") return IntervalMethod::kHoeffding;
  if (name == "student") return IntervalMethod::kStudent;
  if (name == "selfbounding") return IntervalMethod::kSelfBounding;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown interval method '" + name +
                  "' (expected hoeffding, student or selfbounding)");
}

Coalition SampleCoalition(std::uint64_t seed, int num_players, int player,
                          std::uint64_t sample) {
  const std::uint64_t word = CounterRng(seed)(player, sample);
  const int others = num_players - 1;
  const std::uint64_t keep =
      others >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << others) - 1;
  return Coalition(ExpandWithPlayer(word & keep, player));
}

namespace {

// Criticality of one member in one coalition, summing member weights in
// player order like the game-core predicates.
class SampleEvaluator {
 public:
  SampleEvaluator(const VotingGame& game,
                  const std::optional<AssociationMatrix>& phi,
                  PersuasionScope scope)
      : game_(game), phi_(phi), scope_(scope) {
    const int m = game.num_players();
    const int k = game.num_dimensions();
    loads_.assign(static_cast<std::size_t>(m) * k, 0.0);
    for (int i = 0; i < m; ++i) {
      for (int d = 0; d < k; ++d) {
        double load = 0;
        if (phi_) {
          for (int j = 0; j < m; ++j) load += (*phi_)(i, j) * game.weight(j, d);
        } else {
          load = game.weight(i, d);
        }
        loads_[static_cast<std::size_t>(i) * k + d] = load;
      }
    }
  }

  bool IsCritical(int player, Coalition c, std::vector<double>& scratch) const {
    const int m = game_.num_players();
    const int k = game_.num_dimensions();
    scratch.assign(k, 0.0);
    for (int j = 0; j < m; ++j) {
      if (!c.Contains(j)) continue;
      for (int d = 0; d < k; ++d) scratch[d] += game_.weight(j, d);
    }
    bool critical = false;
    for (int d = 0; d < k; ++d) {
      if (!game_.Meets(scratch[d], d)) return false;
      double load;
      if (phi_ && scope_ == PersuasionScope::kCoalitionOnly) {
        load = 0;
        for (int j = 0; j < m; ++j) {
          if (c.Contains(j)) load += (*phi_)(player, j) * game_.weight(j, d);
        }
      } else {
        load = loads_[static_cast<std::size_t>(player) * k + d];
      }
      if (!game_.Meets(scratch[d] - load, d)) critical = true;
    }
    return critical;
  }

 private:
  const VotingGame& game_;
  const std::optional<AssociationMatrix>& phi_;
  PersuasionScope scope_;
  std::vector<double> loads_;
};

constexpr std::uint64_t kBlockSize = 4096;

}  // namespace

double BernoulliSampleVariance(std::uint64_t successes, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double k = static_cast<double>(successes);
  const double nn = static_cast<double>(n);
  return std::max(0.0, (k - k * k / nn) / (nn - 1));
}

EstimateReport EstimateIndices(const VotingGame& game,
                               const std::optional<AssociationMatrix>& phi,
                               std::uint64_t samples, std::uint64_t seed,
                               const SamplingOptions& options) {
  if (samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample count must be at least 1");
  }
  if (phi) CheckAssociationFits(game, *phi);
  const int m = game.num_players();
  const SampleEvaluator eval(game, phi, options.scope);

  // Work items are (player, block of samples); per-block integer counts are
  // summed in block order, so the result is independent of scheduling.
  const std::uint64_t blocks_per_player =
      (samples + kBlockSize - 1) / kBlockSize;
  const std::int64_t items = static_cast<std::int64_t>(blocks_per_player) * m;
  std::vector<std::uint64_t> block_counts(static_cast<std::size_t>(items), 0);

  auto run_item = [&](std::int64_t item, std::vector<double>& scratch) {
    const int player = static_cast<int>(item / blocks_per_player);
    const std::uint64_t block =
        static_cast<std::uint64_t>(item) % blocks_per_player;
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(samples, begin + kBlockSize);
    std::uint64_t count = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      count +=
          eval.IsCritical(player, SampleCoalition(seed, m, player, s), scratch);
    }
    block_counts[static_cast<std::size_t>(item)] = count;
  };

  if (options.execution.parallel) {
    const int threads = options.execution.num_threads > 0
                            ? options.execution.num_threads
                            : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
      std::vector<double> scratch;
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t item = 0; item < items; ++item) run_item(item, scratch);
    }
  } else {
    std::vector<double> scratch;
    for (std::int64_t item = 0; item < items; ++item) run_item(item, scratch);
  }

  EstimateReport report;
  report.mode = phi ? IndexMode::kAssociation : IndexMode::kClassical;
  report.scope = options.scope;
  report.player_ids = game.player_ids();
  report.samples = samples;
  report.seed = seed;
  for (int i = 0; i < m; ++i) {
    std::uint64_t count = 0;
    for (std::uint64_t b = 0; b < blocks_per_player; ++b) {
      count +=
          block_counts[static_cast<std::size_t>(i) * blocks_per_player + b];
    }
    report.swing_counts.push_back(count);
    report.estimates.push_back(static_cast<double>(count) /
                               static_cast<double>(samples));
    report.sample_variance.push_back(BernoulliSampleVariance(count, samples));
  }
  return report;
}

namespace {

void CheckDelta(double delta) {
  if (!(delta > 0 && delta < 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "confidence parameter delta must lie in (0, 1)");
  }
}

void CheckBound(double b) {
  if (!(b > 0) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidArgument,
                "self-bounding B must be finite and positive");
  }
}

}  // namespace

double HoeffdingHalfwidth(std::uint64_t n, double delta) {
  CheckDelta(delta);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  return std::sqrt(std::log(2 / delta) / (2 * static_cast<double>(n)));
}

double StudentHalfwidth(std::uint64_t n, double sample_variance, double delta) {
  CheckDelta(delta);
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "student interval needs at least 2 samples");
  }
  if (sample_variance == 0) return 0;
  const double t = StudentUpperQuantile(delta / 2, static_cast<double>(n - 1));
  return t * std::sqrt(sample_variance) / std::sqrt(static_cast<double>(n));
}

double SelfBoundingHalfwidth(std::uint64_t n, double bound_b, double delta) {
  CheckDelta(delta);
  CheckBound(bound_b);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  return std::sqrt(bound_b * std::log(2 / delta) / static_cast<double>(n));
}

ConfidenceInterval ComputeConfidenceInterval(const EstimateReport& estimate,
                                             int player, double delta,
                                             IntervalMethod method,
                                             std::optional<double> bound_b) {
  if (player < 0 || player >= estimate.num_players()) {
    throw Error(ErrorCode::kInvalidArgument,
                "player index out of range: " + std::to_string(player));
  }
  ConfidenceInterval ci;
  ci.method = method;
  ci.delta = delta;
  ci.estimate = estimate.estimates[player];
  switch (method) {
    case IntervalMethod::kHoeffding:
      ci.halfwidth = HoeffdingHalfwidth(estimate.samples, delta);
      break;
    case IntervalMethod::kStudent:
      ci.halfwidth = StudentHalfwidth(estimate.samples,
                                      estimate.sample_variance[player], delta);
      break;
    case IntervalMethod::kSelfBounding:
      if (!bound_b) {
        throw Error(ErrorCode::kInvalidArgument,
                    "self-bounding interval requires a B value");
      }
      ci.bound_b = bound_b;
      ci.halfwidth = SelfBoundingHalfwidth(estimate.samples, *bound_b, delta);
      break;
  }
  ci.lower = std::clamp(ci.estimate - ci.halfwidth, 0.0, 1.0);
  ci.upper = std::clamp(ci.estimate + ci.halfwidth, 0.0, 1.0);
  return ci;
}

std::uint64_t RequiredSamples(double epsilon, double delta,
                              IntervalMethod method,
                              std::optional<double> sample_variance,
                              std::optional<double> bound_b) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "accuracy epsilon must lie in (0, 1)");
  }
  CheckDelta(delta);
  const double log_term = std::log(2 / delta);
  double n = 0;
  switch (method) {
    case IntervalMethod::kHoeffding:
      n = log_term / (2 * epsilon * epsilon);
      break;
    case IntervalMethod::kStudent: {
      if (!sample_variance) {
        throw Error(ErrorCode::kInvalidArgument,
                    "student sample size requires a sample variance");
      }
      if (*sample_variance < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sample variance must be non-negative");
      }
      const double z = NormalUpperQuantile(delta / 2);
      n = *sample_variance * z * z / (epsilon * epsilon);
      break;
    }
    case IntervalMethod::kSelfBounding:
      if (!bound_b) {
        throw Error(ErrorCode::kInvalidArgument,
                    "self-bounding sample size requires a B value");
      }
      CheckBound(*bound_b);
      n = *bound_b * log_term / (epsilon * epsilon);
      break;
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n)));
}

double DefaultSelfBoundingB(const VotingGame& game, IndexMode mode, int player,
                            double epsilon) {
  double best = 1.0;
  if (mode == IndexMode::kClassical && game.num_dimensions() == 1) {
    best = std::min(best, HtBound(game, player).bound);
  }
  return std::clamp(2 * best + epsilon, epsilon, 2 + epsilon);
}

}  // namespace powerindex
