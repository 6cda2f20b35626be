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

// Test-only oracles and random instance generators. The oracles evaluate
// every (player, coalition) pair through the game-core predicates and share
// no code with the enumeration kernels.

#ifndef POWERINDEX_TESTS_TEST_UTIL_H_
#define POWERINDEX_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "powerindex/data.h"
#include "powerindex/game.h"
#include "powerindex/random.h"

namespace powerindex::testing {

inline std::vector<std::uint64_t> NaiveSwingCounts(
    const VotingGame& game, const std::optional<AssociationMatrix>& phi,
    PersuasionScope scope = PersuasionScope::kAllPlayers) {
  const int m = game.num_players();
  std::vector<std::uint64_t> counts(m, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const Coalition c(mask);
    for (int i = 0; i < m; ++i) {
      if (!c.Contains(i)) continue;
      const bool critical = phi ? IsCriticalAssociation(game, *phi, i, c, scope)
                                : IsCriticalClassical(game, i, c);
      counts[i] += critical;
    }
  }
  return counts;
}

// Integer weights in [min_weight, max_weight], quota = fraction of total.
inline VotingGame RandomIntegerGame(SplitMix64& rng, int min_players,
                                    int max_players, int min_weight = 1,
                                    int max_weight = 20,
                                    double quota_fraction = 0.5) {
  const int m = static_cast<int>(UniformInt(rng, min_players, max_players));
  std::vector<double> w(m);
  double total = 0;
  for (double& x : w) {
    x = static_cast<double>(UniformInt(rng, min_weight, max_weight));
    total += x;
  }
  return VotingGame::Scalar(w, quota_fraction * total);
}

// Multi-dimensional integer game with per-dimension quota fractions drawn
// from [0.3, 0.8].
inline VotingGame RandomVectorGame(SplitMix64& rng, int min_players,
                                   int max_players, int dims) {
  const int m = static_cast<int>(UniformInt(rng, min_players, max_players));
  std::vector<std::string> ids;
  std::vector<double> w;
  std::vector<double> totals(dims, 0);
  for (int i = 0; i < m; ++i) {
    ids.push_back("p" + std::to_string(i + 1));
    for (int d = 0; d < dims; ++d) {
      const double x = static_cast<double>(UniformInt(rng, 0, 15));
      w.push_back(x);
      totals[d] += x;
    }
  }
  std::vector<double> q;
  for (int d = 0; d < dims; ++d) {
    const double frac = 0.3 + 0.5 * UnitInterval(rng());
    q.push_back(std::max(1.0, std::floor(frac * totals[d])));
  }
  return VotingGame(ids, w, q);
}

// Every standalone numeric token of a rendered report, in order. Json, csv
// and table renderings of one document yield the same sequence.
inline std::vector<double> NumericTokens(const std::string& text) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty() && token != "inf" && token != "-inf" && token != "nan") {
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() + token.size()) out.push_back(v);
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == ',' || c == ':' || c == '"' || c == '[' ||
        c == ']' || c == '{' || c == '}') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

}  // namespace powerindex::testing

#endif  // POWERINDEX_TESTS_TEST_UTIL_H_
