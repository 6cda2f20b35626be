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

// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion, plus
// indented detail lines, and exits non-zero if any criterion fails.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "powerindex/bounds.h"
#include "powerindex/data.h"
#include "powerindex/error.h"
#include "powerindex/exact.h"
#include "powerindex/random.h"
#include "powerindex/sampling.h"
#include "test_util.h"

namespace powerindex {
namespace {

using boost::multiprecision::cpp_int;

constexpr Execution kSerial{.parallel = false, .num_threads = 1};

void Detail(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void Detail(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  std::printf("      ");
  std::vprintf(fmt, args);
  std::printf("\n");
  va_end(args);
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// The fixed 12-player game used by the Monte Carlo criteria.
VotingGame TwelvePlayerGame() {
  return VotingGame::Scalar({29, 27, 13, 12, 12, 10, 10, 7, 7, 7, 4, 3}, 105);
}

bool EuReproduction() {
  const auto start = std::chrono::steady_clock::now();
  const IndexReport r =
      ExactIndices(EuGame(), std::nullopt, {.execution = kSerial});
  const double elapsed = Seconds(start);
  const auto countries = EuCountries();
  double max_diff = 0;
  for (int i = 0; i < 18; ++i) {
    max_diff = std::max(
        max_diff, std::abs(r.normalized[i] - countries[i].reference_index));
  }
  auto value = [&](const char* code) {
    return r.normalized[EuGame().PlayerIndex(code)];
  };
  Detail(
      "vote quota 215 (74%% of 291 in whole votes), boundary >=: max |diff| "
      "%.2e, "
      "serial %.3f s",
      max_diff, elapsed);
  Detail("DEU %.5f FRA %.5f GBR %.5f ITA %.5f POL %.5f ESP %.5f DNK %.5f",
         value("DEU"), value("FRA"), value("GBR"), value("ITA"), value("POL"),
         value("ESP"), value("DNK"));
  // The fractional quota 215.34 does not reproduce the column under either
  // boundary convention; report by how much.
  for (BoundaryRule rule :
       {BoundaryRule::kAtLeast, BoundaryRule::kStrictlyAbove}) {
    const VotingGame g = EuGame(EuQuotaRule::kExactFraction).WithBoundary(rule);
    const IndexReport f = ExactIndices(g, std::nullopt, {.execution = kSerial});
    double worst = 0;
    int worst_i = 0;
    for (int i = 0; i < 18; ++i) {
      const double d = std::abs(f.normalized[i] - countries[i].reference_index);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    Detail(
        "discrepancy: vote quota 215.34, boundary %s: max |diff| %.5f (%s %.5f "
        "vs "
        "%.5f)",
        rule == BoundaryRule::kAtLeast ? ">=" : ">", worst,
        countries[worst_i].code, f.normalized[worst_i],
        countries[worst_i].reference_index);
  }
  return max_diff <= 2e-4 && elapsed < 5.0 &&
         std::abs(value("DEU") - 0.09560) <= 2e-4 &&
         std::abs(value("POL") - 0.08853) <= 2e-4 &&
         std::abs(value("DNK") - 0.02629) <= 2e-4;
}

// Corpus shared by criteria 2 and 3.
struct CorpusGame {
  VotingGame game;
  AssociationMatrix phi;
};

std::vector<CorpusGame> OracleCorpus() {
  SplitMix64 rng(20180501);
  std::vector<CorpusGame> out;
  for (int t = 0; t < 200; ++t) {
    VotingGame g = testing::RandomIntegerGame(rng, 1, 10, 1, 20, 0.5);
    AssociationMatrix phi = RandomAssociation(g.num_players(), 1000 + t);
    out.push_back({std::move(g), std::move(phi)});
  }
  return out;
}

bool OracleEquivalence(const std::vector<CorpusGame>& corpus) {
  int mismatches = 0;
  std::uint64_t swings = 0;
  for (const CorpusGame& c : corpus) {
    for (PersuasionScope scope :
         {PersuasionScope::kAllPlayers, PersuasionScope::kCoalitionOnly}) {
      const IndexReport r = ExactIndices(c.game, c.phi, {.scope = scope});
      mismatches +=
          r.swing_counts != testing::NaiveSwingCounts(c.game, c.phi, scope);
      swings += r.TotalSwings();
    }
    mismatches += ExactIndices(c.game, std::nullopt).swing_counts !=
                  testing::NaiveSwingCounts(c.game, std::nullopt);
  }
  Detail(
      "%zu games x (association all/coalition scope, classical): %d "
      "mismatches, "
      "%llu association swings",
      corpus.size(), mismatches, static_cast<unsigned long long>(swings));
  return mismatches == 0;
}

bool IdentityReduction(const std::vector<CorpusGame>& corpus) {
  int mismatches = 0;
  for (const CorpusGame& c : corpus) {
    const IndexReport classical = ExactIndices(c.game, std::nullopt);
    const IndexReport identity =
        ExactIndices(c.game, AssociationMatrix::Identity(c.game.num_players()));
    mismatches += classical.swing_counts != identity.swing_counts ||
                  classical.absolute != identity.absolute ||
                  classical.normalized != identity.normalized;
  }
  Detail("%zu games: %d differ", corpus.size(), mismatches);
  return mismatches == 0;
}

bool WindowIdentity() {
  SplitMix64 rng(4);
  int players = 0, identity_fail = 0, sign_fail = 0, gains = 0, losses = 0;
  // Cases against the reverse direction (beta_phi <= beta whenever d >= 0).
  int reverse_contradicted = 0;
  for (int t = 0; t < 100; ++t) {
    const VotingGame g = testing::RandomIntegerGame(rng, 1, 10);
    const AssociationMatrix phi = RandomAssociation(g.num_players(), 7000 + t);
    const IndexReport classical = ExactIndices(g, std::nullopt);
    const IndexReport assoc = ExactIndices(g, phi);
    for (int i = 0; i < g.num_players(); ++i) {
      const DeltaReport d = AssociationDelta(g, phi, i);
      const double diff = assoc.absolute[i] - classical.absolute[i];
      identity_fail += d.delta != diff;
      const int sign_d = (d.surplus > 0) - (d.surplus < 0);
      const int sign_delta = (d.delta > 0) - (d.delta < 0);
      // A positive surplus can leave the index unchanged when no coalition
      // weight falls in the window; the sign may only agree or be zero.
      sign_fail += sign_delta != 0 && sign_delta != sign_d;
      sign_fail += sign_d == 0 && sign_delta != 0;
      reverse_contradicted +=
          (d.surplus >= 0 && d.delta > 0) || (d.surplus <= 0 && d.delta < 0);
      gains += d.delta > 0;
      losses += d.delta < 0;
      ++players;
    }
  }
  Detail(
      "%d players: %d identity failures, %d sign failures (%d gains, %d "
      "losses)",
      players, identity_fail, sign_fail, gains, losses);
  Detail(
      "discrepancy: the reverse direction (index falls when d_i >= 0) is "
      "contradicted by %d players",
      reverse_contradicted);
  return identity_fail == 0 && sign_fail == 0;
}

bool MonteCarloGuarantee() {
  const auto start = std::chrono::steady_clock::now();
  const VotingGame g = TwelvePlayerGame();
  const IndexReport exact = ExactIndices(g, std::nullopt);
  const std::uint64_t n =
      RequiredSamples(0.05, 0.05, IntervalMethod::kHoeffding);
  std::vector<int> covered(12, 0);
  for (int t = 0; t < 200; ++t) {
    const EstimateReport est = EstimateIndices(g, std::nullopt, n, 50000 + t);
    for (int i = 0; i < 12; ++i) {
      covered[i] += std::abs(est.estimates[i] - exact.absolute[i]) <= 0.05;
    }
  }
  const int worst = *std::min_element(covered.begin(), covered.end());
  const double elapsed = Seconds(start);
  Detail(
      "n = %llu, 200 trials: fewest covered trials over the 12 players %d "
      "(need >= 180), %.2f s",
      static_cast<unsigned long long>(n), worst, elapsed);
  return n == 738 && worst >= 180 && elapsed < 30.0;
}

bool Unbiasedness() {
  const VotingGame g = TwelvePlayerGame();
  const IndexReport exact = ExactIndices(g, std::nullopt);
  std::vector<double> mean(12, 0.0);
  for (int t = 0; t < 500; ++t) {
    const EstimateReport est = EstimateIndices(g, std::nullopt, 200, 90000 + t);
    for (int i = 0; i < 12; ++i) mean[i] += est.estimates[i] / 500;
  }
  double worst = 0;
  for (int i = 0; i < 12; ++i)
    worst = std::max(worst, std::abs(mean[i] - exact.absolute[i]));
  Detail("500 trials of n = 200: max |mean - exact| %.5f (need <= 0.01)",
         worst);
  return worst <= 0.01;
}

bool SampleSizes() {
  const std::uint64_t h =
      RequiredSamples(0.01, 0.01, IntervalMethod::kHoeffding);
  const std::uint64_t s = RequiredSamples(
      0.01, 0.01, IntervalMethod::kSelfBounding, std::nullopt, 0.25);
  Detail(
      "hoeffding %llu (need 26492), selfbounding B = 0.25: %llu (need 13246)",
      static_cast<unsigned long long>(h), static_cast<unsigned long long>(s));
  return h == 26492 && s == 13246;
}

bool AllCriticalProperty() {
  SplitMix64 rng(8);
  std::uint64_t applicable = 0, violations = 0;
  for (int t = 0; t < 500; ++t) {
    const VotingGame g = testing::RandomIntegerGame(rng, 1, 12);
    const std::uint64_t limit = std::uint64_t{1} << g.num_players();
    for (std::uint64_t bits = 1; bits < limit; ++bits) {
      const Coalition c(bits);
      if (!IsWinning(g, c)) continue;
      const AllCriticalCheck r = AllCriticalWeightCheck(g, c);
      applicable += r != AllCriticalCheck::kNotApplicable;
      violations += r == AllCriticalCheck::kViolated;
    }
  }
  Detail(
      "500 games: %llu all-critical coalitions with |C| >= 2, %llu violations",
      static_cast<unsigned long long>(applicable),
      static_cast<unsigned long long>(violations));
  return violations == 0 && applicable > 0;
}

bool HtBoundChecks() {
  const VotingGame small = VotingGame::Scalar({3, 2, 1}, 4);
  const IndexReport exact = ExactIndices(small, std::nullopt);
  const double b1 = HtBound(small, 0).bound;
  const double b3 = HtBound(small, 2).bound;
  Detail("[3,2,1] q=4: p1 bound %.5f exact %.5f; p3 bound %.5f exact %.5f", b1,
         exact.absolute[0], b3, exact.absolute[2]);
  const bool tight = b1 == 0.75 && exact.absolute[0] == 0.75 && b3 == 0.25 &&
                     exact.absolute[2] == 0.25;
  SplitMix64 rng(9);
  int players = 0, exceed = 0;
  for (int t = 0; t < 200; ++t) {
    const VotingGame g = testing::RandomIntegerGame(rng, 1, 12);
    const IndexReport r = ExactIndices(g, std::nullopt);
    for (int i = 0; i < g.num_players(); ++i) {
      exceed += r.absolute[i] > HtBound(g, i).bound;
      ++players;
    }
  }
  Detail("200 games, %d players: %d indices above their bound", players,
         exceed);
  return tight && exceed == 0;
}

bool GlobalBoundChecks() {
  SplitMix64 rng(10);
  int games = 0, mismatches = 0;
  for (int n = 1; n <= 20; ++n) {
    std::vector<cpp_int> row{1};
    for (int r = 1; r <= n; ++r) {
      std::vector<cpp_int> next(r + 1, 1);
      for (int k = 1; k < r; ++k) next[k] = row[k - 1] + row[k];
      row = std::move(next);
    }
    for (int t = 0; t < 25; ++t) {
      std::vector<double> w(n);
      double total = 0;
      for (double& x : w)
        total += x = static_cast<double>(UniformInt(rng, 0, 12));
      const double q = static_cast<double>(
          UniformInt(rng, 1, static_cast<std::int64_t>(total) + 2));
      const GlobalBounds g = ComputeGlobalBounds(VotingGame::Scalar(w, q));
      const std::int64_t hi =
          g.window.m_high ? std::min<std::int64_t>(*g.window.m_high, n) : n;
      cpp_int s1 = 0, s2 = 0;
      for (std::int64_t i = g.window.m_low + 1; i <= hi; ++i) {
        s1 += row[i];
        s2 += i * row[i];
      }
      const cpp_int half = cpp_int(1) << (n - 1);
      const double full = std::ldexp(1.0, n);
      const double b1 = (s1 - half).convert_to<double>() / full;
      const double b2 = (s2 - n * half).convert_to<double>() / (n * full);
      mismatches += g.bound1 != b1 || g.bound2 != b2;
      ++games;
    }
  }
  Detail("%d games with n <= 20: %d differ from the big-integer binomial sums",
         games, mismatches);

  const VotingGame a = VotingGame::Scalar({3, 2, 1}, 4);
  const IndexReport ea = ExactIndices(a, std::nullopt);
  const GlobalBounds ga = ComputeGlobalBounds(a, &ea);
  const VotingGame b = VotingGame::Scalar({1}, 0.5);
  const IndexReport eb = ExactIndices(b, std::nullopt);
  const GlobalBounds gb = ComputeGlobalBounds(b, &eb);
  Detail(
      "[3,2,1] q=4: bound1 %.5f flagged %s, bound2 %.5f flagged %s; [1] q=0.5: "
      "bound1 %.5f flagged %s",
      ga.bound1, *ga.bound1_violated ? "yes" : "no", ga.bound2,
      *ga.bound2_violated ? "yes" : "no", gb.bound1,
      *gb.bound1_violated ? "yes" : "no");
  return mismatches == 0 && ga.bound1 == 0 && *ga.bound1_violated &&
         ga.bound2 == -0.125 && *ga.bound2_violated && gb.bound1 == 0 &&
         *gb.bound1_violated;
}

bool MigrationProperties() {
  MigrationTable hand;
  hand.labels = {"A", "B", "C"};
  hand.flows = {0, 10, 0, 4, 0, 5, 2, 5, 0};
  const AssociationMatrix h = BuildMigrationAssociation(hand);
  const bool hand_ok = h(1, 0) == 1.0 && h(2, 0) == -1.0 / 3.0 &&
                       h(0, 1) == -1.0 && h(0, 2) == 1.0 / 3.0 &&
                       h(2, 1) == 0.0;
  Detail("hand example: phi21 %.17g, phi31 %.17g", h(1, 0), h(2, 0));

  SplitMix64 rng(11);
  int tables = 0, failures = 0;
  for (int t = 0; t < 200; ++t) {
    const int m = static_cast<int>(UniformInt(rng, 2, 18));
    MigrationTable table;
    for (int i = 0; i < m; ++i) table.labels.push_back("c" + std::to_string(i));
    table.flows.resize(static_cast<std::size_t>(m) * m);
    for (double& f : table.flows)
      f = static_cast<double>(UniformInt(rng, 0, 100000));
    table.flows[1] += 1;  // at least one asymmetric pair
    const AssociationMatrix phi = BuildMigrationAssociation(table);
    double best = 0;
    int bi = 0, bj = 0;
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      ok &= phi(i, i) == 1.0;
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        ok &= phi(i, j) == -phi(j, i) && std::abs(phi(i, j)) <= 1.0;
        const double gap = std::abs(table.flow(i, j) - table.flow(j, i));
        if (gap > best) {
          best = gap;
          bi = i;
          bj = j;
        }
      }
    }
    ok &= std::abs(phi(bi, bj)) == 1.0;
    for (double scale : {0.5, 4.0, 1000.0}) {
      MigrationTable scaled = table;
      for (double& f : scaled.flows) f *= scale;
      ok &= BuildMigrationAssociation(scaled) == phi;
    }
    failures += !ok;
    ++tables;
  }
  Detail(
      "%d random tables: %d fail antisymmetry / unit diagonal / |phi| <= 1 / "
      "|phi| = 1 at the maximizing pair / scaling invariance",
      tables, failures);
  return hand_ok && failures == 0;
}

bool ConjectureScan() {
  const ConjectureParams params;  // m in [3, 12], weights 1..20, q = half total
  const auto start = std::chrono::steady_clock::now();
  const ConjectureReport a = ScanConjecture(params, 1000, 2018, kSerial);
  const double elapsed = Seconds(start);
  const ConjectureReport b = ScanConjecture(params, 1000, 2018);
  const bool deterministic =
      a.games_scanned == b.games_scanned && a.min_slack == b.min_slack &&
      a.min_slack_trial == b.min_slack_trial &&
      a.counterexamples.size() == b.counterexamples.size();
  Detail(
      "1000 games: %zu counterexamples, min slack %.5f (trial %llu), %.2f s, "
      "serial and parallel runs %s",
      a.counterexamples.size(), a.min_slack,
      static_cast<unsigned long long>(a.min_slack_trial), elapsed,
      deterministic ? "identical" : "DIFFER");
  for (const auto& cx : a.counterexamples) {
    std::string w;
    for (double x : cx.weights)
      w += std::to_string(static_cast<long long>(x)) + " ";
    Detail(
        "counterexample trial %llu: weights [%s] q=%g player %d normalized "
        "%.5f > "
        "2w/N %.5f",
        static_cast<unsigned long long>(cx.trial), w.c_str(), cx.quota,
        cx.player + 1, cx.normalized_index, cx.bound);
  }
  const double s1 = CheckConjecture(VotingGame::Scalar({3, 2, 1}, 4)).min_slack;
  const double s2 = CheckConjecture(VotingGame::Scalar({1}, 1)).min_slack;
  Detail("hand instances: [3,2,1] q=4 slack %.5f, single player slack %.5f", s1,
         s2);
  return deterministic && a.games_scanned == 1000 &&
         std::abs(s1 - 0.4) < 1e-12 && s2 == 1.0;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool()> check;
};

}  // namespace
}  // namespace powerindex

int main() {
  using namespace powerindex;
  const std::vector<CorpusGame> corpus = OracleCorpus();
  const std::vector<Criterion> criteria = {
      {1, "EU WTA column reproduction", EuReproduction},
      {2, "exact engine equals naive oracle",
       [&] { return OracleEquivalence(corpus); }},
      {3, "identity association reduces to classical",
       [&] { return IdentityReduction(corpus); }},
      {4, "window identity and sign", WindowIdentity},
      {5, "Monte Carlo coverage guarantee", MonteCarloGuarantee},
      {6, "estimator unbiasedness", Unbiasedness},
      {7, "sample-size formulas", SampleSizes},
      {8, "all-critical coalition weight property", AllCriticalProperty},
      {9, "ht bound tightness and soundness", HtBoundChecks},
      {10, "global bounds against big-integer oracle", GlobalBoundChecks},
      {11, "migration association properties", MigrationProperties},
      {12, "conjecture scan", ConjectureScan},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    bool ok = false;
    std::string error;
    try {
      ok = c.check();
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::printf("%s %2d %s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                error.empty() ? "" : ": ", error.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
