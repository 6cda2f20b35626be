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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "powerindex/data.h"
#include "powerindex/error.h"
#include "test_util.h"

namespace powerindex {
namespace {

Coalition Of(std::initializer_list<int> members) {
  return Coalition::FromMembers(std::vector<int>(members));
}

const VotingGame& G321() {
  static const VotingGame game = VotingGame::Scalar({3, 2, 1}, 4);
  return game;
}

TEST(Coalition, MembersAndSize) {
  const Coalition c = Of({0, 2, 5});
  EXPECT_EQ(c.Size(), 3);
  EXPECT_EQ(c.Members(), (std::vector<int>{0, 2, 5}));
  EXPECT_TRUE(c.ValidFor(6));
  EXPECT_FALSE(c.ValidFor(5));
  EXPECT_EQ(c.Without(2).With(1), Of({0, 1, 5}));
}

TEST(IsWinning, Examples) {
  EXPECT_TRUE(IsWinning(G321(), Of({0, 2})));   // 3 + 1 = 4
  EXPECT_FALSE(IsWinning(G321(), Of({1, 2})));  // 2 + 1 = 3
  EXPECT_FALSE(IsWinning(G321(), Coalition()));
}

TEST(IsWinning, RejectsBitsBeyondPlayers) {
  EXPECT_THROW(IsWinning(G321(), Coalition(0b1000)), Error);
}

TEST(IsCriticalClassical, Examples) {
  EXPECT_TRUE(IsCriticalClassical(G321(), 0, Of({0, 2})));
  EXPECT_FALSE(IsCriticalClassical(G321(), 1, Of({0, 1, 2})));  // 6 - 2 = 4
  EXPECT_TRUE(IsCriticalClassical(VotingGame::Scalar({5}, 3), 0, Of({0})));
}

TEST(IsCriticalClassical, NonMemberIsAnError) {
  try {
    IsCriticalClassical(G321(), 1, Of({0, 2}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(IsCriticalAssociation, Examples) {
  const VotingGame game = VotingGame::Scalar({2, 1}, 2);
  const auto phi = AssociationMatrix::FromRows({{1, 1}, {0.5, 1}});
  // 3 - (0.5 * 2 + 1) = 1 < 2
  EXPECT_TRUE(IsCriticalAssociation(game, phi, 1, Of({0, 1})));
  // 3 - 1 = 2 is not below 2
  EXPECT_FALSE(IsCriticalAssociation(game, AssociationMatrix::Identity(2), 1,
                                     Of({0, 1})));
  EXPECT_THROW(IsCriticalAssociation(game, phi, 1, Of({0})), Error);
  EXPECT_THROW(IsCriticalAssociation(game, AssociationMatrix::Identity(3), 1,
                                     Of({0, 1})),
               Error);
}

TEST(IsCriticalAssociation, CoalitionOnlyScopeIgnoresOutsiders) {
  const VotingGame game = VotingGame::Scalar({2, 1, 4}, 2);
  const auto phi =
      AssociationMatrix::FromRows({{1, 0, 1}, {0, 1, 0}, {0, 0, 1}});
  // All players: 3 - (2 + 4) < 2. Coalition only: 3 - 2 = 1 < 2 as well.
  EXPECT_TRUE(IsCriticalAssociation(game, phi, 0, Of({0, 1})));
  EXPECT_TRUE(IsCriticalAssociation(game, phi, 0, Of({0, 1}),
                                    PersuasionScope::kCoalitionOnly));
  // {0, 2}: weight 6. All players: 6 - 6 = 0 < 2 -> critical.
  // Coalition only: same members, same load.
  EXPECT_TRUE(IsCriticalAssociation(game, phi, 0, Of({0, 2})));
  // {0, 1, 2}: weight 7. All players: 7 - 6 = 1 < 2 -> critical.
  EXPECT_TRUE(IsCriticalAssociation(game, phi, 0, Of({0, 1, 2})));
  // Player 1 leaning on player 2 only matters when 2 is in the coalition.
  const auto lean =
      AssociationMatrix::FromRows({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}});
  // {0, 1}: weight 3. All players: 3 - 5 < 2 -> critical; coalition only:
  // 3 - 1 = 2 -> not critical.
  EXPECT_TRUE(IsCriticalAssociation(game, lean, 1, Of({0, 1})));
  EXPECT_FALSE(IsCriticalAssociation(game, lean, 1, Of({0, 1}),
                                     PersuasionScope::kCoalitionOnly));
}

TEST(PersuasionLoad, Examples) {
  const VotingGame game = VotingGame::Scalar({2, 1}, 2);
  const PersuasionLoad id =
      ComputePersuasionLoad(game, AssociationMatrix::Identity(2), 0);
  EXPECT_EQ(id.per_dim_load, std::vector<double>{2});
  EXPECT_EQ(id.surplus, std::vector<double>{0});

  const PersuasionLoad pos = ComputePersuasionLoad(
      game, AssociationMatrix::FromRows({{1, 1}, {0.5, 1}}), 0);
  EXPECT_EQ(pos.per_dim_load, std::vector<double>{3});
  EXPECT_EQ(pos.surplus, std::vector<double>{1});

  const PersuasionLoad neg = ComputePersuasionLoad(
      game, AssociationMatrix::FromRows({{1, -1}, {0.5, 1}}), 0);
  EXPECT_EQ(neg.per_dim_load, std::vector<double>{1});
  EXPECT_EQ(neg.surplus, std::vector<double>{-1});

  EXPECT_THROW(ComputePersuasionLoad(game, AssociationMatrix::Identity(3), 0),
               Error);
}

TEST(PersuasionLoad, IdentityGivesOwnWeightInEveryDimension) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const VotingGame game = testing::RandomVectorGame(rng, 1, 8, 3);
    const auto phi = AssociationMatrix::Identity(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
      const PersuasionLoad load = ComputePersuasionLoad(game, phi, i);
      for (int d = 0; d < 3; ++d) {
        EXPECT_EQ(load.per_dim_load[d], game.weight(i, d));
        EXPECT_EQ(load.surplus[d], 0.0);
      }
    }
  }
}

TEST(AssociationMatrix, Invariants) {
  EXPECT_NO_THROW(AssociationMatrix::FromRows({{1, -1}, {0.25, 1}}));
  EXPECT_THROW(AssociationMatrix::FromRows({{0.9, 0}, {0, 1}}), Error);
  EXPECT_THROW(AssociationMatrix::FromRows({{1, 1.5}, {0, 1}}), Error);
  EXPECT_THROW(AssociationMatrix::FromRows({{1, 0}, {0}}), Error);
  EXPECT_TRUE(AssociationMatrix::Identity(4).IsIdentity());
}

TEST(VotingGame, Invariants) {
  EXPECT_THROW(VotingGame::Scalar({}, 1), Error);
  EXPECT_THROW(VotingGame::Scalar({1, -2}, 1), Error);
  EXPECT_THROW(VotingGame::Scalar({1, 2}, 0), Error);
  EXPECT_THROW(
      VotingGame::Scalar({1, 2}, std::numeric_limits<double>::infinity()),
      Error);
  EXPECT_THROW(VotingGame({"a", "b"}, {1, 2, 3}, {1}), Error);
  EXPECT_THROW(
      VotingGame({"a", "b"}, {1, 2}, {1}, AssociationMatrix::Identity(3)),
      Error);
  // Unwinnable games are allowed.
  EXPECT_NO_THROW(VotingGame::Scalar({1, 2}, 100));
}

TEST(VotingGame, BoundaryToleranceOnlyForNonIntegerDimensions) {
  const VotingGame integral = VotingGame::Scalar({1, 2}, 3);
  EXPECT_TRUE(integral.IsExactDimension(0));
  EXPECT_TRUE(integral.Meets(3, 0));
  EXPECT_FALSE(integral.Meets(std::nextafter(3.0, 0.0), 0));

  const VotingGame real = VotingGame::Scalar({0.1, 0.2}, 0.3);
  EXPECT_FALSE(real.IsExactDimension(0));
  // 0.1 + 0.2 = 0.30000000000000004 and 0.3 differ by one ulp.
  EXPECT_TRUE(real.Meets(0.1 + 0.2, 0));
  EXPECT_TRUE(real.Meets(0.3 * (1 - 1e-13), 0));
  EXPECT_FALSE(real.Meets(0.3 * (1 - 1e-11), 0));
}

TEST(VotingGame, StrictBoundaryRule) {
  const VotingGame strict = G321().WithBoundary(BoundaryRule::kStrictlyAbove);
  EXPECT_FALSE(IsWinning(strict, Of({0, 2})));  // 4 is not above 4
  EXPECT_TRUE(IsWinning(strict, Of({0, 1})));
  // {p1, p2}: 5 - 2 = 3 is not above 4, so p2 is critical.
  EXPECT_TRUE(IsCriticalClassical(strict, 1, Of({0, 1})));
}

TEST(VotingGame, MultiDimensionalWinningIsComponentwise) {
  const VotingGame game({"a", "b", "c"}, {5, 1, 1, 5, 1, 1}, {6, 6});
  EXPECT_TRUE(IsWinning(game, Of({0, 1})));   // (6, 6)
  EXPECT_FALSE(IsWinning(game, Of({0, 2})));  // (6, 2)
  // Removing c from {a,b,c} = (7,7): (6,6) still wins; not critical.
  EXPECT_FALSE(IsCriticalClassical(game, 2, Of({0, 1, 2})));
  // Removing a from {a,b,c}: (2, 6) fails the first dimension.
  EXPECT_TRUE(IsCriticalClassical(game, 0, Of({0, 1, 2})));
}

// Property checks over random games.

class GameProperties : public ::testing::Test {
 protected:
  SplitMix64 rng_{20240917};
};

TEST_F(GameProperties, IdentityAssociationReducesToClassical) {
  for (int trial = 0; trial < 60; ++trial) {
    const VotingGame game = trial % 2
                                ? testing::RandomIntegerGame(rng_, 1, 8)
                                : testing::RandomVectorGame(rng_, 1, 7, 2);
    const auto phi = AssociationMatrix::Identity(game.num_players());
    const int m = game.num_players();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      for (int i = 0; i < m; ++i) {
        if (!Coalition(mask).Contains(i)) continue;
        ASSERT_EQ(IsCriticalAssociation(game, phi, i, Coalition(mask)),
                  IsCriticalClassical(game, i, Coalition(mask)));
      }
    }
  }
}

TEST_F(GameProperties, WinningIsMonotoneInQuota) {
  for (int trial = 0; trial < 60; ++trial) {
    const VotingGame game = testing::RandomVectorGame(rng_, 1, 7, 2);
    std::vector<double> lower = game.quotas();
    for (double& q : lower) q = std::max(0.5, q * UnitInterval(rng_()));
    const VotingGame easier = game.WithQuotas(lower);
    for (std::uint64_t mask = 0;
         mask < (std::uint64_t{1} << game.num_players()); ++mask) {
      if (IsWinning(game, Coalition(mask))) {
        ASSERT_TRUE(IsWinning(easier, Coalition(mask)));
      }
    }
  }
}

TEST_F(GameProperties, CriticalImpliesWinningAndDummiesNeverSwing) {
  for (int trial = 0; trial < 40; ++trial) {
    VotingGame base = testing::RandomIntegerGame(rng_, 2, 8);
    std::vector<double> w;
    for (int i = 0; i < base.num_players(); ++i) w.push_back(base.weight(i, 0));
    w.push_back(0);  // dummy
    const VotingGame game = VotingGame::Scalar(w, base.quota(0));
    const int dummy = game.num_players() - 1;
    const auto phi = RandomAssociation(game.num_players(), trial);
    for (std::uint64_t mask = 0;
         mask < (std::uint64_t{1} << game.num_players()); ++mask) {
      const Coalition c(mask);
      for (int i = 0; i < game.num_players(); ++i) {
        if (!c.Contains(i)) continue;
        if (IsCriticalClassical(game, i, c) ||
            IsCriticalAssociation(game, phi, i, c)) {
          ASSERT_TRUE(IsWinning(game, c));
        }
      }
      if (c.Contains(dummy)) ASSERT_FALSE(IsCriticalClassical(game, dummy, c));
    }
  }
}

}  // namespace
}  // namespace powerindex
