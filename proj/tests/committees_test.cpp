#include <gtest/gtest.h>

#include <random>

#include "apmap/committees.hpp"
#include "apmap/election_io.hpp"
#include "apmap/cultures.hpp"
#include "oracles.hpp"

using namespace apmap;

TEST(Av, TopScoresAndTies) {
  Election e(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(av_committees(e, 1), (std::vector<Committee>{{0}}));
  EXPECT_EQ(av_committees(e, 2), (std::vector<Committee>{{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_THROW(av_committees(e, 2, 2), CapExceeded);
  EXPECT_THROW(av_committees(e, 0), DataError);
  EXPECT_THROW(av_committees(e, 5), DataError);
}

TEST(PavScore, ExactRational) {
  Election e(3, {{0, 1}, {0}, {2}});
  // 1 + 1/2, 1, 0
  EXPECT_EQ(pav_score(e, {0, 1}), (PavScore{5, 2}));
  EXPECT_EQ(pav_score(e, {}), (PavScore{0, 1}));
  EXPECT_THROW(pav_score(e, {1, 0}), DataError);
  EXPECT_THROW(pav_score(e, {3}), DataError);
}

TEST(PavScore, AgreesWithFractionOracle) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 30; ++t) {
    const auto e = oracle::random_election(gen, 8, 10, 0.5);
    const Committee w{0, 2, 3, 5, 7};
    const auto s = pav_score(e, w);
    const auto o = oracle::pav_score(e, w);
    EXPECT_EQ(s.numerator, o.num);
    EXPECT_EQ(s.denominator, o.den);
  }
}

TEST(Pav, MatchesExhaustiveSearch) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 2 + gen() % 9;
    const std::size_t k = 1 + gen() % std::min<std::size_t>(4, m);
    const auto e = oracle::random_election(gen, m, 3 + gen() % 15, 0.2 + 0.1 * (t % 6));
    const auto r = pav_committee(e, k);
    const auto best = oracle::pav_optimum(e, k);
    EXPECT_TRUE(r.optimal);
    EXPECT_EQ(r.committee.size(), k);
    EXPECT_EQ(r.score.numerator, best.num) << to_text(e) << " k=" << k;
    EXPECT_EQ(r.score.denominator, best.den);
    EXPECT_EQ(pav_score(e, r.committee), r.score);
  }
}

TEST(Pav, PartyListIsProportional) {
  // 6 voters for {0,1,2,3}, 3 voters for {4,5,6,7}; k = 3 gives a 2:1 split
  std::vector<Ballot> votes(6, Ballot{0, 1, 2, 3});
  votes.insert(votes.end(), 3, Ballot{4, 5, 6, 7});
  const auto r = pav_committee(Election(8, votes), 3);
  std::size_t first = 0;
  for (Candidate c : r.committee) first += c < 4 ? 1 : 0;
  EXPECT_EQ(first, 2u);
}

TEST(Pav, AtLeastAsGoodAsGreedy) {
  const auto e = sample_resampling(30, 80, 0.3, 0.8, 4);
  const std::size_t k = 6;
  const auto r = pav_committee(e, k);
  std::vector<char> in(e.m(), 0);
  Committee greedy;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = 0;
    PavScore best_score{-1, 1};
    for (std::size_t c = 0; c < e.m(); ++c) {
      if (in[c]) continue;
      Committee w = greedy;
      w.push_back(static_cast<Candidate>(c));
      std::sort(w.begin(), w.end());
      const auto s = pav_score(e, w);
      if (s.value() > best_score.value()) {
        best_score = s;
        best = c;
      }
    }
    in[best] = 1;
    greedy.push_back(static_cast<Candidate>(best));
    std::sort(greedy.begin(), greedy.end());
  }
  EXPECT_GE(r.score.value() + 1e-12, pav_score(e, greedy).value());
}

TEST(Pav, TimeBudgetReportsIncumbent) {
  const auto e = sample_resampling(60, 300, 0.3, 1.0, 9);
  const auto r = pav_committee(e, 10, 0.0);
  EXPECT_EQ(r.committee.size(), 10u);
  EXPECT_EQ(pav_score(e, r.committee), r.score);
  if (!r.optimal) {
    EXPECT_GT(r.gap, 0.0);
  }
}

TEST(Cohesiveness, MatchesBruteForce) {
  std::mt19937_64 gen(29);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 2 + gen() % 9;
    const std::size_t n = 2 + gen() % 9;
    const std::size_t k = 1 + gen() % std::min<std::size_t>(4, m);
    const auto e = oracle::random_election(gen, m, n, 0.3 + 0.1 * (t % 5));
    const auto expected = oracle::cohesiveness_level(e, k);
    for (auto strategy : {LevelSearch::Ascending, LevelSearch::Binary}) {
      const auto r = cohesiveness_level(e, k, strategy);
      EXPECT_EQ(r.level, expected) << to_text(e) << " k=" << k;
      if (r.level > 0) {
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_TRUE(is_cohesive(e, k, r.level, *r.witness));
      }
    }
  }
}

TEST(Cohesiveness, Extremes) {
  const auto empty = make_extreme(8, 10, Extreme::Empty, 0, 0);
  EXPECT_EQ(cohesiveness_level(empty, 3).level, 0u);
  EXPECT_EQ(voters_in_1cohesive_fraction(empty, 3), 0.0);
  EXPECT_EQ(max_approval_score(empty), 0.0);
  const auto full = make_extreme(8, 10, Extreme::Full, 0, 0);
  EXPECT_EQ(cohesiveness_level(full, 3).level, 3u);
  EXPECT_EQ(voters_in_1cohesive_fraction(full, 3), 1.0);
  EXPECT_EQ(max_approval_score(full), 1.0);
}

TEST(Cohesiveness, WitnessChecks) {
  Election e(3, {{0, 1}, {0, 1}, {2}});
  EXPECT_TRUE(is_cohesive(e, 3, 2, {{0, 1}, {0, 1}}));
  EXPECT_FALSE(is_cohesive(e, 3, 2, {{0}, {0, 1}}));      // too few voters
  EXPECT_FALSE(is_cohesive(e, 3, 2, {{0, 2}, {0, 1}}));   // voter 2 disagrees
  EXPECT_FALSE(is_cohesive(e, 3, 3, {{0, 1, 2}, {0}}));   // not enough candidates
  const auto g = find_cohesive_group(e, 3, 2);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->voters.size(), 2u);
  EXPECT_FALSE(find_cohesive_group(e, 3, 3).has_value());
}

TEST(CohesiveFraction, OnlyCountsVotersBackingWellSupportedCandidates) {
  // n = 4, k = 2: a candidate needs 2 approvals
  Election e(3, {{0}, {0}, {1}, {2}});
  EXPECT_DOUBLE_EQ(voters_in_1cohesive_fraction(e, 2), 0.5);
}
