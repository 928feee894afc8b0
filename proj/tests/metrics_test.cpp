#include <gtest/gtest.h>

#include <random>

#include "apmap/cultures.hpp"
#include "apmap/election_io.hpp"
#include "apmap/metrics.hpp"
#include "oracles.hpp"

using namespace apmap;

TEST(Approvalwise, EmptyToFullIsM) {
  const auto empty = make_extreme(7, 4, Extreme::Empty, 0, 0);
  const auto full = make_extreme(7, 4, Extreme::Full, 0, 0);
  EXPECT_EQ(approvalwise_distance(empty, full), 7.0);
  EXPECT_EQ(approvalwise_distance(full, full), 0.0);
}

TEST(Approvalwise, IgnoresVoterCountButNotCandidateCount) {
  Election a(3, {{0}});
  Election b(3, {{0}, {0}, {1}});
  // (1,0,0) vs (2/3,1/3,0)
  EXPECT_NEAR(approvalwise_distance(a, b), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(approvalwise_distance(a, Election(4, {{0}})), DataError);
}

TEST(Analytic, ClosedForms) {
  const auto av = analytic_av({0.3, 0.5, 10});
  ASSERT_EQ(av.size(), 10u);
  EXPECT_DOUBLE_EQ(av[0], 0.65);
  EXPECT_DOUBLE_EQ(av[9], 0.15);
  EXPECT_THROW(analytic_av({0.33, 0.5, 10}), DataError);
  EXPECT_NEAR(analytic_distance({0.2, 0.5, 10}, {0.7, 0.5, 10}), 5.0, 1e-12);
  EXPECT_NEAR(analytic_distance({0.5, 0.2, 10}, {0.5, 0.6, 10}), 2.0, 1e-12);
}

TEST(IsomorphicHamming, SingletonExample) {
  // {c1},{c2} vs {d1},{d1}: best bijection still leaves two differing votes
  Election e(2, {{0}, {1}});
  Election f(2, {{0}, {0}});
  EXPECT_EQ(isomorphic_hamming(e, f), 2u);
}

TEST(IsomorphicHamming, MatchesBruteForce) {
  std::mt19937_64 gen(123);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 1 + gen() % 4;
    const std::size_t n = 1 + gen() % 4;
    const auto e = oracle::random_election(gen, m, n, 0.5);
    const auto f = oracle::random_election(gen, m, n, 0.3 + 0.4 * (t % 2));
    EXPECT_EQ(isomorphic_hamming(e, f), oracle::isomorphic_hamming(e, f)) << to_text(e) << to_text(f);
  }
}

TEST(IsomorphicHamming, ZeroOnRelabeledCopies) {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 20; ++t) {
    const auto e = oracle::random_election(gen, 6, 7, 0.4);
    std::vector<Candidate> sigma(6);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), gen);
    std::vector<Ballot> votes;
    for (const auto& b : e.votes()) {
      Ballot nb;
      for (Candidate c : b) nb.push_back(sigma[c]);
      votes.push_back(nb);
    }
    std::shuffle(votes.begin(), votes.end(), gen);
    EXPECT_EQ(isomorphic_hamming(e, Election(6, votes)), 0u);
  }
}

TEST(IsomorphicHamming, BoundedBelowByScoreProfile) {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 20; ++t) {
    const auto e = oracle::random_election(gen, 7, 8, 0.5);
    const auto f = oracle::random_election(gen, 7, 8, 0.3);
    const double lower = approvalwise_distance(e, f) * 8;
    EXPECT_GE(static_cast<double>(isomorphic_hamming(e, f)) + 1e-9, lower);
  }
}

TEST(IsomorphicHamming, CapAndSizeChecks) {
  const auto a = make_extreme(11, 2, Extreme::Empty, 0, 0);
  EXPECT_THROW(isomorphic_hamming(a, a), CapExceeded);
  EXPECT_EQ(isomorphic_hamming(a, a, 11), 0u);
  EXPECT_THROW(isomorphic_hamming(Election(3, {{0}}), Election(3, {{0}, {1}})), DataError);
}

TEST(DistanceMatrix, PairwiseAndCsvRoundTrip) {
  std::vector<Election> es{make_extreme(4, 3, Extreme::Empty, 0, 0), make_extreme(4, 3, Extreme::Full, 0, 0),
                           sample_resampling(4, 3, 0.5, 0.0, 1)};
  const auto dm = pairwise_distances(es, {"empty", "full", "id"}, Metric::Approvalwise);
  EXPECT_EQ(dm(0, 1), 4.0);
  EXPECT_EQ(dm(0, 2), 2.0);
  EXPECT_EQ(dm(2, 1), 2.0);
  dm.validate();
  EXPECT_EQ(distance_matrix_from_csv(to_csv(dm)), dm);
  EXPECT_EQ(distance_matrix_from_json(to_json(dm)), dm);
  const auto ham = pairwise_distances(es, {"empty", "full", "id"}, Metric::IsomorphicHamming);
  EXPECT_EQ(ham(0, 1), 12.0);
}

TEST(DistanceMatrix, ErrorsNameThePair) {
  std::vector<Election> es{Election(3, {{0}}), Election(4, {{0}})};
  try {
    pairwise_distances(es, {"a", "b"}, Metric::Approvalwise);
    FAIL();
  } catch (const DataError& err) {
    EXPECT_NE(std::string(err.what()).find("(a, b)"), std::string::npos);
  }
  EXPECT_THROW(pairwise_distances(es, {"a,b", "c"}, Metric::Approvalwise), DataError);
  EXPECT_THROW(distance_matrix_from_csv("label,a,b\na,0,1\nb,2,0\n"), DataError);
  EXPECT_THROW(distance_matrix_from_csv("label,a\na,x\n"), ParseError);
  EXPECT_THROW(metric_from_string("cosine"), DataError);
}
