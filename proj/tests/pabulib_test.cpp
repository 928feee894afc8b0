#include <gtest/gtest.h>

#include <random>

#include "apmap/election_io.hpp"
#include "apmap/pabulib.hpp"

using namespace apmap;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(APMAP_FIXTURES) + "/" + name); }

// Synthetic instance large enough for the default subsample size.
PabulibInstance synthetic(std::size_t projects, std::size_t voters, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::string text = "META\nkey;value\nvote_type;approval\nPROJECTS\nproject_id;cost\n";
  for (std::size_t p = 0; p < projects; ++p) text += "p" + std::to_string(p) + ";" + std::to_string(100 + p) + "\n";
  text += "VOTES\nvoter_id;vote\n";
  for (std::size_t v = 0; v < voters; ++v) {
    text += "v" + std::to_string(v) + ";";
    bool first = true;
    for (std::size_t p = 0; p < projects; ++p) {
      if (gen() % 7 == 0) {
        text += (first ? "" : ",") + std::string("p") + std::to_string(p);
        first = false;
      }
    }
    text += "\n";
  }
  return parse_pabulib(text);
}

}  // namespace

TEST(Pabulib, ParsesMinimalFixture) {
  const auto inst = parse_pabulib(fixture("tiny.pb"));
  ASSERT_EQ(inst.projects.size(), 2u);
  EXPECT_EQ(inst.projects[1].attributes.at("name"), "Bike lane");
  EXPECT_EQ(inst.meta[0].second, "Synthetic fixture; two projects");
  const auto le = to_election(inst);
  EXPECT_EQ(le.election.m(), 2u);
  EXPECT_EQ(le.election.n(), 2u);
  EXPECT_EQ(le.election, Election(2, {{0, 1}, {1}}));
  EXPECT_EQ(le.voter_labels, (std::vector<std::string>{"v1", "v2"}));
}

TEST(Pabulib, ToleratesBomAndCrlf) {
  const auto le = to_election(parse_pabulib(fixture("bom_crlf.pb")));
  EXPECT_EQ(le.election, Election(3, {{0, 2}, {}, {1}}));
}

TEST(Pabulib, ErrorsCiteTheLine) {
  try {
    parse_pabulib(fixture("unknown_project.pb"));
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 9u);
    EXPECT_NE(std::string(err.what()).find("p9"), std::string::npos);
  }
  try {
    parse_pabulib(fixture("no_voters.pb"));
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_NE(std::string(err.what()).find("no voters"), std::string::npos);
  }
  EXPECT_THROW(parse_pabulib(""), ParseError);
  EXPECT_THROW(parse_pabulib("PROJECTS\nproject_id\nMETA\n"), ParseError);
  EXPECT_THROW(parse_pabulib("META\nkey;value\nPROJECTS\nproject_id;cost\np;1\np;2\nVOTES\nvoter_id;vote\n1;p\n"),
               ParseError);
  EXPECT_THROW(parse_pabulib("META\nkey;value\nPROJECTS\nproject_id;cost\np;1;9\nVOTES\nvoter_id;vote\n1;p\n"),
               ParseError);
}

TEST(Pabulib, WriteParseRoundTrip) {
  for (const auto& name : {"tiny.pb", "bom_crlf.pb"}) {
    const auto inst = parse_pabulib(fixture(name));
    const auto again = parse_pabulib(write_pabulib(inst));
    EXPECT_EQ(to_election(again).election, to_election(inst).election);
    EXPECT_EQ(again.meta, inst.meta);
    EXPECT_EQ(write_pabulib(again), write_pabulib(inst));
  }
}

TEST(Pabulib, NeverThrowsUnstructuredErrors) {
  std::mt19937_64 gen(1);
  const std::string base = fixture("tiny.pb");
  const std::string alphabet = "META\nPROJECTSVOT;,\"\r\n pv12_id";
  for (int t = 0; t < 3000; ++t) {
    std::string text;
    if (t % 2 == 0) {
      text = base;
      for (int k = 0; k < 1 + static_cast<int>(gen() % 4); ++k) {
        text[gen() % text.size()] = static_cast<char>(t % 4 == 0 ? gen() % 256 : alphabet[gen() % alphabet.size()]);
      }
    } else {
      text.resize(gen() % 200);
      for (char& c : text) c = static_cast<char>(gen() % 256);
    }
    try {
      parse_pabulib(text);
    } catch (const DataError&) {
    } catch (const std::exception& err) {
      ADD_FAILURE() << "unstructured error: " << err.what();
    }
  }
}

TEST(Subsample, IdentityAndDeterminism) {
  const auto e = to_election(synthetic(12, 30, 3)).election;
  const auto same = subsample(e, e.m(), e.n(), 9);
  EXPECT_EQ(same.election, e);
  EXPECT_EQ(subsample(e, 5, 10, 4).election, subsample(e, 5, 10, 4).election);
  EXPECT_THROW(subsample(e, 13, 10, 4), DataError);
}

TEST(Subsample, KeepsIntersectionsOfBallots) {
  const auto inst = synthetic(60, 1100, 5);
  const auto e = to_election(inst).election;
  ASSERT_TRUE(large_enough(e));
  const auto sub = subsample(e, kLargeEnoughCandidates, kLargeEnoughVoters, 2);
  EXPECT_LE(total_approvals(sub.election), total_approvals(e));
  for (std::size_t v = 0; v < sub.kept_voters.size(); ++v) {
    Ballot expected;
    for (std::size_t i = 0; i < sub.kept_candidates.size(); ++i) {
      const auto& orig = e.vote(sub.kept_voters[v]);
      if (std::binary_search(orig.begin(), orig.end(), sub.kept_candidates[i])) {
        expected.push_back(static_cast<Candidate>(i));
      }
    }
    EXPECT_EQ(sub.election.vote(v), expected);
  }
  const auto restricted = restrict_instance(inst, sub);
  EXPECT_EQ(to_election(parse_pabulib(write_pabulib(restricted))).election, sub.election);
}
