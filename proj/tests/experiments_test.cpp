#include <gtest/gtest.h>

#include <set>

#include "apmap/correlation.hpp"
#include "apmap/embedding.hpp"
#include "apmap/experiments.hpp"

using namespace apmap;

TEST(Background, Has241ResamplingElections) {
  const auto bg = build_background(1);
  ASSERT_EQ(bg.entries.size(), 241u);
  std::size_t p_zero = 0;
  std::size_t phi_zero = 0;
  for (const auto& e : bg.entries) {
    ASSERT_TRUE(e.spec.has_value());
    EXPECT_EQ(e.spec->kind, CultureKind::Resampling);
    if (e.spec->p == 0.0) ++p_zero;
    if (e.spec->phi == 0.0) ++phi_zero;
  }
  EXPECT_EQ(p_zero, 16u);
  EXPECT_EQ(phi_zero, 13u);
}

TEST(Background, PZeroLineIsEmptyAndPhiZeroLineIsId) {
  BackgroundConfig cfg;
  cfg.m = 20;
  cfg.n = 30;
  const auto bg = build_background(2, cfg);
  for (const auto& entry : bg.entries) {
    const auto e = realize(entry, cfg.m, cfg.n);
    if (entry.spec->p == 0.0) {
      EXPECT_EQ(total_approvals(e), 0u);
    }
    if (entry.spec->phi == 0.0) {
      for (const auto& b : e.votes()) EXPECT_EQ(b, e.vote(0));
    }
  }
}

TEST(CultureDatasets, CountsAndIntervals) {
  const auto sets = build_culture_datasets(3);
  ASSERT_EQ(sets.size(), 4u);
  std::map<std::string, std::size_t> sizes;
  for (const auto& d : sets) sizes[d.name] = d.entries.size();
  EXPECT_EQ(sizes["disjoint"], 250u);
  EXPECT_EQ(sizes["noise"], 225u);
  EXPECT_EQ(sizes["urn"], 225u);
  EXPECT_EQ(sizes["euclidean"], 200u);
  for (const auto& d : sets) {
    std::map<std::string, std::size_t> per_group;
    for (const auto& e : d.entries) {
      const auto& s = *e.spec;
      switch (s.kind) {
        case CultureKind::Disjoint:
          EXPECT_GT(s.phi, 0.05);
          EXPECT_LT(s.phi, 1.0 / static_cast<double>(s.g));
          ++per_group[std::to_string(s.g)];
          break;
        case CultureKind::Noise:
        case CultureKind::Urn:
          ++per_group[format_double(s.p)];
          break;
        case CultureKind::Euclidean:
          EXPECT_GT(s.radius, s.dim == 1 ? 0.0025 : 0.005);
          EXPECT_LT(s.radius, s.dim == 1 ? 0.25 : 0.5);
          ++per_group[std::to_string(s.dim)];
          break;
        default: ADD_FAILURE();
      }
    }
    for (const auto& [group, count] : per_group) {
      EXPECT_EQ(count, d.name == "disjoint" ? 50u : d.name == "euclidean" ? 100u : 25u) << d.name << " " << group;
    }
  }
}

TEST(Manifest, JsonRoundTripAndRegeneration) {
  const auto d = build_culture_datasets(4, 12, 10)[2];
  const auto back = manifest_from_json(nlohmann::json::parse(to_json(d).dump()));
  ASSERT_EQ(back.entries.size(), d.entries.size());
  for (std::size_t i = 0; i < d.entries.size(); i += 37) {
    EXPECT_EQ(realize(back.entries[i], back.m, back.n), realize(d.entries[i], d.m, d.n));
  }
  auto dup = d;
  dup.entries[1].label = dup.entries[0].label;
  EXPECT_THROW(dup.validate(), DataError);
}

TEST(Statistics, ExtremeRowsAndSorting) {
  DatasetManifest d{"t", 12, 20, {}};
  d.entries.push_back({"full", CultureSpec::full(), {}, 1});
  d.entries.push_back({"empty", CultureSpec::empty(), {}, 1});
  d.entries.push_back({"id", CultureSpec::id(0.5), {}, 1});
  d.entries.push_back({"broken", {}, "/nonexistent.election", 1});
  StatisticsOptions opt;
  opt.k = 4;
  const auto rows = run_statistics(d, opt);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].label, "broken");
  EXPECT_EQ(rows[0].status.rfind("error:", 0), 0u);
  EXPECT_EQ(rows[1].label, "empty");
  EXPECT_EQ(rows[1].max_score, 0.0);
  EXPECT_EQ(rows[1].cohesiveness_level, 0u);
  EXPECT_EQ(rows[1].cohesive_fraction, 0.0);
  EXPECT_EQ(rows[2].label, "full");
  EXPECT_EQ(rows[2].cohesiveness_level, 4u);
  EXPECT_EQ(rows[2].max_score, 1.0);
  EXPECT_EQ(rows[3].cohesiveness_level, 4u);
  const auto table = statistics_from_csv(statistics_csv(rows));
  EXPECT_EQ(table.at("full").at("cohesiveness_level"), 4.0);
  EXPECT_EQ(table.at("full").count("status"), 0u);
}

TEST(Correlation, DeskDatasetComposition) {
  const auto d = build_correlation_dataset(CorrelationConfig::desk(), 1);
  EXPECT_EQ(d.entries.size(), 60u);
  std::set<std::string> cultures;
  for (const auto& e : d.entries) cultures.insert(culture_of_label(e.label));
  EXPECT_EQ(cultures, (std::set<std::string>{"disjoint", "noise", "urn", "euclidean", "resampling", "ic", "id",
                                             "empty", "full"}));
  EXPECT_EQ(build_correlation_dataset(CorrelationConfig::paper(), 1).entries.size(), 363u);
}

TEST(Correlation, PairsAndDegenerateInput) {
  CorrelationConfig cfg;
  cfg.composition = {2, 2, 2, 2, 3, 1, 1, true};
  const auto r = run_correlation(cfg, 5);
  EXPECT_EQ(r.pairs.size(), 17u * 16u / 2u);
  EXPECT_TRUE(r.pearson.has_value());
  for (const auto& p : r.pairs) EXPECT_GE(p.hamming + 1e-9, p.approvalwise * cfg.n);

  std::vector<Election> same(3, Election(3, {{0}, {1}}));
  const auto flat = correlate(same, {"a", "b", "c"});
  EXPECT_TRUE(flat.degenerate());
  EXPECT_EQ(flat.fraction_identical, 1.0);
  EXPECT_TRUE(to_json(flat)["pearson"].is_null());

  cfg.m = 11;
  EXPECT_THROW(run_correlation(cfg, 5), CapExceeded);
}

TEST(Background, GridLinesEmbedAsMonotoneChains) {
  // along each grid line, embedded distance from the line's first point grows with position
  BackgroundConfig cfg;
  cfg.m = 50;
  cfg.n = 200;
  const auto bg = build_background(1, cfg);
  std::vector<Election> es;
  std::vector<std::string> labels;
  for (const auto& e : bg.entries) {
    es.push_back(realize(e, cfg.m, cfg.n));
    labels.push_back(e.label);
  }
  const auto ed = embedded_distances(embed(pairwise_distances(es, labels, Metric::Approvalwise), {}, 1).points);
  std::vector<double> rhos;
  const auto line = [&](std::size_t start, std::size_t len) {
    std::vector<double> pos;
    std::vector<double> d;
    for (std::size_t i = 1; i < len; ++i) {
      pos.push_back(static_cast<double>(i));
      d.push_back(ed(start, start + i));
    }
    rhos.push_back(*spearman(pos, d));
  };
  // p = 0 and p = 1 each collapse to a single election, so their lines are skipped
  for (std::size_t l = 1; l < 10; ++l) line(l * cfg.per_p_line, cfg.per_p_line);
  for (std::size_t l = 0; l < 5; ++l) line(11 * cfg.per_p_line + l * cfg.per_phi_line, cfg.per_phi_line);
  double mean = 0.0;
  for (double r : rhos) {
    EXPECT_GT(r, 0.5);
    mean += r / static_cast<double>(rhos.size());
  }
  EXPECT_GE(mean, 0.9);
}
