#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "apmap/correlation.hpp"
#include "apmap/embedding.hpp"
#include "apmap/render.hpp"

using namespace apmap;

namespace {

// Distance matrix of points in the plane.
DistanceMatrix planar(const std::vector<std::pair<double, double>>& xy) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < xy.size(); ++i) labels.push_back("p" + std::to_string(i));
  DistanceMatrix dm(labels);
  for (std::size_t i = 0; i < xy.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      dm.set(i, j, std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second));
    }
  }
  return dm;
}

}  // namespace

TEST(Correlation, PearsonAndSpearman) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{2, 4, 6, 8};
  EXPECT_NEAR(*pearson(x, y), 1.0, 1e-12);
  const std::vector<double> z{1, 8, 27, 64};
  EXPECT_NEAR(*spearman(x, z), 1.0, 1e-12);
  EXPECT_LT(*pearson(x, z), 1.0);
  const std::vector<double> flat{3, 3, 3, 3};
  EXPECT_FALSE(pearson(x, flat).has_value());
  EXPECT_EQ(ranks(std::vector<double>{10, 20, 10}), (std::vector<double>{1.5, 3, 1.5}));
}

TEST(Embedding, TwoPointsAndTriangles) {
  const auto two = embed(planar({{0, 0}, {3, 4}}), {}, 1);
  EXPECT_NEAR(std::hypot(two.points[0].x - two.points[1].x, two.points[0].y - two.points[1].y), 5.0, 1e-9);
  const auto dm = planar({{0, 0}, {4, 0}, {1, 2.5}});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ed = embedded_distances(embed(dm, {}, seed).points);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < i; ++j) EXPECT_NEAR(ed(i, j), dm(i, j), 0.01 * dm(i, j));
    }
  }
}

TEST(Embedding, ExtremesAreNotPlanar) {
  // empty-full at m, every other pair at m/2: IC and ID both want the midpoint
  DistanceMatrix dm({"empty", "full", "ic", "id"});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < i; ++j) dm.set(i, j, 5.0);
  }
  dm.set(0, 1, 10.0);
  const double s = stress(dm, embed(dm, {}, 1).points);
  EXPECT_GT(s, 0.01);
  EXPECT_LT(s, 0.5);
}

TEST(Embedding, ConvergedBeatsRandomLayout) {
  const auto dm = planar({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}, {2, 0.3}, {1.7, 1.4}, {0.2, 1.9}});
  const auto emb = embed(dm, {}, 3);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0, 2);
  for (int t = 0; t < 20; ++t) {
    auto pts = emb.points;
    for (auto& p : pts) {
      p.x = u(gen);
      p.y = u(gen);
    }
    EXPECT_GE(stress(dm, pts), stress(dm, emb.points));
  }
}

TEST(Embedding, StressIgnoresRigidMotions) {
  const auto dm = planar({{0, 0}, {1, 0}, {0, 1}, {2, 2}, {1.5, 0.2}});
  const auto emb = embed(dm, {}, 4);
  const double base = stress(dm, emb.points);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 10; ++t) {
    const double a = u(gen);
    const double dx = u(gen);
    const double dy = u(gen);
    auto pts = emb.points;
    for (auto& p : pts) {
      const double x = std::cos(a) * p.x - std::sin(a) * p.y + dx;
      const double y = std::sin(a) * p.x + std::cos(a) * p.y + dy;
      p.x = x;
      p.y = y;
    }
    EXPECT_NEAR(stress(dm, pts), base, 1e-9);
  }
}

TEST(Embedding, DeterministicAndOrderInvariant) {
  const auto dm = planar({{0, 0}, {3, 1}, {1, 2}, {2, 2}, {0, 3}});
  const auto a = embed(dm, {}, 11);
  const auto b = embed(dm, {}, 11);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].x, b.points[i].x);
    EXPECT_EQ(a.points[i].y, b.points[i].y);
  }
  // same matrix with rows permuted: identical coordinates per label
  std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  std::vector<std::string> labels;
  for (auto i : perm) labels.push_back(dm.labels()[i]);
  DistanceMatrix shuffled(labels);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) shuffled.set(i, j, dm(perm[i], perm[j]));
  }
  const auto c = embed(shuffled, {}, 11);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    EXPECT_EQ(c.points[i].label, a.points[perm[i]].label);
    EXPECT_EQ(c.points[i].x, a.points[perm[i]].x);
    EXPECT_EQ(c.points[i].y, a.points[perm[i]].y);
  }
}

TEST(Embedding, AnchorSitsBelowTheCentroid) {
  auto dm = planar({{0, 0}, {4, 0}, {0, 4}, {4, 4}, {2, 6}});
  std::vector<std::string> labels = dm.labels();
  labels[4] = "empty";
  DistanceMatrix named(labels);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < i; ++j) named.set(i, j, dm(i, j));
  }
  const auto emb = embed(named, {}, 2);
  double cx = 0.0;
  for (const auto& p : emb.points) cx += p.x;
  EXPECT_NEAR(emb.points[4].x, cx / 5.0, 1e-9);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(emb.points[4].y, emb.points[i].y);
}

TEST(Embedding, DegenerateInputs) {
  DistanceMatrix zero({"a", "b", "c"});
  const auto emb = embed(zero, {}, 1);
  EXPECT_FALSE(emb.warning.empty());
  for (const auto& p : emb.points) EXPECT_EQ(std::hypot(p.x, p.y), 0.0);
  EXPECT_THROW(embed(DistanceMatrix({"a"}), {}, 1), DataError);
}

TEST(Embedding, StressIsScaleInvariant) {
  const auto dm = planar({{0, 0}, {1, 0}, {0, 2}});
  std::vector<MapPoint> pts{{"p0", 0, 0, {}}, {"p1", 10, 0, {}}, {"p2", 0, 20, {}}};
  EXPECT_NEAR(stress(dm, pts), 0.0, 1e-12);
  EXPECT_NEAR(embedded_distances(pts)(1, 2), std::hypot(10, 20), 1e-12);
}

TEST(MapPoints, CsvRoundTrip) {
  std::vector<MapPoint> pts{{"a", 0.5, -1.25, {{"max_score", 0.75}}}, {"b", 2, 3, {}}};
  const auto back = map_points_from_csv(to_csv(pts));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].stats.at("max_score"), 0.75);
  EXPECT_TRUE(back[1].stats.empty());
  EXPECT_EQ(back[0].y, -1.25);
  EXPECT_THROW(map_points_from_csv("label,x\n"), ParseError);
}

TEST(Render, PointsLegendAndErrors) {
  std::vector<MapPoint> pts{{"ic_p0.5", 0, 0, {{"s", 1.0}}}, {"urn_p0.1", 1, 1, {{"s", 3.0}}}};
  const auto svg = render_svg(pts, {});
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) ++circles;
  EXPECT_EQ(circles, 2u);
  EXPECT_NE(svg.find(">ic<"), std::string::npos);
  EXPECT_NE(svg.find(">urn<"), std::string::npos);
  RenderConfig cfg;
  cfg.color_by = "s";
  cfg.palette = Palette::Continuous;
  const auto ramp = render_svg(pts, cfg);
  EXPECT_NE(ramp.find("max 3"), std::string::npos);
  EXPECT_NE(ramp.find("min 1"), std::string::npos);
  cfg.color_by = "missing";
  EXPECT_THROW(render_svg(pts, cfg), DataError);
}
