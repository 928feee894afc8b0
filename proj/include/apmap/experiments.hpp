#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apmap/committees.hpp"
#include "apmap/correlation.hpp"
#include "apmap/cultures.hpp"
#include "apmap/election_io.hpp"
#include "apmap/metrics.hpp"
#include "apmap/rng.hpp"

namespace apmap {

// ---------------------------------------------------------------------------
// Manifests

struct ManifestEntry {
  std::string label;
  std::optional<CultureSpec> spec;  // either a culture to sample ...
  std::string path;                 // ... or an election file
  std::uint64_t seed = 0;
};

struct DatasetManifest {
  std::string name;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<ManifestEntry> entries;

  void validate() const {
    std::set<std::string> seen;
    for (const auto& e : entries) {
      detail::check_label(e.label);
      if (!seen.insert(e.label).second) throw DataError("duplicate label '" + e.label + "' in manifest " + name);
      if (!e.spec && e.path.empty()) throw DataError("entry '" + e.label + "' has neither spec nor path");
      if (e.spec) e.spec->validate();
    }
  }
};

inline nlohmann::json to_json(const DatasetManifest& d) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : d.entries) {
    nlohmann::json j{{"label", e.label}, {"seed", e.seed}};
    if (e.spec) j["spec"] = to_json(*e.spec);
    if (!e.path.empty()) j["path"] = e.path;
    entries.push_back(std::move(j));
  }
  return nlohmann::json{{"name", d.name}, {"m", d.m}, {"n", d.n}, {"entries", entries}};
}

inline DatasetManifest manifest_from_json(const nlohmann::json& j) {
  DatasetManifest d;
  try {
    d.name = j.at("name").get<std::string>();
    d.m = j.at("m").get<std::size_t>();
    d.n = j.at("n").get<std::size_t>();
    for (const auto& e : j.at("entries")) {
      ManifestEntry entry;
      entry.label = e.at("label").get<std::string>();
      entry.seed = e.value("seed", std::uint64_t{0});
      if (e.contains("spec")) entry.spec = culture_spec_from_json(e["spec"]);
      entry.path = e.value("path", std::string());
      d.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("manifest json: ") + err.what());
  }
  d.validate();
  return d;
}

// Samples (or loads) the election behind one manifest entry. Relative paths
// resolve against `base`.
inline Election realize(const ManifestEntry& entry, std::size_t m, std::size_t n,
                        const std::filesystem::path& base = {}) {
  if (entry.spec) return sample(*entry.spec, m, n, entry.seed);
  std::filesystem::path p(entry.path);
  if (p.is_relative() && !base.empty()) p = base / p;
  return load_election(p);
}

// Leading culture tag of a label ("resampling_p0.1000_phi0.5000" -> "resampling").
inline std::string culture_of_label(const std::string& label) {
  return label.substr(0, label.find('_'));
}

namespace detail {

inline std::string fmt4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

inline std::string spec_label(const CultureSpec& s) {
  switch (s.kind) {
    case CultureKind::Resampling: return "resampling_p" + fmt4(s.p) + "_phi" + fmt4(s.phi);
    case CultureKind::Disjoint:
      return "disjoint_g" + std::to_string(s.g) + "_p" + fmt4(s.p) + "_phi" + fmt4(s.phi);
    case CultureKind::Noise:
      return "noise_p" + fmt4(s.p) + "_phi" + fmt4(s.phi) + "_" + to_string(s.vote_distance);
    case CultureKind::Euclidean:
      return "euclidean_" + std::to_string(s.dim) + "d_r" + fmt4(s.radius);
    case CultureKind::Urn: return "urn_p" + fmt4(s.p) + "_alpha" + fmt4(s.alpha);
    case CultureKind::IC: return "ic_p" + fmt4(s.p);
    case CultureKind::ID: return "id_p" + fmt4(s.p);
    case CultureKind::Empty: return "empty";
    case CultureKind::Full: return "full";
  }
  return "unknown";
}

inline void push(DatasetManifest& d, const CultureSpec& spec, std::uint64_t seed, std::string label = {}) {
  if (label.empty()) label = spec_label(spec);
  const auto index = d.entries.size();
  d.entries.push_back({std::move(label), spec, {}, derive_seed(seed, index)});
}

inline std::vector<double> tenths() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Datasets

struct BackgroundConfig {
  std::size_t m = 100;
  std::size_t n = 1000;
  std::size_t per_p_line = 16;    // phi values on each fixed-p line
  std::size_t per_phi_line = 13;  // p values on each fixed-phi line
};

// (p, phi)-resampling grid: p in {0, 0.1, ..., 1} with phi spread over (0,1),
// plus phi in {0, 0.25, 0.5, 0.75, 1} with p spread over (0,1).
inline DatasetManifest build_background(std::uint64_t seed, const BackgroundConfig& cfg = {}) {
  DatasetManifest d{"background", cfg.m, cfg.n, {}};
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    for (double phi : interior_points(0.0, 1.0, cfg.per_p_line)) detail::push(d, CultureSpec::resampling(p, phi), seed);
  }
  for (double phi : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double p : interior_points(0.0, 1.0, cfg.per_phi_line)) detail::push(d, CultureSpec::resampling(p, phi), seed);
  }
  d.validate();
  return d;
}

// The four synthetic culture datasets of the statistics study: disjoint
// (250), noise (225), truncated urn (225) and Euclidean (200).
inline std::vector<DatasetManifest> build_culture_datasets(std::uint64_t seed, std::size_t m = 100,
                                                           std::size_t n = 1000) {
  std::vector<DatasetManifest> out;

  DatasetManifest disjoint{"disjoint", m, n, {}};
  for (std::size_t g = 2; g <= 6; ++g) {
    const double gd = static_cast<double>(g);
    for (double phi : interior_points(0.05, 1.0 / gd, 50)) {
      detail::push(disjoint, CultureSpec::disjoint(1.0 / gd, phi, g), derive_seed(seed, 1));
    }
  }
  out.push_back(std::move(disjoint));

  DatasetManifest noise{"noise", m, n, {}};
  for (double p : detail::tenths()) {
    for (double phi : interior_points(0.0, 1.0, 25)) detail::push(noise, CultureSpec::noise(p, phi), derive_seed(seed, 2));
  }
  out.push_back(std::move(noise));

  DatasetManifest urn{"urn", m, n, {}};
  for (double p : detail::tenths()) {
    for (double alpha : interior_points(0.0, 1.0, 25)) detail::push(urn, CultureSpec::urn(p, alpha), derive_seed(seed, 3));
  }
  out.push_back(std::move(urn));

  DatasetManifest euclid{"euclidean", m, n, {}};
  for (double r : interior_points(0.0025, 0.25, 100)) detail::push(euclid, CultureSpec::euclidean(1, r), derive_seed(seed, 4));
  for (double r : interior_points(0.005, 0.5, 100)) detail::push(euclid, CultureSpec::euclidean(2, r), derive_seed(seed, 4));
  out.push_back(std::move(euclid));

  for (const auto& d : out) d.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

struct StatisticsOptions {
  std::size_t k = 10;
  double pav_budget_seconds = 600.0;
  bool cohesiveness = true;
  bool pav = true;
};

struct StatisticsRow {
  std::string label;
  double max_score = 0.0;
  std::size_t cohesiveness_level = 0;
  double cohesive_fraction = 0.0;
  double pav_runtime_seconds = 0.0;
  double pav_score = 0.0;
  std::string status = "ok";  // "ok", "pav_timeout", "error: ..."
};

inline StatisticsRow election_statistics(const std::string& label, const Election& e,
                                         const StatisticsOptions& opt) {
  StatisticsRow row;
  row.label = label;
  row.max_score = max_approval_score(e);
  row.cohesive_fraction = voters_in_1cohesive_fraction(e, opt.k);
  if (opt.cohesiveness) row.cohesiveness_level = cohesiveness_level(e, opt.k).level;
  if (opt.pav) {
    const auto pav = pav_committee(e, opt.k, opt.pav_budget_seconds);
    row.pav_runtime_seconds = pav.seconds;
    row.pav_score = pav.score.value();
    if (!pav.optimal) row.status = "pav_timeout";
  }
  return row;
}

// One row per manifest entry, sorted by label. Per-election failures are
// recorded in the status column instead of aborting the run.
inline std::vector<StatisticsRow> run_statistics(const DatasetManifest& manifest, const StatisticsOptions& opt,
                                                 const std::filesystem::path& base = {}) {
  std::vector<StatisticsRow> rows;
  for (const auto& entry : manifest.entries) {
    try {
      rows.push_back(election_statistics(entry.label, realize(entry, manifest.m, manifest.n, base), opt));
    } catch (const std::exception& err) {
      StatisticsRow row;
      row.label = entry.label;
      row.status = std::string("error: ") + err.what();
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  return rows;
}

inline std::string statistics_csv(const std::vector<StatisticsRow>& rows) {
  std::string out = "label,max_score,cohesiveness_level,cohesive_fraction,pav_runtime_seconds,pav_score,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out += r.label + "," + format_double(r.max_score) + "," + std::to_string(r.cohesiveness_level) + "," +
           format_double(r.cohesive_fraction) + "," + format_double(r.pav_runtime_seconds) + "," +
           format_double(r.pav_score) + "," + status + "\n";
  }
  return out;
}

// Numeric columns of a statistics CSV keyed by label; non-numeric cells
// (the status column, blanks) are skipped.
inline std::map<std::string, std::map<std::string, double>> statistics_from_csv(std::string_view text) {
  const auto rows = detail::lines(text);
  if (rows.empty()) throw ParseError(1, "empty statistics file");
  const auto header = detail::split(rows[0], ',');
  if (header.empty() || header[0] != "label") throw ParseError(1, "header must start with 'label'");
  std::map<std::string, std::map<std::string, double>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cells = detail::split(rows[r], ',');
    if (cells.size() != header.size()) throw ParseError(r + 1, "wrong number of columns");
    auto& stats = out[std::string(cells[0])];
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (ec == std::errc() && ptr == cells[c].data() + cells[c].size()) stats[std::string(header[c])] = v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metric correlation

struct CorrelationComposition {
  std::size_t disjoint = 0;
  std::size_t noise = 0;
  std::size_t urn = 0;
  std::size_t euclidean = 0;
  std::size_t resampling = 0;
  std::size_t ic = 0;
  std::size_t id = 0;
  bool extremes = true;  // 0.5-IC, 0.5-ID, empty, full

  // 363 elections: the full-size composition
  static CorrelationComposition paper() { return {40, 45, 50, 50, 134, 20, 20, true}; }
  // 60 elections in roughly the same proportions
  static CorrelationComposition desk() { return {6, 7, 8, 8, 19, 4, 4, true}; }

  std::size_t total() const {
    return disjoint + noise + urn + euclidean + resampling + ic + id + (extremes ? 4 : 0);
  }
};

struct CorrelationConfig {
  std::size_t m = 6;
  std::size_t n = 12;
  CorrelationComposition composition = CorrelationComposition::desk();
  std::size_t isomorphic_cap = kDefaultIsomorphicCap;

  static CorrelationConfig paper() { return {10, 50, CorrelationComposition::paper(), kDefaultIsomorphicCap}; }
  static CorrelationConfig desk() { return {}; }
};

namespace detail {

// i-th of `count` values: cycles through `outer`, spreading the inner
// parameter over (a, b) within each outer value.
inline std::pair<double, double> spread(std::size_t i, std::size_t count, const std::vector<double>& outer,
                                        double a, double b) {
  const std::size_t per = (count + outer.size() - 1) / outer.size();
  return {outer[i % outer.size()], interior_points(a, b, per)[i / outer.size()]};
}

}  // namespace detail

inline DatasetManifest build_correlation_dataset(const CorrelationConfig& cfg, std::uint64_t seed) {
  const auto& c = cfg.composition;
  DatasetManifest d{"correlation", cfg.m, cfg.n, {}};
  const std::vector<double> groups = {2, 3, 4, 5, 6};
  std::size_t usable_groups = 0;
  for (double g : groups) usable_groups += g <= static_cast<double>(cfg.m) ? 1 : 0;
  const std::vector<double> gs(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(usable_groups, 1)));
  for (std::size_t i = 0; i < c.disjoint; ++i) {
    const double g = gs[i % gs.size()];
    const std::size_t per = (c.disjoint + gs.size() - 1) / gs.size();
    const double phi = interior_points(0.05, 1.0 / g, per)[i / gs.size()];
    detail::push(d, CultureSpec::disjoint(1.0 / g, phi, static_cast<std::size_t>(g)), seed);
  }
  for (std::size_t i = 0; i < c.noise; ++i) {
    auto [p, phi] = detail::spread(i, c.noise, detail::tenths(), 0.0, 1.0);
    detail::push(d, CultureSpec::noise(p, phi), seed);
  }
  for (std::size_t i = 0; i < c.urn; ++i) {
    auto [p, alpha] = detail::spread(i, c.urn, detail::tenths(), 0.0, 1.0);
    detail::push(d, CultureSpec::urn(p, alpha), seed);
  }
  const std::size_t one_d = (c.euclidean + 1) / 2;
  for (double r : interior_points(0.0025, 0.25, one_d)) detail::push(d, CultureSpec::euclidean(1, r), seed);
  for (double r : interior_points(0.005, 0.5, c.euclidean - one_d)) detail::push(d, CultureSpec::euclidean(2, r), seed);
  if (c.resampling > 0) {
    // uniform (p, phi) lattice, row-major, truncated to the requested count
    const auto rows = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(c.resampling))));
    const std::size_t cols = (c.resampling + rows - 1) / rows;
    const auto ps = interior_points(0.0, 1.0, rows);
    const auto phis = interior_points(0.0, 1.0, cols);
    for (std::size_t i = 0; i < c.resampling; ++i) {
      detail::push(d, CultureSpec::resampling(ps[i / cols], phis[i % cols]), seed);
    }
  }
  for (double p : interior_points(0.0, 1.0, c.ic)) detail::push(d, CultureSpec::ic(p), seed);
  for (double p : interior_points(0.0, 1.0, c.id)) detail::push(d, CultureSpec::id(p), seed);
  if (c.extremes) {
    detail::push(d, CultureSpec::ic(0.5), seed, "ic_extreme");
    detail::push(d, CultureSpec::id(0.5), seed, "id_extreme");
    detail::push(d, CultureSpec::empty(), seed);
    detail::push(d, CultureSpec::full(), seed);
  }
  d.validate();
  return d;
}

struct CorrelationPair {
  std::string a;
  std::string b;
  double hamming = 0.0;
  double approvalwise = 0.0;
};

struct CorrelationReport {
  std::optional<double> pearson;  // empty when degenerate (a constant series)
  double fraction_identical = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<CorrelationPair> pairs;

  bool degenerate() const { return !pearson.has_value(); }
};

// All-pairs isomorphic Hamming vs approvalwise distance. A pair counts as
// identical when the Hamming distance equals n times the approvalwise one,
// i.e. the score-profile lower bound is attained.
inline CorrelationReport correlate(const std::vector<Election>& elections, const std::vector<std::string>& labels,
                                   std::size_t isomorphic_cap = kDefaultIsomorphicCap) {
  const auto ham = pairwise_distances(elections, labels, Metric::IsomorphicHamming, isomorphic_cap);
  const auto app = pairwise_distances(elections, labels, Metric::Approvalwise);
  CorrelationReport report;
  if (!elections.empty()) {
    report.m = elections.front().m();
    report.n = elections.front().n();
  }
  std::vector<std::vector<std::size_t>> scores;
  for (const auto& e : elections) scores.push_back(sorted_scores(e));
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t identical = 0;
  for (std::size_t i = 0; i < elections.size(); ++i) {
    for (std::size_t j = i + 1; j < elections.size(); ++j) {
      report.pairs.push_back({labels[i], labels[j], ham(i, j), app(i, j)});
      xs.push_back(ham(i, j));
      ys.push_back(app(i, j));
      std::size_t profile = 0;
      for (std::size_t c = 0; c < scores[i].size(); ++c) {
        profile += scores[i][c] > scores[j][c] ? scores[i][c] - scores[j][c] : scores[j][c] - scores[i][c];
      }
      identical += static_cast<double>(profile) == ham(i, j) ? 1 : 0;
    }
  }
  report.pearson = pearson(xs, ys);
  if (!report.pairs.empty()) {
    report.fraction_identical = static_cast<double>(identical) / static_cast<double>(report.pairs.size());
  }
  return report;
}

inline CorrelationReport run_correlation(const CorrelationConfig& cfg, std::uint64_t seed) {
  if (cfg.m > cfg.isomorphic_cap) {
    throw CapExceeded("correlation study needs m <= " + std::to_string(cfg.isomorphic_cap));
  }
  const auto manifest = build_correlation_dataset(cfg, seed);
  std::vector<Election> elections;
  std::vector<std::string> labels;
  for (const auto& entry : manifest.entries) {
    elections.push_back(realize(entry, cfg.m, cfg.n));
    labels.push_back(entry.label);
  }
  return correlate(elections, labels, cfg.isomorphic_cap);
}

// Both axes divided by their maxima, as plotted.
inline nlohmann::json to_json(const CorrelationReport& r) {
  double max_h = 0.0;
  double max_a = 0.0;
  for (const auto& p : r.pairs) {
    max_h = std::max(max_h, p.hamming);
    max_a = std::max(max_a, p.approvalwise);
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"hamming", p.hamming},
                     {"approvalwise", p.approvalwise},
                     {"hamming_normalized", max_h > 0 ? p.hamming / max_h : 0.0},
                     {"approvalwise_normalized", max_a > 0 ? p.approvalwise / max_a : 0.0}});
  }
  nlohmann::json j{{"m", r.m},
                   {"n", r.n},
                   {"elections_pairs", r.pairs.size()},
                   {"degenerate", r.degenerate()},
                   {"fraction_identical", r.fraction_identical},
                   {"pairs", pairs}};
  j["pearson"] = r.pearson ? nlohmann::json(*r.pearson) : nlohmann::json(nullptr);
  return j;
}

}  // namespace apmap
