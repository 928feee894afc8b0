// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 resource cap exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apmap/apmap.hpp"

namespace fs = std::filesystem;
using namespace apmap;

namespace {

fs::path default_out_dir() {
  const char* env = std::getenv("APMAP_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

fs::path out_path(const std::string& given, const std::string& fallback) {
  return given.empty() ? default_out_dir() / fallback : fs::path(given);
}

void write_out(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw DataError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  write_file_atomic(path, content);
}

// Election files (*.election, *.json) of a directory, sorted by name; the
// file stem is the label.
struct LoadedSet {
  std::vector<Election> elections;
  std::vector<std::string> labels;
};

LoadedSet load_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".election" || (ext == ".json" && entry.path().stem() != "manifest"))) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  LoadedSet set;
  for (const auto& f : files) {
    set.elections.push_back(load_election(f));
    set.labels.push_back(f.stem().string());
  }
  if (set.elections.empty()) throw DataError("no election files in " + dir.string());
  return set;
}

DatasetManifest load_manifest(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& err) {
    throw DataError(path.string() + ": " + err.what());
  }
  return manifest_from_json(j);
}

std::vector<MapPoint> attach_stats(std::vector<MapPoint> points, const fs::path& stats_file) {
  const auto table = statistics_from_csv(read_file(stats_file));
  for (auto& p : points) {
    auto it = table.find(p.label);
    if (it == table.end()) throw DataError("label '" + p.label + "' missing from " + stats_file.string());
  }
  if (table.size() != points.size()) {
    for (const auto& [label, stats] : table) {
      if (std::none_of(points.begin(), points.end(), [&](const MapPoint& p) { return p.label == label; })) {
        throw DataError("label '" + label + "' in " + stats_file.string() + " is not in the distance matrix");
      }
    }
  }
  for (auto& p : points) p.stats = table.at(p.label);
  return points;
}

struct Options {
  std::uint64_t seed = 1;

  // sample
  std::string spec_file, kind = "resampling", vote_distance = "hamming";
  double p = 0.5, phi = 0.5, alpha = 0.1, radius = 0.1;
  std::size_t g = 2;
  int dim = 1;
  std::size_t m = 10, n = 50, count = 1;
  std::string out_dir;

  // ingest
  std::string input, label;
  std::size_t m_target = 0, n_target = 0;

  // distance / stats / embed / map
  std::string dir, manifest, metric = "approvalwise", out, matrix, stats, coords;
  std::size_t cap = kDefaultIsomorphicCap;
  std::size_t k = 10;
  double budget = 600.0;
  bool no_cohesiveness = false;
  std::size_t iterations = 1000;
  std::string color_by = "culture", palette;
  double point_radius = 4.0, width = 800.0, height = 800.0;
  bool no_legend = false;

  // correlate / reproduce
  std::string scale = "desk";
  std::size_t corr_m = 6, corr_n = 12;
  bool expensive = false;
};

CultureSpec spec_from_options(const Options& o) {
  if (!o.spec_file.empty()) {
    try {
      return culture_spec_from_json(nlohmann::json::parse(read_file(o.spec_file)));
    } catch (const nlohmann::json::parse_error& err) {
      throw DataError(o.spec_file + ": " + err.what());
    }
  }
  CultureSpec s;
  s.kind = culture_kind_from_string(o.kind);
  s.p = o.p;
  s.phi = o.phi;
  s.g = o.g;
  s.alpha = o.alpha;
  s.radius = o.radius;
  s.dim = o.dim;
  s.vote_distance = vote_distance_from_string(o.vote_distance);
  s.validate();
  return s;
}

void cmd_sample(const Options& o) {
  const CultureSpec spec = spec_from_options(o);
  if (o.m < 1 || o.n < 1 || o.count < 1) throw DataError("m, n and count must be positive");
  const fs::path dir = o.out_dir.empty() ? default_out_dir() : fs::path(o.out_dir);
  DatasetManifest manifest{"sample", o.m, o.n, {}};
  const std::string base = detail::spec_label(spec);
  for (std::size_t i = 0; i < o.count; ++i) {
    ManifestEntry entry;
    entry.label = o.count == 1 ? base : base + "_" + std::to_string(i);
    entry.spec = spec;
    entry.seed = derive_seed(o.seed, i);
    entry.path = entry.label + ".election";
    write_out(dir / entry.path, to_text(realize(entry, o.m, o.n)));
    manifest.entries.push_back(std::move(entry));
  }
  write_out(dir / "manifest.json", to_json(manifest).dump(2) + "\n");
  std::cout << "wrote " << o.count << " election(s) to " << dir.string() << "\n";
}

void cmd_ingest(const Options& o) {
  const auto inst = parse_pabulib(read_file(o.input));
  const auto labeled = to_election(inst);
  const fs::path dir = o.out_dir.empty() ? default_out_dir() : fs::path(o.out_dir);
  const std::string label = o.label.empty() ? "pabulib_" + fs::path(o.input).stem().string() : o.label;
  if (o.m_target > 0 || o.n_target > 0) {
    const auto sub = subsample(labeled.election, o.m_target > 0 ? o.m_target : labeled.election.m(),
                               o.n_target > 0 ? o.n_target : labeled.election.n(), o.seed);
    write_out(dir / (label + ".election"), to_text(sub.election));
    write_out(dir / (label + ".pb"), write_pabulib(restrict_instance(inst, sub)));
    std::cout << "subsampled to m=" << sub.election.m() << " n=" << sub.election.n() << "\n";
  } else {
    write_out(dir / (label + ".election"), to_text(labeled.election));
    std::cout << "ingested m=" << labeled.election.m() << " n=" << labeled.election.n() << "\n";
  }
}

void cmd_distance(const Options& o) {
  const auto set = load_dir(o.dir);
  const auto dm = pairwise_distances(set.elections, set.labels, metric_from_string(o.metric), o.cap);
  const fs::path out = out_path(o.out, "distances.csv");
  write_out(out, to_csv(dm));
  std::cout << "wrote " << dm.size() << "x" << dm.size() << " matrix to " << out.string() << "\n";
}

void cmd_stats(const Options& o) {
  StatisticsOptions opt;
  opt.k = o.k;
  opt.pav_budget_seconds = o.budget;
  opt.cohesiveness = !o.no_cohesiveness;
  std::vector<StatisticsRow> rows;
  if (!o.manifest.empty()) {
    rows = run_statistics(load_manifest(o.manifest), opt, fs::path(o.manifest).parent_path());
  } else {
    const auto set = load_dir(o.dir);
    for (std::size_t i = 0; i < set.elections.size(); ++i) {
      try {
        rows.push_back(election_statistics(set.labels[i], set.elections[i], opt));
      } catch (const std::exception& err) {
        rows.push_back({set.labels[i], 0, 0, 0, 0, 0, std::string("error: ") + err.what()});
      }
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  }
  const fs::path out = out_path(o.out, "statistics.csv");
  write_out(out, statistics_csv(rows));
  std::cout << "wrote statistics for " << rows.size() << " election(s) to " << out.string() << "\n";
}

Embedding embed_matrix(const Options& o) {
  const auto dm = distance_matrix_from_csv(read_file(o.matrix));
  EmbeddingConfig cfg;
  cfg.iterations = o.iterations;
  auto emb = embed(dm, cfg, o.seed);
  if (!emb.warning.empty()) std::cerr << "warning: " << emb.warning << "\n";
  return emb;
}

void cmd_embed(const Options& o) {
  auto emb = embed_matrix(o);
  if (!o.stats.empty()) emb.points = attach_stats(std::move(emb.points), o.stats);
  const fs::path out = out_path(o.out, "coordinates.csv");
  write_out(out, to_csv(emb.points));
  std::cout << "wrote coordinates to " << out.string() << "\n";
}

RenderConfig render_config(const Options& o) {
  RenderConfig cfg;
  cfg.color_by = o.color_by;
  if (o.palette.empty()) {
    cfg.palette = o.color_by == "culture" ? Palette::Categorical : Palette::Continuous;
  } else if (o.palette == "continuous") {
    cfg.palette = Palette::Continuous;
  } else if (o.palette == "categorical") {
    cfg.palette = Palette::Categorical;
  } else {
    throw DataError("unknown palette '" + o.palette + "'");
  }
  cfg.point_radius = o.point_radius;
  cfg.width = o.width;
  cfg.height = o.height;
  cfg.legend = !o.no_legend;
  return cfg;
}

void cmd_map(const Options& o) {
  const RenderConfig cfg = render_config(o);
  auto emb = embed_matrix(o);
  if (!o.stats.empty()) emb.points = attach_stats(std::move(emb.points), o.stats);
  const std::string svg = render_svg(emb.points, cfg);
  const fs::path out = out_path(o.out, "map.svg");
  const fs::path coords = o.coords.empty() ? fs::path(out).replace_extension(".csv") : fs::path(o.coords);
  write_out(coords, to_csv(emb.points));
  write_out(out, svg);
  std::cout << "wrote " << out.string() << " and " << coords.string() << "\n";
}

CorrelationConfig correlation_config(const Options& o) {
  if (o.scale == "paper") {
    if (!o.expensive) throw CapExceeded("paper-scale correlation is expensive; pass --expensive to run it");
    return CorrelationConfig::paper();
  }
  if (o.scale != "desk") throw DataError("unknown scale '" + o.scale + "'");
  CorrelationConfig cfg = CorrelationConfig::desk();
  cfg.m = o.corr_m;
  cfg.n = o.corr_n;
  cfg.isomorphic_cap = o.cap;
  return cfg;
}

void cmd_correlate(const Options& o) {
  const auto report = run_correlation(correlation_config(o), o.seed);
  const fs::path out = out_path(o.out, "correlation.json");
  write_out(out, to_json(report).dump(2) + "\n");
  std::cout << "pearson " << (report.pearson ? format_double(*report.pearson) : "undefined (degenerate)")
            << ", identical pairs " << format_double(report.fraction_identical) << "\n";
}

// Background grid map, per-statistic renderings, culture manifests and the
// metric-correlation report. Desk scale by default.
void cmd_reproduce(const Options& o) {
  const fs::path dir = o.out_dir.empty() ? default_out_dir() : fs::path(o.out_dir);
  BackgroundConfig bg;
  if (!o.expensive) {
    bg.m = 50;
    bg.n = 200;
  }
  const auto background = build_background(derive_seed(o.seed, 0), bg);
  write_out(dir / "background" / "manifest.json", to_json(background).dump(2) + "\n");
  std::vector<Election> elections;
  std::vector<std::string> labels;
  for (const auto& entry : background.entries) {
    elections.push_back(realize(entry, bg.m, bg.n));
    labels.push_back(entry.label);
  }
  const auto dm = pairwise_distances(elections, labels, Metric::Approvalwise);
  write_out(dir / "background" / "distances.csv", to_csv(dm));

  StatisticsOptions opt;
  opt.k = o.k;
  opt.pav_budget_seconds = o.budget;
  std::vector<StatisticsRow> rows;
  for (std::size_t i = 0; i < elections.size(); ++i) rows.push_back(election_statistics(labels[i], elections[i], opt));
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  const std::string stats_csv = statistics_csv(rows);
  write_out(dir / "background" / "statistics.csv", stats_csv);

  EmbeddingConfig ecfg;
  ecfg.iterations = o.iterations;
  auto emb = embed(dm, ecfg, o.seed);
  const auto table = statistics_from_csv(stats_csv);
  for (auto& p : emb.points) p.stats = table.at(p.label);
  write_out(dir / "background" / "coordinates.csv", to_csv(emb.points));
  for (const std::string stat : {"max_score", "cohesiveness_level", "cohesive_fraction", "pav_runtime_seconds"}) {
    RenderConfig cfg;
    cfg.color_by = stat;
    cfg.palette = Palette::Continuous;
    write_out(dir / "background" / ("map_" + stat + ".svg"), render_svg(emb.points, cfg));
  }

  for (const auto& d : build_culture_datasets(derive_seed(o.seed, 1))) {
    write_out(dir / "cultures" / (d.name + "_manifest.json"), to_json(d).dump(2) + "\n");
    if (o.expensive) {
      // PAV at full size; cohesiveness on the reduced size
      StatisticsOptions pav = opt;
      pav.cohesiveness = false;
      write_out(dir / "cultures" / (d.name + "_statistics.csv"), statistics_csv(run_statistics(d, pav)));
      auto small = build_culture_datasets(derive_seed(o.seed, 1), 50, 100);
      for (const auto& s : small) {
        if (s.name != d.name) continue;
        StatisticsOptions coh = opt;
        coh.pav = false;
        write_out(dir / "cultures" / (d.name + "_cohesiveness.csv"), statistics_csv(run_statistics(s, coh)));
      }
    }
  }

  const auto corr = run_correlation(o.expensive ? CorrelationConfig::paper() : CorrelationConfig::desk(),
                                    derive_seed(o.seed, 2));
  write_out(dir / "correlation.json", to_json(corr).dump(2) + "\n");
  std::cout << "reproduced " << (o.expensive ? "full" : "desk") << "-scale artifacts in " << dir.string()
            << " (correlation pearson "
            << (corr.pearson ? format_double(*corr.pearson) : std::string("undefined")) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Maps of approval elections"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed for all randomness")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Sample elections from a culture");
  sample->add_option("--spec", o.spec_file, "Culture spec JSON file (overrides --kind and parameters)");
  sample->add_option("--kind", o.kind, "resampling|disjoint|noise|euclidean|urn|ic|id|empty|full")->capture_default_str();
  sample->add_option("--p", o.p)->capture_default_str();
  sample->add_option("--phi", o.phi)->capture_default_str();
  sample->add_option("--g", o.g)->capture_default_str();
  sample->add_option("--alpha", o.alpha)->capture_default_str();
  sample->add_option("--radius", o.radius)->capture_default_str();
  sample->add_option("--dim", o.dim)->capture_default_str();
  sample->add_option("--vote-distance", o.vote_distance, "hamming|jaccard")->capture_default_str();
  sample->add_option("--m", o.m)->capture_default_str();
  sample->add_option("--n", o.n)->capture_default_str();
  sample->add_option("--count", o.count)->capture_default_str();
  sample->add_option("--out-dir", o.out_dir, "Output directory (default $APMAP_OUT_DIR or .)");

  auto* ingest = app.add_subcommand("ingest", "Convert a Pabulib file, optionally subsampling");
  ingest->add_option("--input", o.input)->required();
  ingest->add_option("--label", o.label);
  ingest->add_option("--m-target", o.m_target, "Candidates to keep (0 = all)");
  ingest->add_option("--n-target", o.n_target, "Voters to keep (0 = all)");
  ingest->add_option("--out-dir", o.out_dir);

  auto* distance = app.add_subcommand("distance", "Pairwise distance matrix of a directory of elections");
  distance->add_option("--dir", o.dir)->required();
  distance->add_option("--metric", o.metric, "approvalwise|isomorphic_hamming")->capture_default_str();
  distance->add_option("--cap", o.cap, "Largest m for isomorphic Hamming")->capture_default_str();
  distance->add_option("--out", o.out);

  auto* stats = app.add_subcommand("stats", "Per-election statistics table");
  auto* stats_src = stats->add_option_group("source");
  stats_src->add_option("--dir", o.dir);
  stats_src->add_option("--manifest", o.manifest);
  stats_src->require_option(1);
  stats->add_option("--k", o.k)->capture_default_str();
  stats->add_option("--budget", o.budget, "PAV time budget per election (s)")->capture_default_str();
  stats->add_flag("--no-cohesiveness", o.no_cohesiveness);
  stats->add_option("--out", o.out);

  auto* embed_cmd = app.add_subcommand("embed", "Embed a distance matrix in the plane");
  embed_cmd->add_option("--matrix", o.matrix)->required();
  embed_cmd->add_option("--stats", o.stats, "Statistics CSV to attach");
  embed_cmd->add_option("--iterations", o.iterations)->capture_default_str();
  embed_cmd->add_option("--out", o.out);

  auto* map = app.add_subcommand("map", "Embed and render a map as SVG");
  map->add_option("--matrix", o.matrix)->required();
  map->add_option("--stats", o.stats);
  map->add_option("--color-by", o.color_by, "Statistic column or 'culture'")->capture_default_str();
  map->add_option("--palette", o.palette, "continuous|categorical");
  map->add_option("--radius", o.point_radius)->capture_default_str();
  map->add_option("--width", o.width)->capture_default_str();
  map->add_option("--height", o.height)->capture_default_str();
  map->add_flag("--no-legend", o.no_legend);
  map->add_option("--iterations", o.iterations)->capture_default_str();
  map->add_option("--coords", o.coords, "Coordinates CSV (default: next to the SVG)");
  map->add_option("--out", o.out);

  auto* correlate = app.add_subcommand("correlate", "Isomorphic Hamming vs approvalwise correlation study");
  correlate->add_option("--scale", o.scale, "desk|paper")->capture_default_str();
  correlate->add_option("--m", o.corr_m, "Candidates (desk scale)")->capture_default_str();
  correlate->add_option("--n", o.corr_n, "Voters (desk scale)")->capture_default_str();
  correlate->add_option("--cap", o.cap)->capture_default_str();
  correlate->add_flag("--expensive", o.expensive, "Allow the paper-scale run");
  correlate->add_option("--out", o.out);

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate all map and study artifacts");
  reproduce->add_flag("--expensive", o.expensive, "Full-size datasets (unbounded time)");
  reproduce->add_option("--k", o.k)->capture_default_str();
  reproduce->add_option("--budget", o.budget)->capture_default_str();
  reproduce->add_option("--iterations", o.iterations)->capture_default_str();
  reproduce->add_option("--out-dir", o.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sample) cmd_sample(o);
    if (*ingest) cmd_ingest(o);
    if (*distance) cmd_distance(o);
    if (*stats) cmd_stats(o);
    if (*embed_cmd) cmd_embed(o);
    if (*map) cmd_map(o);
    if (*correlate) cmd_correlate(o);
    if (*reproduce) cmd_reproduce(o);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
