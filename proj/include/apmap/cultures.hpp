#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "apmap/core.hpp"
#include "apmap/rng.hpp"

namespace apmap {

enum class CultureKind { Resampling, Disjoint, Noise, Euclidean, Urn, IC, ID, Empty, Full };
enum class VoteDistance { Hamming, Jaccard };

inline std::string to_string(CultureKind k) {
  switch (k) {
    case CultureKind::Resampling: return "resampling";
    case CultureKind::Disjoint: return "disjoint";
    case CultureKind::Noise: return "noise";
    case CultureKind::Euclidean: return "euclidean";
    case CultureKind::Urn: return "urn";
    case CultureKind::IC: return "ic";
    case CultureKind::ID: return "id";
    case CultureKind::Empty: return "empty";
    case CultureKind::Full: return "full";
  }
  return "unknown";
}

inline CultureKind culture_kind_from_string(const std::string& s) {
  for (auto k : {CultureKind::Resampling, CultureKind::Disjoint, CultureKind::Noise,
                 CultureKind::Euclidean, CultureKind::Urn, CultureKind::IC, CultureKind::ID,
                 CultureKind::Empty, CultureKind::Full}) {
    if (to_string(k) == s) return k;
  }
  throw DataError("unknown culture kind '" + s + "'");
}

inline std::string to_string(VoteDistance d) {
  return d == VoteDistance::Hamming ? "hamming" : "jaccard";
}

inline VoteDistance vote_distance_from_string(const std::string& s) {
  if (s == "hamming") return VoteDistance::Hamming;
  if (s == "jaccard") return VoteDistance::Jaccard;
  throw DataError("unknown vote distance '" + s + "'");
}

// One statistical culture with its parameters. Only the fields relevant to
// `kind` are meaningful; validate() checks them.
struct CultureSpec {
  CultureKind kind = CultureKind::Resampling;
  double p = 0.5;
  double phi = 0.5;
  std::size_t g = 1;
  double alpha = 0.0;
  double radius = 0.1;
  int dim = 1;
  VoteDistance vote_distance = VoteDistance::Hamming;

  static CultureSpec resampling(double p, double phi) { return {.kind = CultureKind::Resampling, .p = p, .phi = phi}; }
  static CultureSpec disjoint(double p, double phi, std::size_t g) {
    return {.kind = CultureKind::Disjoint, .p = p, .phi = phi, .g = g};
  }
  static CultureSpec noise(double p, double phi, VoteDistance d = VoteDistance::Hamming) {
    return {.kind = CultureKind::Noise, .p = p, .phi = phi, .vote_distance = d};
  }
  static CultureSpec euclidean(int dim, double radius) {
    return {.kind = CultureKind::Euclidean, .radius = radius, .dim = dim};
  }
  static CultureSpec urn(double p, double alpha) { return {.kind = CultureKind::Urn, .p = p, .alpha = alpha}; }
  static CultureSpec ic(double p) { return {.kind = CultureKind::IC, .p = p}; }
  static CultureSpec id(double p) { return {.kind = CultureKind::ID, .p = p}; }
  static CultureSpec empty() { return {.kind = CultureKind::Empty}; }
  static CultureSpec full() { return {.kind = CultureKind::Full}; }

  bool uses_p() const {
    return kind != CultureKind::Euclidean && kind != CultureKind::Empty && kind != CultureKind::Full;
  }
  bool uses_phi() const {
    return kind == CultureKind::Resampling || kind == CultureKind::Disjoint || kind == CultureKind::Noise;
  }

  void validate() const {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (uses_p() && !unit(p)) throw DataError("p must lie in [0,1]");
    if (uses_phi() && !unit(phi)) throw DataError("phi must lie in [0,1]");
    if (kind == CultureKind::Disjoint && g < 1) throw DataError("g must be at least 1");
    if (kind == CultureKind::Urn && !(alpha >= 0.0)) throw DataError("alpha must be non-negative");
    if (kind == CultureKind::Euclidean) {
      if (dim != 1 && dim != 2) throw DataError("dim must be 1 or 2");
      if (!(radius > 0.0)) throw DataError("radius must be positive");
    }
  }

  friend bool operator==(const CultureSpec&, const CultureSpec&) = default;
};

inline nlohmann::json to_json(const CultureSpec& s) {
  nlohmann::json j{{"kind", to_string(s.kind)}};
  if (s.uses_p()) j["p"] = s.p;
  if (s.uses_phi()) j["phi"] = s.phi;
  if (s.kind == CultureKind::Disjoint) j["g"] = s.g;
  if (s.kind == CultureKind::Urn) j["alpha"] = s.alpha;
  if (s.kind == CultureKind::Euclidean) {
    j["radius"] = s.radius;
    j["dim"] = s.dim;
  }
  if (s.kind == CultureKind::Noise) j["vote_distance"] = to_string(s.vote_distance);
  return j;
}

inline CultureSpec culture_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("culture spec must be a JSON object");
  CultureSpec s;
  try {
    s.kind = culture_kind_from_string(j.at("kind").get<std::string>());
    const nlohmann::json expected = to_json(s);
    for (const auto& [key, value] : j.items()) {
      if (!expected.contains(key)) {
        throw DataError("parameter '" + key + "' does not apply to culture " + to_string(s.kind));
      }
    }
    for (const auto& [key, value] : expected.items()) {
      if (key != "vote_distance" && !j.contains(key)) {
        throw DataError("culture " + to_string(s.kind) + " requires parameter '" + key + "'");
      }
    }
    if (j.contains("p")) s.p = j["p"].get<double>();
    if (j.contains("phi")) s.phi = j["phi"].get<double>();
    if (j.contains("g")) s.g = j["g"].get<std::size_t>();
    if (j.contains("alpha")) s.alpha = j["alpha"].get<double>();
    if (j.contains("radius")) s.radius = j["radius"].get<double>();
    if (j.contains("dim")) s.dim = j["dim"].get<int>();
    if (j.contains("vote_distance")) {
      s.vote_distance = vote_distance_from_string(j["vote_distance"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("culture spec: ") + err.what());
  }
  s.validate();
  return s;
}

// floor(p*m) and ceil(p*m), robust to representation error in p
// (0.29 * 100 must give 29, not 28).
inline std::size_t floor_pm(double p, std::size_t m) {
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(m) + 1e-9));
}
inline std::size_t ceil_pm(double p, std::size_t m) {
  return static_cast<std::size_t>(std::ceil(p * static_cast<double>(m) - 1e-9));
}

namespace detail {

inline Ballot resample_ballot(const std::vector<char>& central, double p, double phi, Rng& rng) {
  Ballot b;
  for (std::size_t c = 0; c < central.size(); ++c) {
    bool approved = central[c] != 0;
    if (rng.bernoulli(phi)) approved = rng.bernoulli(p);
    if (approved) b.push_back(static_cast<Candidate>(c));
  }
  return b;
}

inline std::vector<char> indicator(std::size_t m, const Ballot& b) {
  std::vector<char> ind(m, 0);
  for (Candidate c : b) ind[c] = 1;
  return ind;
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r < 1e15 ? std::round(r) : r;
}

}  // namespace detail

// Central ballot: floor(p*m) candidates drawn uniformly.
inline Ballot central_ballot(std::size_t m, double p, Rng& rng) {
  return rng.subset(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(floor_pm(p, m)));
}

inline Election sample_resampling(std::size_t m, std::size_t n, double p, double phi, std::uint64_t seed) {
  CultureSpec::resampling(p, phi).validate();
  Rng rng(seed);
  const auto central = detail::indicator(m, central_ballot(m, p, rng));
  std::vector<Ballot> votes;
  votes.reserve(n);
  for (std::size_t v = 0; v < n; ++v) votes.push_back(detail::resample_ballot(central, p, phi, rng));
  return Election(m, std::move(votes));
}

// Uniform random partition of 0..m-1 into g non-empty groups: every candidate
// takes a uniform group, redrawn until no group is empty.
inline std::vector<Ballot> random_partition(std::size_t m, std::size_t g, Rng& rng) {
  if (g < 1 || g > m) throw DataError("need 1 <= g <= m for a partition into g groups");
  std::vector<std::size_t> group(m);
  if (g == m) {
    // every surjection is a bijection; a shuffle is the uniform one
    for (std::size_t c = 0; c < m; ++c) group[c] = c;
    rng.shuffle(std::span<std::size_t>(group));
  } else {
    std::vector<std::size_t> sizes(g);
    do {
      std::fill(sizes.begin(), sizes.end(), 0);
      for (std::size_t c = 0; c < m; ++c) {
        group[c] = rng.below(g);
        ++sizes[group[c]];
      }
    } while (std::find(sizes.begin(), sizes.end(), 0) != sizes.end());
  }
  std::vector<Ballot> parts(g);
  for (std::size_t c = 0; c < m; ++c) parts[group[c]].push_back(static_cast<Candidate>(c));
  return parts;
}

inline Election sample_disjoint(std::size_t m, std::size_t n, double p, double phi, std::size_t g,
                                std::uint64_t seed) {
  CultureSpec::disjoint(p, phi, g).validate();
  if (g > m) throw DataError("disjoint model needs g <= m");
  Rng rng(seed);
  std::vector<std::vector<char>> centrals;
  for (const Ballot& part : random_partition(m, g, rng)) centrals.push_back(detail::indicator(m, part));
  std::vector<Ballot> votes;
  votes.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& central = centrals[rng.below(g)];
    votes.push_back(detail::resample_ballot(central, p, phi, rng));
  }
  return Election(m, std::move(votes));
}

// Distance between the central ballot (size z) and a ballot keeping x of its
// members and adding y outsiders.
inline double noise_distance(std::size_t x, std::size_t y, std::size_t z, VoteDistance d) {
  const double ham = static_cast<double>(z - x + y);
  if (d == VoteDistance::Hamming) return ham;
  const std::size_t uni = z + y;
  return uni == 0 ? 0.0 : ham / static_cast<double>(uni);
}

// Unnormalized probability mass of all ballots with x central and y
// non-central approvals: C(z,x) C(m-z,y) phi^d, with 0^0 = 1.
inline double noise_weight(std::size_t x, std::size_t y, std::size_t z, std::size_t m, double phi,
                           VoteDistance d) {
  if (z > m || x > z || y > m - z) throw DataError("noise_weight: (x, y, z) out of range");
  return detail::binomial(z, x) * detail::binomial(m - z, y) * std::pow(phi, noise_distance(x, y, z, d));
}

// Row-major table of noise_weight over x in [0,z], y in [0,m-z].
inline std::vector<double> noise_weight_table(std::size_t z, std::size_t m, double phi, VoteDistance d) {
  std::vector<double> w;
  w.reserve((z + 1) * (m - z + 1));
  for (std::size_t x = 0; x <= z; ++x) {
    for (std::size_t y = 0; y <= m - z; ++y) w.push_back(noise_weight(x, y, z, m, phi, d));
  }
  return w;
}

inline Election sample_noise(std::size_t m, std::size_t n, double p, double phi, VoteDistance d,
                             std::uint64_t seed) {
  CultureSpec::noise(p, phi, d).validate();
  Rng rng(seed);
  const Ballot central = central_ballot(m, p, rng);
  const std::size_t z = central.size();
  Ballot outside;
  {
    const auto ind = detail::indicator(m, central);
    for (std::size_t c = 0; c < m; ++c) {
      if (!ind[c]) outside.push_back(static_cast<Candidate>(c));
    }
  }
  const auto weights = noise_weight_table(z, m, phi, d);
  const std::size_t row = m - z + 1;
  std::vector<Ballot> votes;
  votes.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t cell = rng.weighted(weights);
    const std::size_t x = cell / row;
    const std::size_t y = cell % row;
    Ballot b;
    for (auto i : rng.subset(static_cast<std::uint32_t>(z), static_cast<std::uint32_t>(x))) b.push_back(central[i]);
    for (auto i : rng.subset(static_cast<std::uint32_t>(m - z), static_cast<std::uint32_t>(y))) b.push_back(outside[i]);
    votes.push_back(std::move(b));
  }
  return Election(m, std::move(votes));
}

inline Election sample_euclidean(std::size_t m, std::size_t n, int dim, double radius, std::uint64_t seed) {
  CultureSpec::euclidean(dim, radius).validate();
  Rng rng(seed);
  const auto d = static_cast<std::size_t>(dim);
  std::vector<double> cand(m * d);
  std::vector<double> voter(n * d);
  for (double& x : cand) x = rng.uniform();
  for (double& x : voter) x = rng.uniform();
  std::vector<Ballot> votes(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c = 0; c < m; ++c) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = voter[v * d + k] - cand[c * d + k];
        sq += diff * diff;
      }
      if (std::sqrt(sq) <= radius) votes[v].push_back(static_cast<Candidate>(c));
    }
  }
  return Election(m, std::move(votes));
}

// Truncated Polya-Eggenberger urn. The t-th draw (from 0) is a fresh uniform
// order with probability 1/(1 + t*alpha), otherwise a copy of a uniformly
// chosen earlier draw. Only the top ceil(p*m) prefix of each order matters.
inline Election sample_urn(std::size_t m, std::size_t n, double p, double alpha, std::uint64_t seed) {
  CultureSpec::urn(p, alpha).validate();
  Rng rng(seed);
  const auto size = static_cast<std::uint32_t>(ceil_pm(p, m));
  std::vector<Ballot> votes;
  votes.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double fresh = 1.0 / (1.0 + static_cast<double>(t) * alpha);
    if (t == 0 || rng.bernoulli(fresh)) {
      votes.push_back(rng.subset(static_cast<std::uint32_t>(m), size));
    } else {
      votes.push_back(votes[rng.below(t)]);
    }
  }
  return Election(m, std::move(votes));
}

enum class Extreme { Empty, Full, PId, PIc };

inline Election make_extreme(std::size_t m, std::size_t n, Extreme which, double p, std::uint64_t seed) {
  switch (which) {
    case Extreme::Empty: return Election(m, std::vector<Ballot>(n));
    case Extreme::Full: {
      Ballot all(m);
      for (std::size_t c = 0; c < m; ++c) all[c] = static_cast<Candidate>(c);
      return Election(m, std::vector<Ballot>(n, all));
    }
    case Extreme::PId: return sample_resampling(m, n, p, 0.0, seed);
    case Extreme::PIc: return sample_resampling(m, n, p, 1.0, seed);
  }
  throw DataError("unknown extreme election");
}

inline Election sample(const CultureSpec& spec, std::size_t m, std::size_t n, std::uint64_t seed) {
  spec.validate();
  switch (spec.kind) {
    case CultureKind::Resampling: return sample_resampling(m, n, spec.p, spec.phi, seed);
    case CultureKind::Disjoint: return sample_disjoint(m, n, spec.p, spec.phi, spec.g, seed);
    case CultureKind::Noise: return sample_noise(m, n, spec.p, spec.phi, spec.vote_distance, seed);
    case CultureKind::Euclidean: return sample_euclidean(m, n, spec.dim, spec.radius, seed);
    case CultureKind::Urn: return sample_urn(m, n, spec.p, spec.alpha, seed);
    case CultureKind::IC: return make_extreme(m, n, Extreme::PIc, spec.p, seed);
    case CultureKind::ID: return make_extreme(m, n, Extreme::PId, spec.p, seed);
    case CultureKind::Empty: return make_extreme(m, n, Extreme::Empty, 0.0, seed);
    case CultureKind::Full: return make_extreme(m, n, Extreme::Full, 1.0, seed);
  }
  throw DataError("unknown culture");
}

// t values strictly inside (a, b): a + i(b-a)/(t+1) for i = 1..t.
inline std::vector<double> interior_points(double a, double b, std::size_t t) {
  std::vector<double> out;
  out.reserve(t);
  for (std::size_t i = 1; i <= t; ++i) {
    out.push_back(a + static_cast<double>(i) * (b - a) / static_cast<double>(t + 1));
  }
  return out;
}

}  // namespace apmap
