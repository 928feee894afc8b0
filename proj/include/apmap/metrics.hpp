#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apmap/assignment.hpp"
#include "apmap/core.hpp"
#include "apmap/error.hpp"

namespace apmap {

// ---------------------------------------------------------------------------
// Approvalwise distance

inline double approvalwise_distance(const ApprovalwiseVector& x, const ApprovalwiseVector& y) {
  if (x.size() != y.size()) {
    throw DataError("approvalwise vectors of different length: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  }
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[i]);
  return d;
}

inline double approvalwise_distance(const Election& e, const Election& f) {
  if (e.m() != f.m()) {
    throw DataError("elections have different candidate counts: " + std::to_string(e.m()) +
                    " vs " + std::to_string(f.m()));
  }
  return approvalwise_distance(approvalwise_vector(e), approvalwise_vector(f));
}

// ---------------------------------------------------------------------------
// Closed forms for the (p, phi)-resampling grid

struct GridPoint {
  double p = 0.0;
  double phi = 0.0;
  std::size_t m = 1;
};

inline std::size_t approved_count(const GridPoint& gp) {
  const double pm = gp.p * static_cast<double>(gp.m);
  const double rounded = std::round(pm);
  if (gp.p < 0.0 || gp.p > 1.0 || std::abs(pm - rounded) > 1e-9) {
    throw DataError("analytic vector needs integral p*m (p = " + std::to_string(gp.p) +
                    ", m = " + std::to_string(gp.m) + ")");
  }
  return static_cast<std::size_t>(rounded);
}

// Limit approvalwise vector of (p, phi)-resampling elections: p*m entries of
// (1-phi)+phi*p followed by (1-p)*m entries of phi*p.
inline ApprovalwiseVector analytic_av(const GridPoint& gp) {
  const std::size_t approved = approved_count(gp);
  ApprovalwiseVector av;
  av.values.assign(gp.m, gp.phi * gp.p);
  std::fill_n(av.values.begin(), approved, (1.0 - gp.phi) + gp.phi * gp.p);
  return av;
}

inline double analytic_distance(const GridPoint& a, const GridPoint& b) {
  if (a.m != b.m) throw DataError("grid points with different m");
  approved_count(a);
  approved_count(b);
  const double m = static_cast<double>(a.m);
  if (a.phi == b.phi) return m * std::abs(a.p - b.p);
  if (a.p == b.p) return 2.0 * m * a.p * (1.0 - a.p) * std::abs(a.phi - b.phi);
  return approvalwise_distance(analytic_av(a), analytic_av(b));
}

// ---------------------------------------------------------------------------
// Isomorphic Hamming distance

inline constexpr std::size_t kDefaultIsomorphicCap = 10;

namespace detail {

// L1 distance between two multisets of scores under the best matching, which
// pairs them in sorted order.
inline std::int64_t sorted_l1(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

class IsomorphicHammingSearch {
 public:
  IsomorphicHammingSearch(const Election& e, const Election& f)
      : m_(e.m()), n_(e.n()), left_(masks(e)), right_(masks(f)) {
    const auto se = approval_scores(e);
    const auto sf = approval_scores(f);
    score_left_.assign(se.begin(), se.end());
    score_right_.assign(sf.begin(), sf.end());
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return score_left_[a] > score_left_[b]; });
    partial_.assign(n_ * n_, 0);
    used_.assign(m_, 0);
  }

  std::int64_t run() {
    best_ = greedy_upper_bound();
    search(0, 0);
    return best_;
  }

 private:
  static std::vector<std::uint64_t> masks(const Election& e) {
    std::vector<std::uint64_t> out;
    out.reserve(e.n());
    for (const Ballot& b : e.votes()) {
      std::uint64_t mask = 0;
      for (Candidate c : b) mask |= std::uint64_t{1} << c;
      out.push_back(mask);
    }
    return out;
  }

  // Total cost of the bijection that pairs candidates by sorted score.
  std::int64_t greedy_upper_bound() {
    std::vector<std::size_t> by_right(m_);
    std::iota(by_right.begin(), by_right.end(), 0);
    std::stable_sort(by_right.begin(), by_right.end(),
                     [&](std::size_t a, std::size_t b) { return score_right_[a] > score_right_[b]; });
    std::vector<std::size_t> sigma(m_);
    for (std::size_t d = 0; d < m_; ++d) sigma[order_[d]] = by_right[d];
    std::vector<std::int64_t> cost(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint64_t mapped = apply(left_[i], sigma);
      for (std::size_t j = 0; j < n_; ++j) cost[i * n_ + j] = std::popcount(mapped ^ right_[j]);
    }
    return min_cost_assignment(cost, n_).cost;
  }

  std::uint64_t apply(std::uint64_t mask, const std::vector<std::size_t>& sigma) const {
    std::uint64_t out = 0;
    for (std::size_t c = 0; c < m_; ++c) {
      if (mask >> c & 1) out |= std::uint64_t{1} << sigma[c];
    }
    return out;
  }

  // depth = number of mapped candidates; score_gap = sum of |score| gaps over them
  void search(std::size_t depth, std::int64_t score_gap) {
    std::vector<std::int64_t> rest_left;
    std::vector<std::int64_t> rest_right;
    for (std::size_t d = depth; d < m_; ++d) rest_left.push_back(score_left_[order_[d]]);
    for (std::size_t c = 0; c < m_; ++c) {
      if (!used_[c]) rest_right.push_back(score_right_[c]);
    }
    // every candidate column contributes at least its score gap
    if (score_gap + sorted_l1(rest_left, rest_right) >= best_) return;

    std::uint64_t unmapped_left = 0;
    std::uint64_t unmapped_right = 0;
    for (std::size_t d = depth; d < m_; ++d) unmapped_left |= std::uint64_t{1} << order_[d];
    for (std::size_t c = 0; c < m_; ++c) {
      if (!used_[c]) unmapped_right |= std::uint64_t{1} << c;
    }
    // each voter pair additionally pays at least the gap in unmapped approvals
    std::vector<std::int64_t> cost(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const int ri = std::popcount(left_[i] & unmapped_left);
      for (std::size_t j = 0; j < n_; ++j) {
        const int rj = std::popcount(right_[j] & unmapped_right);
        cost[i * n_ + j] = partial_[i * n_ + j] + std::abs(ri - rj);
      }
    }
    const std::int64_t bound = min_cost_assignment(cost, n_).cost;
    if (bound >= best_) return;
    if (depth == m_) {
      best_ = bound;
      return;
    }

    const std::size_t c = order_[depth];
    std::vector<std::size_t> choices;
    for (std::size_t t = 0; t < m_; ++t) {
      if (!used_[t]) choices.push_back(t);
    }
    std::stable_sort(choices.begin(), choices.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(score_left_[c] - score_right_[a]) < std::abs(score_left_[c] - score_right_[b]);
    });
    for (std::size_t t : choices) {
      used_[t] = 1;
      for (std::size_t i = 0; i < n_; ++i) {
        const bool a = left_[i] >> c & 1;
        for (std::size_t j = 0; j < n_; ++j) partial_[i * n_ + j] += a != static_cast<bool>(right_[j] >> t & 1);
      }
      search(depth + 1, score_gap + std::abs(score_left_[c] - score_right_[t]));
      for (std::size_t i = 0; i < n_; ++i) {
        const bool a = left_[i] >> c & 1;
        for (std::size_t j = 0; j < n_; ++j) partial_[i * n_ + j] -= a != static_cast<bool>(right_[j] >> t & 1);
      }
      used_[t] = 0;
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::uint64_t> left_;
  std::vector<std::uint64_t> right_;
  std::vector<std::int64_t> score_left_;
  std::vector<std::int64_t> score_right_;
  std::vector<std::size_t> order_;
  std::vector<std::int64_t> partial_;  // n x n Hamming over mapped candidates
  std::vector<char> used_;
  std::int64_t best_ = 0;
};

}  // namespace detail

// Minimum over candidate bijections and voter matchings of the summed ballot
// Hamming distance. Exact branch and bound over candidate bijections; refuses
// (CapExceeded) when m exceeds `cap`.
inline std::size_t isomorphic_hamming(const Election& e, const Election& f,
                                      std::size_t cap = kDefaultIsomorphicCap) {
  if (e.m() != f.m() || e.n() != f.n()) {
    throw DataError("isomorphic Hamming needs equal sizes: (" + std::to_string(e.m()) + "," +
                    std::to_string(e.n()) + ") vs (" + std::to_string(f.m()) + "," +
                    std::to_string(f.n()) + ")");
  }
  if (e.m() > cap || e.m() > 64) {
    throw CapExceeded("isomorphic Hamming is exact-only and capped at m = " +
                      std::to_string(std::min<std::size_t>(cap, 64)) + " (got m = " +
                      std::to_string(e.m()) + ")");
  }
  return static_cast<std::size_t>(detail::IsomorphicHammingSearch(e, f).run());
}

// ---------------------------------------------------------------------------
// Distance matrices

enum class Metric { Approvalwise, IsomorphicHamming };

inline std::string to_string(Metric m) {
  return m == Metric::Approvalwise ? "approvalwise" : "isomorphic_hamming";
}

inline Metric metric_from_string(const std::string& s) {
  if (s == "approvalwise") return Metric::Approvalwise;
  if (s == "isomorphic_hamming" || s == "hamming") return Metric::IsomorphicHamming;
  throw DataError("unknown metric '" + s + "'");
}

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> labels)
      : labels_(std::move(labels)), d_(labels_.size() * labels_.size(), 0.0) {}

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double operator()(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * size() + j] = value;
    d_[j * size() + i] = value;
  }
  double max() const { return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end()); }

  void validate() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if ((*this)(i, i) != 0.0) throw DataError("distance matrix has nonzero diagonal at " + labels_[i]);
      for (std::size_t j = 0; j < i; ++j) {
        const double x = (*this)(i, j);
        if (x != (*this)(j, i)) throw DataError("distance matrix is not symmetric");
        if (!(x >= 0.0) || !std::isfinite(x)) throw DataError("distance matrix has invalid entry");
      }
    }
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> d_;
};

inline std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

inline void check_label(const std::string& label) {
  if (label.empty() || label.find_first_of(",\n\r\"") != std::string::npos) {
    throw DataError("label '" + label + "' must be non-empty and free of commas, quotes and newlines");
  }
}

}  // namespace detail

// CSV: header "label,<l_1>,...,<l_n>", then one row per label.
inline std::string to_csv(const DistanceMatrix& dm) {
  std::string out = "label";
  for (const auto& l : dm.labels()) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < dm.size(); ++i) {
    out += dm.labels()[i];
    for (std::size_t j = 0; j < dm.size(); ++j) out += "," + format_double(dm(i, j));
    out += "\n";
  }
  return out;
}

inline DistanceMatrix distance_matrix_from_csv(std::string_view text) {
  const auto rows = detail::lines(text);
  if (rows.empty()) throw ParseError(1, "empty distance matrix");
  const auto header = detail::split(rows[0], ',');
  if (header.empty() || header[0] != "label") throw ParseError(1, "header must start with 'label'");
  std::vector<std::string> labels(header.begin() + 1, header.end());
  if (rows.size() != labels.size() + 1) {
    throw ParseError(rows.size(), "expected " + std::to_string(labels.size()) + " rows");
  }
  DistanceMatrix dm(labels);
  std::vector<double> values(labels.size() * labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto cells = detail::split(rows[i + 1], ',');
    if (cells.size() != labels.size() + 1 || cells[0] != labels[i]) {
      throw ParseError(i + 2, "row must start with label '" + labels[i] + "' and have " +
                                  std::to_string(labels.size()) + " values");
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto cell = cells[j + 1];
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError(i + 2, "bad number '" + std::string(cell) + "'");
      }
      values[i * labels.size() + j] = x;
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (values[i * labels.size() + j] != values[j * labels.size() + i]) {
        throw DataError("distance matrix is not symmetric at (" + labels[i] + "," + labels[j] + ")");
      }
      if (i < j) dm.set(i, j, values[i * labels.size() + j]);
    }
    if (values[i * labels.size() + i] != 0.0) throw DataError("nonzero diagonal at " + labels[i]);
  }
  dm.validate();
  return dm;
}

inline nlohmann::json to_json(const DistanceMatrix& dm) {
  std::vector<std::vector<double>> rows(dm.size(), std::vector<double>(dm.size()));
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) rows[i][j] = dm(i, j);
  }
  return nlohmann::json{{"labels", dm.labels()}, {"d", rows}};
}

inline DistanceMatrix distance_matrix_from_json(const nlohmann::json& j) {
  try {
    DistanceMatrix dm(j.at("labels").get<std::vector<std::string>>());
    const auto rows = j.at("d").get<std::vector<std::vector<double>>>();
    if (rows.size() != dm.size()) throw DataError("distance matrix rows do not match labels");
    for (std::size_t i = 0; i < dm.size(); ++i) {
      if (rows[i].size() != dm.size()) throw DataError("distance matrix row has wrong length");
      for (std::size_t j2 = 0; j2 < i; ++j2) {
        if (rows[i][j2] != rows[j2][i]) throw DataError("distance matrix is not symmetric");
        dm.set(i, j2, rows[i][j2]);
      }
      if (rows[i][i] != 0.0) throw DataError("distance matrix has nonzero diagonal");
    }
    dm.validate();
    return dm;
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("distance matrix json: ") + err.what());
  }
}

// All pairwise distances. Element errors are rethrown with the pair's labels.
inline DistanceMatrix pairwise_distances(std::span<const Election> elections,
                                         std::vector<std::string> labels, Metric metric,
                                         std::size_t isomorphic_cap = kDefaultIsomorphicCap) {
  if (labels.size() != elections.size()) throw DataError("need one label per election");
  for (const auto& l : labels) detail::check_label(l);
  DistanceMatrix dm(std::move(labels));
  if (metric == Metric::Approvalwise) {
    std::vector<ApprovalwiseVector> avs;
    avs.reserve(elections.size());
    for (const auto& e : elections) avs.push_back(approvalwise_vector(e));
    for (std::size_t i = 0; i < elections.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (elections[i].m() != elections[j].m()) {
          throw DataError("pair (" + dm.labels()[j] + ", " + dm.labels()[i] + "): different candidate counts");
        }
        dm.set(i, j, approvalwise_distance(avs[i], avs[j]));
      }
    }
    return dm;
  }
  for (std::size_t i = 0; i < elections.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const std::string where = "pair (" + dm.labels()[j] + ", " + dm.labels()[i] + "): ";
      try {
        dm.set(i, j, static_cast<double>(isomorphic_hamming(elections[i], elections[j], isomorphic_cap)));
      } catch (const CapExceeded& err) {
        throw CapExceeded(where + err.what());
      } catch (const DataError& err) {
        throw DataError(where + err.what());
      }
    }
  }
  return dm;
}

}  // namespace apmap
