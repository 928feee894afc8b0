#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "apmap/core.hpp"
#include "apmap/error.hpp"

namespace apmap {

// Sorted list of k distinct candidates.
using Committee = std::vector<Candidate>;

inline void check_committee_size(const Election& e, std::size_t k) {
  if (k < 1 || k > e.m()) {
    throw DataError("committee size k = " + std::to_string(k) + " must lie in [1, " +
                    std::to_string(e.m()) + "]");
  }
}

// ---------------------------------------------------------------------------
// AV

inline constexpr std::size_t kDefaultTieLimit = 10000;

// Every committee maximizing the total approval score, in lexicographic order.
inline std::vector<Committee> av_committees(const Election& e, std::size_t k,
                                            std::size_t tie_limit = kDefaultTieLimit) {
  check_committee_size(e, k);
  const auto scores = approval_scores(e);
  auto sorted = scores;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t threshold = sorted[k - 1];

  Committee sure;
  std::vector<Candidate> tied;
  for (std::size_t c = 0; c < e.m(); ++c) {
    if (scores[c] > threshold) sure.push_back(static_cast<Candidate>(c));
    if (scores[c] == threshold) tied.push_back(static_cast<Candidate>(c));
  }
  const std::size_t need = k - sure.size();

  // C(tied, need) with early exit past the limit
  double count = 1.0;
  for (std::size_t i = 1; i <= need; ++i) {
    count = count * static_cast<double>(tied.size() - need + i) / static_cast<double>(i);
  }
  if (std::round(count) > static_cast<double>(tie_limit)) {
    throw CapExceeded("AV has " + std::to_string(static_cast<long long>(std::round(count))) +
                      " tied committees, above the limit of " + std::to_string(tie_limit));
  }

  std::vector<Committee> out;
  std::vector<std::size_t> pick(need);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Committee w = sure;
    for (std::size_t i : pick) w.push_back(tied[i]);
    std::sort(w.begin(), w.end());
    out.push_back(std::move(w));
    // next combination in lexicographic order
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == tied.size() - need + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// PAV scores as exact rationals

// Harmonic weights scaled to integers: weight(j) = lcm(1..k) / j.
class HarmonicScale {
 public:
  explicit HarmonicScale(std::size_t k) : weights_(k + 1, 0) {
    std::int64_t l = 1;
    for (std::size_t j = 1; j <= k; ++j) {
      l = std::lcm(l, static_cast<std::int64_t>(j));
      if (l > (std::int64_t{1} << 48)) throw CapExceeded("committee size too large for exact PAV scores");
    }
    lcm_ = l;
    for (std::size_t j = 1; j <= k; ++j) weights_[j] = lcm_ / static_cast<std::int64_t>(j);
  }

  std::int64_t denominator() const noexcept { return lcm_; }
  std::size_t k() const noexcept { return weights_.size() - 1; }
  // scaled 1/j
  std::int64_t weight(std::size_t j) const { return weights_[j]; }

  // scaled h(x) = 1 + 1/2 + ... + 1/x
  std::int64_t harmonic(std::size_t x) const {
    std::int64_t h = 0;
    for (std::size_t j = 1; j <= x; ++j) h += weights_[j];
    return h;
  }

 private:
  std::int64_t lcm_ = 1;
  std::vector<std::int64_t> weights_;
};

// Reduced fraction numerator / denominator.
struct PavScore {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  static PavScore reduced(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? PavScore{0, 1} : PavScore{num / g, den / g};
  }
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const PavScore&, const PavScore&) = default;
};

namespace detail {

inline void check_committee(const Election& e, const Committee& w) {
  if (!std::is_sorted(w.begin(), w.end()) || std::adjacent_find(w.begin(), w.end()) != w.end()) {
    throw DataError("committee must be a sorted list of distinct candidates");
  }
  if (!w.empty() && w.back() >= e.m()) throw DataError("committee member out of range");
}

inline std::int64_t scaled_pav(const Election& e, const std::vector<char>& member, const HarmonicScale& h) {
  std::int64_t total = 0;
  for (const Ballot& b : e.votes()) {
    std::size_t hits = 0;
    for (Candidate c : b) hits += member[c] ? 1 : 0;
    total += h.harmonic(hits);
  }
  return total;
}

}  // namespace detail

inline PavScore pav_score(const Election& e, const Committee& w) {
  detail::check_committee(e, w);
  if (w.empty()) return {0, 1};
  const HarmonicScale h(w.size());
  std::vector<char> member(e.m(), 0);
  for (Candidate c : w) member[c] = 1;
  return PavScore::reduced(detail::scaled_pav(e, member, h), h.denominator());
}

// ---------------------------------------------------------------------------
// Exact PAV

struct PavResult {
  Committee committee;
  PavScore score;
  double seconds = 0.0;
  bool optimal = true;     // false when the time budget ran out
  double gap = 0.0;        // upper bound minus incumbent score (0 when optimal)
  std::size_t nodes = 0;
};

namespace detail {

// Branch and bound over candidate in/out decisions. Bounds come from the
// Lagrangian relaxation of the standard PAV integer program: relaxing
// "voter v has at least j winners only if j of its candidates win" with one
// multiplier per voter splits the problem into a per-voter part and a
// top-r selection of candidates by summed multipliers. Subgradient steps
// tighten the multipliers; children start from the parent's multipliers.
class PavSolver {
 public:
  PavSolver(const Election& e, std::size_t k, double budget_seconds)
      : e_(e), k_(k), scale_(k), budget_(budget_seconds) {
    const std::size_t m = e.m();
    const std::size_t n = e.n();
    approvers_.resize(m);
    for (std::size_t v = 0; v < n; ++v) {
      for (Candidate c : e.vote(v)) approvers_[c].push_back(static_cast<std::uint32_t>(v));
    }
    weight_.resize(k + 2, 0.0);
    for (std::size_t j = 1; j <= k; ++j) weight_[j] = static_cast<double>(scale_.weight(j));
    state_.assign(m, Free);
    count_.assign(n, 0);
    free_approved_.resize(n);
    for (std::size_t v = 0; v < n; ++v) free_approved_[v] = static_cast<std::uint32_t>(e.vote(v).size());
    free_count_ = m;
    remaining_ = k;
    lambda_.assign(n, 0.0);
    profit_.assign(m, 0.0);
    const double max_total = static_cast<double>(n) * static_cast<double>(scale_.harmonic(k));
    if (max_total > 1e15) throw CapExceeded("election too large for exact PAV scores");
  }

  PavResult solve() {
    start_ = std::chrono::steady_clock::now();
    greedy_incumbent();
    for (std::size_t v = 0; v < e_.n(); ++v) lambda_[v] = initial_multiplier(v);
    root_bound_ = std::numeric_limits<double>::infinity();
    search(0);

    PavResult result;
    result.committee = best_;
    result.score = PavScore::reduced(best_score_, scale_.denominator());
    result.seconds = elapsed();
    result.optimal = !timed_out_;
    result.nodes = nodes_;
    if (timed_out_ && std::isfinite(root_bound_)) {
      result.gap = std::max(0.0, (root_bound_ - static_cast<double>(best_score_)) /
                                     static_cast<double>(scale_.denominator()));
    }
    return result;
  }

 private:
  enum State : char { Free, In, Out };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  double tolerance(double ub) const { return 1e-3 + 1e-10 * std::abs(ub); }

  std::int64_t score_of(const std::vector<char>& member) const {
    return scaled_pav(e_, member, scale_);
  }

  void offer(const std::vector<char>& member) {
    const std::int64_t s = score_of(member);
    if (s > best_score_ || best_.empty()) {
      best_score_ = s;
      best_.clear();
      for (std::size_t c = 0; c < member.size(); ++c) {
        if (member[c]) best_.push_back(static_cast<Candidate>(c));
      }
    }
  }

  // Sequential PAV followed by single-swap local search.
  void greedy_incumbent() {
    const std::size_t m = e_.m();
    std::vector<char> member(m, 0);
    std::vector<std::size_t> hits(e_.n(), 0);
    for (std::size_t round = 0; round < k_; ++round) {
      std::int64_t best_gain = -1;
      std::size_t pick = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (member[c]) continue;
        std::int64_t gain = 0;
        for (auto v : approvers_[c]) gain += scale_.weight(hits[v] + 1);
        if (gain > best_gain) {
          best_gain = gain;
          pick = c;
        }
      }
      member[pick] = 1;
      for (auto v : approvers_[pick]) ++hits[v];
    }
    std::int64_t current = score_of(member);
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t out = 0; out < m && !improved; ++out) {
        if (!member[out]) continue;
        for (std::size_t in = 0; in < m && !improved; ++in) {
          if (member[in]) continue;
          member[out] = 0;
          member[in] = 1;
          const std::int64_t s = score_of(member);
          if (s > current) {
            current = s;
            improved = true;
          } else {
            member[out] = 1;
            member[in] = 0;
          }
        }
      }
    }
    offer(member);
  }

  // Marginal weight voter v would see if free candidates were split evenly.
  double initial_multiplier(std::size_t v) const {
    if (free_count_ == 0 || remaining_ == 0) return 0.0;
    const double share = static_cast<double>(free_approved_[v]) * static_cast<double>(remaining_) /
                         static_cast<double>(free_count_);
    const std::size_t level = count_[v] + static_cast<std::size_t>(std::ceil(share));
    return level >= 1 && level <= k_ ? weight_[level] : 0.0;
  }

  struct Bound {
    double value = 0.0;
    std::vector<std::uint32_t> top;  // free candidates ranked by profit, best first
  };

  // Upper bound for the current node at multipliers lambda_; fills profit_.
  Bound evaluate_bound(std::vector<std::uint32_t>& ranked) {
    double per_voter = 0.0;
    for (std::size_t v = 0; v < e_.n(); ++v) {
      const std::size_t last = count_[v] + std::min<std::size_t>(free_approved_[v], remaining_);
      for (std::size_t j = count_[v] + 1; j <= last; ++j) {
        const double gain = weight_[j] - lambda_[v];
        if (gain <= 0.0) break;  // weights decrease in j
        per_voter += gain;
      }
    }
    ranked.clear();
    for (std::size_t c = 0; c < e_.m(); ++c) {
      if (state_[c] != Free) continue;
      double p = 0.0;
      for (auto v : approvers_[c]) p += lambda_[v];
      profit_[c] = p;
      ranked.push_back(static_cast<std::uint32_t>(c));
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min(ranked.size(), remaining_ + 1)),
                      ranked.end(), [&](std::uint32_t a, std::uint32_t b) {
                        return profit_[a] != profit_[b] ? profit_[a] > profit_[b] : a < b;
                      });
    double selection = 0.0;
    for (std::size_t i = 0; i < remaining_; ++i) selection += profit_[ranked[i]];
    Bound b;
    b.value = static_cast<double>(current_score_) + per_voter + selection;
    return b;
  }

  // Subgradient descent on the multipliers; leaves lambda_ at the best point.
  double tighten(std::size_t iterations, std::vector<std::uint32_t>& ranked) {
    std::vector<double> best_lambda = lambda_;
    double best = evaluate_bound(ranked).value;
    double theta = 1.0;
    std::size_t stall = 0;
    std::vector<double> grad(e_.n());
    for (std::size_t it = 0; it < iterations; ++it) {
      const double target = static_cast<double>(best_score_);
      if (best < target + 1.0 - tolerance(best)) break;
      double norm = 0.0;
      for (std::size_t v = 0; v < e_.n(); ++v) {
        const std::size_t last = count_[v] + std::min<std::size_t>(free_approved_[v], remaining_);
        double active = 0.0;
        for (std::size_t j = count_[v] + 1; j <= last; ++j) {
          if (weight_[j] > lambda_[v]) active += 1.0;
        }
        grad[v] = -active;
      }
      for (std::size_t i = 0; i < remaining_; ++i) {
        for (auto v : approvers_[ranked[i]]) grad[v] += 1.0;
      }
      for (std::size_t v = 0; v < e_.n(); ++v) {
        // projected direction
        if (lambda_[v] <= 0.0 && grad[v] > 0.0) grad[v] = 0.0;
        norm += grad[v] * grad[v];
      }
      if (norm == 0.0) break;
      const double step = theta * (best - target) / norm;
      for (std::size_t v = 0; v < e_.n(); ++v) lambda_[v] = std::max(0.0, lambda_[v] - step * grad[v]);
      const double value = evaluate_bound(ranked).value;
      if (value < best - 1e-9 * std::abs(best)) {
        best = value;
        best_lambda = lambda_;
        stall = 0;
      } else if (++stall >= 3) {
        theta *= 0.5;
        stall = 0;
      }
    }
    lambda_ = best_lambda;
    evaluate_bound(ranked);
    return best;
  }

  void include(std::size_t c, std::vector<std::uint32_t>& trail) {
    state_[c] = In;
    --free_count_;
    --remaining_;
    for (auto v : approvers_[c]) {
      ++count_[v];
      --free_approved_[v];
      current_score_ += scale_.weight(count_[v]);
    }
    trail.push_back(static_cast<std::uint32_t>(c));
  }

  void exclude(std::size_t c, std::vector<std::uint32_t>& trail) {
    state_[c] = Out;
    --free_count_;
    for (auto v : approvers_[c]) --free_approved_[v];
    trail.push_back(static_cast<std::uint32_t>(c));
  }

  void undo(std::vector<std::uint32_t>& trail) {
    while (!trail.empty()) {
      const std::size_t c = trail.back();
      trail.pop_back();
      if (state_[c] == In) {
        for (auto v : approvers_[c]) {
          current_score_ -= scale_.weight(count_[v]);
          --count_[v];
          ++free_approved_[v];
        }
        ++remaining_;
      } else {
        for (auto v : approvers_[c]) ++free_approved_[v];
      }
      state_[c] = Free;
      ++free_count_;
    }
  }

  std::vector<char> completion(const std::vector<std::uint32_t>& ranked) const {
    std::vector<char> member(e_.m(), 0);
    for (std::size_t c = 0; c < e_.m(); ++c) member[c] = state_[c] == In;
    for (std::size_t i = 0; i < remaining_; ++i) member[ranked[i]] = 1;
    return member;
  }

  void search(std::size_t depth) {
    if (timed_out_) return;
    if (++nodes_ % 64 == 0 && elapsed() > budget_) {
      timed_out_ = true;
      return;
    }
    std::vector<std::uint32_t> trail;
    std::vector<std::uint32_t> ranked;
    const std::vector<double> saved_lambda = lambda_;

    while (true) {
      if (remaining_ == 0 || free_count_ == remaining_) {
        std::vector<char> member(e_.m(), 0);
        for (std::size_t c = 0; c < e_.m(); ++c) member[c] = state_[c] != Out;
        if (remaining_ == 0) {
          for (std::size_t c = 0; c < e_.m(); ++c) member[c] = state_[c] == In;
        }
        offer(member);
        break;
      }
      const double ub = tighten(depth == 0 && trail.empty() ? 200 : 12, ranked);
      if (depth == 0 && trail.empty()) root_bound_ = ub;
      offer(completion(ranked));
      const double cutoff = static_cast<double>(best_score_) + 1.0 - tolerance(ub);
      if (ub < cutoff) break;

      // reduced-profit fixing: forcing a candidate against the relaxed
      // choice costs at least its profit gap to the r-th / (r+1)-th entry
      const double rth = profit_[ranked[remaining_ - 1]];
      const double next = ranked.size() > remaining_ ? profit_[ranked[remaining_]] : 0.0;
      std::vector<std::uint32_t> fix_in;
      std::vector<std::uint32_t> fix_out;
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        const std::uint32_t c = ranked[i];
        if (i < remaining_) {
          if (ub - (profit_[c] - next) < cutoff) fix_in.push_back(c);
        } else if (ub - (rth - profit_[c]) < cutoff) {
          fix_out.push_back(c);
        }
      }
      if (fix_in.empty() && fix_out.empty()) {
        const std::uint32_t branch = ranked[0];
        std::vector<std::uint32_t> child;
        include(branch, child);
        search(depth + 1);
        undo(child);
        if (timed_out_) break;
        exclude(branch, child);
        search(depth + 1);
        undo(child);
        break;
      }
      for (auto c : fix_out) exclude(c, trail);
      for (auto c : fix_in) {
        if (remaining_ == 0) break;
        include(c, trail);
      }
    }
    undo(trail);
    lambda_ = saved_lambda;
  }

  const Election& e_;
  std::size_t k_;
  HarmonicScale scale_;
  double budget_;
  std::chrono::steady_clock::time_point start_;

  std::vector<std::vector<std::uint32_t>> approvers_;
  std::vector<double> weight_;
  std::vector<State> state_;
  std::vector<std::size_t> count_;
  std::vector<std::uint32_t> free_approved_;
  std::size_t free_count_ = 0;
  std::size_t remaining_ = 0;
  std::int64_t current_score_ = 0;
  std::vector<double> lambda_;
  std::vector<double> profit_;

  Committee best_;
  std::int64_t best_score_ = 0;
  double root_bound_ = 0.0;
  bool timed_out_ = false;
  std::size_t nodes_ = 0;
};

}  // namespace detail

// One PAV-optimal committee with its exact score and wall-clock runtime. On
// timeout the best committee found so far is returned with optimal == false.
inline PavResult pav_committee(const Election& e, std::size_t k,
                               double budget_seconds = std::numeric_limits<double>::infinity()) {
  check_committee_size(e, k);
  return detail::PavSolver(e, k, budget_seconds).solve();
}

// ---------------------------------------------------------------------------
// Cohesive groups

struct CohesiveGroup {
  std::vector<std::uint32_t> voters;
  std::vector<Candidate> candidates;
};

struct CohesivenessResult {
  std::size_t level = 0;
  std::optional<CohesiveGroup> witness;  // absent for level 0
};

inline std::size_t cohesive_group_size(std::size_t level, std::size_t n, std::size_t k) {
  return (level * n + k - 1) / k;
}

// Checks both conditions of l-cohesiveness on explicit sets.
inline bool is_cohesive(const Election& e, std::size_t k, std::size_t level, const CohesiveGroup& g) {
  if (level == 0) return true;
  if (g.voters.size() * k < level * e.n()) return false;
  if (g.candidates.size() < level) return false;
  for (auto v : g.voters) {
    if (v >= e.n()) return false;
    const Ballot& b = e.vote(v);
    for (Candidate c : g.candidates) {
      if (!std::binary_search(b.begin(), b.end(), c)) return false;
    }
  }
  return true;
}

namespace detail {

// Depth-first search over candidate sets whose common approvers number at
// least `support`, stopping at the first set of size `depth_target`.
class CohesiveSearch {
 public:
  explicit CohesiveSearch(const Election& e) : n_(e.n()), words_((e.n() + 63) / 64) {
    tidsets_.assign(e.m(), std::vector<std::uint64_t>(words_, 0));
    for (std::size_t v = 0; v < e.n(); ++v) {
      for (Candidate c : e.vote(v)) tidsets_[c][v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }

  std::optional<CohesiveGroup> find(std::size_t level, std::size_t support) {
    support_ = support;
    target_ = level;
    std::vector<Entry> root;
    for (std::size_t c = 0; c < tidsets_.size(); ++c) {
      if (popcount(tidsets_[c]) >= support) root.push_back({static_cast<Candidate>(c), tidsets_[c]});
    }
    chosen_.clear();
    std::vector<std::uint64_t> all(words_, 0);
    for (std::size_t v = 0; v < n_; ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
    if (!extend(root, all)) return std::nullopt;
    CohesiveGroup g;
    g.candidates = chosen_;
    std::sort(g.candidates.begin(), g.candidates.end());
    for (std::size_t v = 0; v < n_ && g.voters.size() < support; ++v) {
      if (found_[v / 64] >> (v % 64) & 1) g.voters.push_back(static_cast<std::uint32_t>(v));
    }
    return g;
  }

 private:
  struct Entry {
    Candidate candidate;
    std::vector<std::uint64_t> tids;
  };

  static std::size_t popcount(const std::vector<std::uint64_t>& bits) {
    std::size_t total = 0;
    for (auto w : bits) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  bool extend(const std::vector<Entry>& options, const std::vector<std::uint64_t>& tids) {
    if (chosen_.size() == target_) {
      found_ = tids;
      return true;
    }
    if (chosen_.size() + options.size() < target_) return false;
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (chosen_.size() + (options.size() - i) < target_) return false;
      std::vector<Entry> next;
      for (std::size_t j = i + 1; j < options.size(); ++j) {
        std::vector<std::uint64_t> inter(words_);
        for (std::size_t w = 0; w < words_; ++w) inter[w] = options[i].tids[w] & options[j].tids[w];
        if (popcount(inter) >= support_) next.push_back({options[j].candidate, std::move(inter)});
      }
      chosen_.push_back(options[i].candidate);
      if (extend(next, options[i].tids)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> tidsets_;
  std::size_t support_ = 0;
  std::size_t target_ = 0;
  std::vector<Candidate> chosen_;
  std::vector<std::uint64_t> found_;
};

}  // namespace detail

// An l-cohesive group of exactly ceil(l*n/k) voters, if one exists.
inline std::optional<CohesiveGroup> find_cohesive_group(const Election& e, std::size_t k, std::size_t level) {
  check_committee_size(e, k);
  if (level == 0) return CohesiveGroup{};
  const std::size_t s = cohesive_group_size(level, e.n(), k);
  if (s > e.n()) return std::nullopt;
  return detail::CohesiveSearch(e).find(level, s);
}

enum class LevelSearch { Ascending, Binary };

// Largest l in [0, k] admitting an l-cohesive group, with a witness.
inline CohesivenessResult cohesiveness_level(const Election& e, std::size_t k,
                                             LevelSearch strategy = LevelSearch::Ascending) {
  check_committee_size(e, k);
  detail::CohesiveSearch search(e);
  auto probe = [&](std::size_t level) { return search.find(level, cohesive_group_size(level, e.n(), k)); };
  CohesivenessResult result;
  if (strategy == LevelSearch::Ascending) {
    for (std::size_t level = 1; level <= k; ++level) {
      auto g = probe(level);
      if (!g) break;
      result.level = level;
      result.witness = std::move(g);
    }
    return result;
  }
  std::size_t lo = 0;  // known feasible
  std::size_t hi = k + 1;  // known infeasible
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto g = probe(mid)) {
      lo = mid;
      result.witness = std::move(g);
    } else {
      hi = mid;
    }
  }
  result.level = lo;
  if (lo == 0) result.witness.reset();
  return result;
}

// Fraction of voters approving some candidate with at least n/k approvals,
// i.e. voters in at least one 1-cohesive group.
inline double voters_in_1cohesive_fraction(const Election& e, std::size_t k) {
  check_committee_size(e, k);
  const auto scores = approval_scores(e);
  std::size_t covered = 0;
  for (const Ballot& b : e.votes()) {
    for (Candidate c : b) {
      if (scores[c] * k >= e.n()) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(e.n());
}

inline double max_approval_score(const Election& e) {
  const auto scores = approval_scores(e);
  return static_cast<double>(*std::max_element(scores.begin(), scores.end())) /
         static_cast<double>(e.n());
}

}  // namespace apmap
