#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "apmap/error.hpp"

namespace apmap {

using Candidate = std::uint32_t;

// Sorted, duplicate-free list of approved candidate indices.
using Ballot = std::vector<Candidate>;

// An approval election over candidates 0..m-1. Immutable once built.
class Election {
 public:
  Election(std::size_t m, std::vector<Ballot> votes) : m_(m), votes_(std::move(votes)) {
    if (m_ == 0) throw DataError("election needs at least one candidate");
    if (votes_.empty()) throw DataError("election needs at least one voter");
    for (std::size_t v = 0; v < votes_.size(); ++v) {
      Ballot& b = votes_[v];
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
        throw DataError("ballot " + std::to_string(v) + " approves a candidate twice");
      }
      if (!b.empty() && b.back() >= m_) {
        throw DataError("ballot " + std::to_string(v) + " approves candidate " +
                        std::to_string(b.back()) + " but m = " + std::to_string(m_));
      }
    }
  }

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return votes_.size(); }
  const std::vector<Ballot>& votes() const noexcept { return votes_; }
  const Ballot& vote(std::size_t i) const { return votes_.at(i); }

  friend bool operator==(const Election&, const Election&) = default;

 private:
  std::size_t m_;
  std::vector<Ballot> votes_;
};

// Number of approvals of every candidate, indexed by candidate.
inline std::vector<std::size_t> approval_scores(const Election& e) {
  std::vector<std::size_t> scores(e.m(), 0);
  for (const Ballot& b : e.votes()) {
    for (Candidate c : b) ++scores[c];
  }
  return scores;
}

inline std::size_t approval_score(const Election& e, Candidate c) {
  if (c >= e.m()) {
    throw DataError("candidate " + std::to_string(c) + " out of range for m = " +
                    std::to_string(e.m()));
  }
  std::size_t count = 0;
  for (const Ballot& b : e.votes()) {
    count += std::binary_search(b.begin(), b.end(), c) ? 1 : 0;
  }
  return count;
}

inline std::size_t total_approvals(const Election& e) {
  std::size_t total = 0;
  for (const Ballot& b : e.votes()) total += b.size();
  return total;
}

// Approval scores sorted non-increasing; the integer form of the
// approvalwise vector (divide by n for the normalized one).
inline std::vector<std::size_t> sorted_scores(const Election& e) {
  auto scores = approval_scores(e);
  std::sort(scores.begin(), scores.end(), std::greater<>());
  return scores;
}

// Sorted normalized approval scores: the election's fingerprint for the
// approvalwise metric.
struct ApprovalwiseVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  friend bool operator==(const ApprovalwiseVector&, const ApprovalwiseVector&) = default;
};

inline ApprovalwiseVector approvalwise_vector(const Election& e) {
  ApprovalwiseVector av;
  av.values.reserve(e.m());
  const double n = static_cast<double>(e.n());
  for (std::size_t s : sorted_scores(e)) av.values.push_back(static_cast<double>(s) / n);
  return av;
}

// |A(u) symmetric-difference A(v)| for two sorted ballots.
inline std::size_t vote_hamming(std::span<const Candidate> u, std::span<const Candidate> v) {
  std::size_t common = 0;
  auto a = u.begin();
  auto b = v.begin();
  while (a != u.end() && b != v.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  return u.size() + v.size() - 2 * common;
}

// Hamming distance over the size of the union; 0 when both ballots are empty.
inline double vote_jaccard(std::span<const Candidate> u, std::span<const Candidate> v) {
  const std::size_t ham = vote_hamming(u, v);
  const std::size_t common = (u.size() + v.size() - ham) / 2;
  const std::size_t uni = u.size() + v.size() - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(ham) / static_cast<double>(uni);
}

}  // namespace apmap
