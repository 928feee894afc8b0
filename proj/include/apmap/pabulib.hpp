#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apmap/core.hpp"
#include "apmap/error.hpp"
#include "apmap/rng.hpp"

namespace apmap {

// A participatory-budgeting instance in Pabulib's sectioned format:
//
//   META              key;value rows
//   PROJECTS          header row with project_id, then one row per project
//   VOTES             header row with voter_id and vote, then one row per voter
//
// Columns other than project_id / voter_id / vote are kept as attributes.
struct PabulibInstance {
  struct Row {
    std::string id;
    std::map<std::string, std::string> attributes;
  };
  struct Vote {
    std::string voter_id;
    std::vector<std::string> approved;  // project ids, file order, duplicates removed
    std::map<std::string, std::string> attributes;
  };

  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> project_columns;
  std::vector<Row> projects;
  std::vector<std::string> vote_columns;
  std::vector<Vote> votes;
};

namespace detail {

// Splits a semicolon-separated row; double-quoted fields may contain ';'
// and use "" for a literal quote.
inline std::vector<std::string> split_pb_row(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ';') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

inline std::string quote_pb_field(const std::string& s) {
  if (s.find_first_of(";\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string trim_copy(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace detail

inline PabulibInstance parse_pabulib(std::string_view text) {
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
    text.remove_prefix(3);
  }

  struct Line {
    std::size_t number;
    std::string_view content;
  };
  std::vector<Line> lines;
  {
    std::size_t pos = 0;
    std::size_t number = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++number;
      if (!detail::trim_copy(line).empty()) lines.push_back({number, line});
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  const std::vector<std::string> sections = {"META", "PROJECTS", "VOTES"};
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string head = detail::trim_copy(lines[i].content);
    const auto it = std::find(sections.begin(), sections.end(), head);
    if (it == sections.end()) continue;
    const auto expected = static_cast<std::size_t>(it - sections.begin());
    if (expected != starts.size()) {
      throw ParseError(lines[i].number, "section " + head + " out of order (expected " +
                                            (starts.size() < sections.size() ? sections[starts.size()] : std::string("end of file")) + ")");
    }
    starts.push_back(i);
  }
  if (starts.size() < sections.size()) {
    const std::size_t at = lines.empty() ? 1 : lines.back().number;
    throw ParseError(at, "missing section " + sections[starts.size()]);
  }
  if (starts[0] != 0) throw ParseError(lines[0].number, "data before META section");

  auto section_rows = [&](std::size_t s) {
    const std::size_t begin = starts[s] + 1;
    const std::size_t end = s + 1 < starts.size() ? starts[s + 1] : lines.size();
    return std::pair{begin, end};
  };

  PabulibInstance inst;

  // header rows
  auto read_header = [&](std::size_t s, std::vector<std::string>& columns) {
    auto [begin, end] = section_rows(s);
    if (begin >= end) throw ParseError(lines[starts[s]].number, sections[s] + " section has no header row");
    for (auto& c : detail::split_pb_row(lines[begin].content, lines[begin].number)) {
      columns.push_back(detail::trim_copy(c));
    }
    return std::pair{begin + 1, end};
  };

  {
    std::vector<std::string> header;
    auto [begin, end] = read_header(0, header);
    for (std::size_t i = begin; i < end; ++i) {
      auto cells = detail::split_pb_row(lines[i].content, lines[i].number);
      if (cells.size() < 2) throw ParseError(lines[i].number, "META row needs key;value");
      std::string value = cells[1];
      for (std::size_t c = 2; c < cells.size(); ++c) value += ";" + cells[c];
      inst.meta.emplace_back(detail::trim_copy(cells[0]), value);
    }
  }

  std::unordered_map<std::string, std::size_t> project_index;
  {
    auto [begin, end] = read_header(1, inst.project_columns);
    const auto id_col = std::find(inst.project_columns.begin(), inst.project_columns.end(), "project_id");
    if (id_col == inst.project_columns.end()) {
      throw ParseError(lines[begin - 1].number, "PROJECTS header lacks project_id");
    }
    const auto id_pos = static_cast<std::size_t>(id_col - inst.project_columns.begin());
    for (std::size_t i = begin; i < end; ++i) {
      auto cells = detail::split_pb_row(lines[i].content, lines[i].number);
      if (cells.size() != inst.project_columns.size()) {
        throw ParseError(lines[i].number, "expected " + std::to_string(inst.project_columns.size()) +
                                              " columns, got " + std::to_string(cells.size()));
      }
      PabulibInstance::Row row;
      row.id = detail::trim_copy(cells[id_pos]);
      if (row.id.empty()) throw ParseError(lines[i].number, "empty project_id");
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != id_pos) row.attributes[inst.project_columns[c]] = cells[c];
      }
      if (!project_index.emplace(row.id, inst.projects.size()).second) {
        throw ParseError(lines[i].number, "duplicate project_id '" + row.id + "'");
      }
      inst.projects.push_back(std::move(row));
    }
  }

  {
    auto [begin, end] = read_header(2, inst.vote_columns);
    auto find_col = [&](const char* name) -> std::size_t {
      const auto it = std::find(inst.vote_columns.begin(), inst.vote_columns.end(), name);
      if (it == inst.vote_columns.end()) {
        throw ParseError(lines[begin - 1].number, std::string("VOTES header lacks ") + name);
      }
      return static_cast<std::size_t>(it - inst.vote_columns.begin());
    };
    const std::size_t voter_pos = find_col("voter_id");
    const std::size_t vote_pos = find_col("vote");
    for (std::size_t i = begin; i < end; ++i) {
      auto cells = detail::split_pb_row(lines[i].content, lines[i].number);
      if (cells.size() != inst.vote_columns.size()) {
        throw ParseError(lines[i].number, "expected " + std::to_string(inst.vote_columns.size()) +
                                              " columns, got " + std::to_string(cells.size()));
      }
      PabulibInstance::Vote vote;
      vote.voter_id = detail::trim_copy(cells[voter_pos]);
      std::string_view rest = cells[vote_pos];
      while (true) {
        const std::size_t comma = rest.find(',');
        const std::string id = detail::trim_copy(rest.substr(0, comma));
        if (!id.empty()) {
          if (!project_index.contains(id)) {
            throw ParseError(lines[i].number, "vote names unknown project '" + id + "'");
          }
          if (std::find(vote.approved.begin(), vote.approved.end(), id) == vote.approved.end()) {
            vote.approved.push_back(id);
          }
        } else if (comma != std::string_view::npos) {
          throw ParseError(lines[i].number, "empty project id in vote list");
        }
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != voter_pos && c != vote_pos) vote.attributes[inst.vote_columns[c]] = cells[c];
      }
      inst.votes.push_back(std::move(vote));
    }
    if (inst.votes.empty()) throw ParseError(lines[starts[2]].number, "no voters");
  }
  if (inst.projects.empty()) throw ParseError(lines[starts[1]].number, "no projects");
  return inst;
}

inline std::string write_pabulib(const PabulibInstance& inst) {
  std::string out = "META\nkey;value\n";
  for (const auto& [k, v] : inst.meta) out += detail::quote_pb_field(k) + ";" + detail::quote_pb_field(v) + "\n";
  auto row = [&](const std::vector<std::string>& columns, auto cell) {
    std::string line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) line += ';';
      line += detail::quote_pb_field(cell(columns[c]));
    }
    return line + "\n";
  };
  out += "PROJECTS\n" + row(inst.project_columns, [](const std::string& c) { return c; });
  for (const auto& p : inst.projects) {
    out += row(inst.project_columns, [&](const std::string& c) {
      if (c == "project_id") return p.id;
      auto it = p.attributes.find(c);
      return it == p.attributes.end() ? std::string() : it->second;
    });
  }
  out += "VOTES\n" + row(inst.vote_columns, [](const std::string& c) { return c; });
  for (const auto& v : inst.votes) {
    out += row(inst.vote_columns, [&](const std::string& c) {
      if (c == "voter_id") return v.voter_id;
      if (c == "vote") {
        std::string list;
        for (std::size_t i = 0; i < v.approved.size(); ++i) list += (i ? "," : "") + v.approved[i];
        return list;
      }
      auto it = v.attributes.find(c);
      return it == v.attributes.end() ? std::string() : it->second;
    });
  }
  return out;
}

// Election with its sidecar label tables.
struct LabeledElection {
  Election election;
  std::vector<std::string> candidate_labels;
  std::vector<std::string> voter_labels;
};

// Projects become candidates 0..m-1 in file order.
inline LabeledElection to_election(const PabulibInstance& inst) {
  std::unordered_map<std::string, Candidate> index;
  std::vector<std::string> cands;
  for (const auto& p : inst.projects) {
    index.emplace(p.id, static_cast<Candidate>(cands.size()));
    cands.push_back(p.id);
  }
  std::vector<Ballot> votes;
  std::vector<std::string> voters;
  for (const auto& v : inst.votes) {
    Ballot b;
    for (const auto& id : v.approved) b.push_back(index.at(id));
    votes.push_back(std::move(b));
    voters.push_back(v.voter_id);
  }
  return {Election(cands.size(), std::move(votes)), std::move(cands), std::move(voters)};
}

struct Subsample {
  Election election;
  std::vector<Candidate> kept_candidates;  // new candidate i is original kept_candidates[i]
  std::vector<std::uint32_t> kept_voters;  // new voter i is original kept_voters[i]
};

inline constexpr std::size_t kLargeEnoughCandidates = 50;
inline constexpr std::size_t kLargeEnoughVoters = 1000;

inline bool large_enough(const Election& e, std::size_t m_target = kLargeEnoughCandidates,
                         std::size_t n_target = kLargeEnoughVoters) {
  return e.m() >= m_target && e.n() >= n_target;
}

// Uniform candidate and voter subsets; each kept ballot is intersected with
// the kept candidates and may become empty (such voters are kept).
inline Subsample subsample(const Election& e, std::size_t m_target, std::size_t n_target, std::uint64_t seed) {
  if (m_target < 1 || n_target < 1) throw DataError("subsample targets must be positive");
  if (!large_enough(e, m_target, n_target)) {
    throw DataError("instance too small: has m = " + std::to_string(e.m()) + ", n = " +
                    std::to_string(e.n()) + "; need m >= " + std::to_string(m_target) +
                    ", n >= " + std::to_string(n_target));
  }
  Rng rng(seed);
  auto kept_c = rng.subset(static_cast<std::uint32_t>(e.m()), static_cast<std::uint32_t>(m_target));
  auto kept_v = rng.subset(static_cast<std::uint32_t>(e.n()), static_cast<std::uint32_t>(n_target));
  std::vector<std::int64_t> new_index(e.m(), -1);
  for (std::size_t i = 0; i < kept_c.size(); ++i) new_index[kept_c[i]] = static_cast<std::int64_t>(i);
  std::vector<Ballot> votes;
  votes.reserve(n_target);
  for (auto v : kept_v) {
    Ballot b;
    for (Candidate c : e.vote(v)) {
      if (new_index[c] >= 0) b.push_back(static_cast<Candidate>(new_index[c]));
    }
    votes.push_back(std::move(b));
  }
  return {Election(m_target, std::move(votes)), std::move(kept_c), std::move(kept_v)};
}

// The instance restricted to a subsample's projects and voters.
inline PabulibInstance restrict_instance(const PabulibInstance& inst, const Subsample& sub) {
  PabulibInstance out;
  out.project_columns = inst.project_columns;
  out.vote_columns = inst.vote_columns;
  std::unordered_map<std::string, bool> kept;
  for (auto c : sub.kept_candidates) {
    out.projects.push_back(inst.projects.at(c));
    kept[inst.projects.at(c).id] = true;
  }
  for (auto v : sub.kept_voters) {
    PabulibInstance::Vote vote = inst.votes.at(v);
    std::erase_if(vote.approved, [&](const std::string& id) { return !kept.contains(id); });
    out.votes.push_back(std::move(vote));
  }
  for (auto [k, v] : inst.meta) {
    if (k == "num_projects") v = std::to_string(out.projects.size());
    if (k == "num_votes") v = std::to_string(out.votes.size());
    out.meta.emplace_back(k, v);
  }
  return out;
}

}  // namespace apmap
