#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "apmap/core.hpp"

namespace apmap {

// Canonical text format:
//   m n
//   <ballot 1>        comma-separated sorted candidate indices, empty = no approvals
//   ...
//   <ballot n>
inline std::string to_text(const Election& e) {
  std::string out = std::to_string(e.m()) + " " + std::to_string(e.n()) + "\n";
  for (const Ballot& b : e.votes()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(b[i]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

inline Election from_text(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw ParseError(1, "missing 'm n' header");
  line = detail::trim(line);
  const std::size_t sp = line.find_first_of(" \t");
  std::size_t m = 0;
  std::size_t n = 0;
  if (sp == std::string_view::npos || !detail::parse_number(line.substr(0, sp), m) ||
      !detail::parse_number(line.substr(sp + 1), n)) {
    throw ParseError(line_no, "header must be 'm n'");
  }

  std::vector<Ballot> votes;
  votes.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!next_line(line)) {
      // a trailing empty ballot may lack its newline
      if (pos == text.size() && v + 1 == n && !text.empty() && text.back() == '\n') {
        votes.emplace_back();
        break;
      }
      throw ParseError(line_no + 1, "expected " + std::to_string(n) + " ballots, got " +
                                        std::to_string(v));
    }
    Ballot b;
    std::string_view rest = detail::trim(line);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      Candidate c = 0;
      if (!detail::parse_number(rest.substr(0, comma), c)) {
        throw ParseError(line_no, "bad candidate index '" + std::string(rest.substr(0, comma)) + "'");
      }
      b.push_back(c);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    votes.push_back(std::move(b));
  }
  while (next_line(line)) {
    if (!detail::trim(line).empty()) throw ParseError(line_no, "trailing data after last ballot");
  }
  try {
    return Election(m, std::move(votes));
  } catch (const DataError& err) {
    throw ParseError(1, err.what());
  }
}

inline nlohmann::json to_json(const Election& e) {
  return nlohmann::json{{"m", e.m()}, {"votes", e.votes()}};
}

inline Election election_from_json(const nlohmann::json& j) {
  try {
    return Election(j.at("m").get<std::size_t>(), j.at("votes").get<std::vector<Ballot>>());
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("election json: ") + err.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary sibling and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Loads either format, chosen by extension (.json or canonical text).
inline Election load_election(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& err) {
      throw DataError(path.string() + ": " + err.what());
    }
    return election_from_json(j);
  }
  try {
    return from_text(content);
  } catch (const ParseError& err) {
    throw DataError(path.string() + ": " + err.what());
  }
}

inline void save_election(const std::filesystem::path& path, const Election& e) {
  if (path.extension() == ".json") {
    write_file_atomic(path, to_json(e).dump() + "\n");
  } else {
    write_file_atomic(path, to_text(e));
  }
}

}  // namespace apmap
