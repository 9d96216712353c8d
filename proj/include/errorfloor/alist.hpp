#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

/// Parse failure with the 1-based line number where it was detected.
class AlistParseError : public std::runtime_error {
 public:
  AlistParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::vector<long> parse_int_line(const std::string& text, int line_no,
                                        const char* what) {
  std::istringstream ss(text);
  std::vector<long> out;
  long v = 0;
  while (ss >> v) out.push_back(v);
  if (!ss.eof()) {
    ss.clear();
    std::string rest;
    ss >> rest;
    if (!rest.empty()) throw AlistParseError(std::string("malformed ") + what, line_no);
  }
  return out;
}

}  // namespace detail

/// Read a parity-check matrix in alist format:
///   line 1: n m
///   line 2: max variable degree, max check degree
///   line 3: n variable degrees; line 4: m check degrees
///   next n lines: 1-indexed check neighbors per variable (0 = padding)
///   next m lines: 1-indexed variable neighbors per check (0 = padding)
/// Both adjacency blocks are required and must agree.
inline TannerGraph load_alist(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  int ln = 0;
  auto next_line = [&]() -> const std::string& {
    while (ln < static_cast<int>(lines.size())) {
      const std::string& s = lines[ln++];
      if (s.find_first_not_of(" \t\r") != std::string::npos) return s;
    }
    throw AlistParseError("unexpected end of file", static_cast<int>(lines.size()));
  };

  auto header = detail::parse_int_line(next_line(), ln, "header");
  if (header.size() != 2 || header[0] < 1 || header[1] < 1)
    throw AlistParseError("malformed header, expected \"n m\"", ln);
  const int n = static_cast<int>(header[0]);
  const int m = static_cast<int>(header[1]);

  auto maxdeg = detail::parse_int_line(next_line(), ln, "max-degree line");
  if (maxdeg.size() != 2) throw AlistParseError("malformed max-degree line", ln);

  auto var_degs = detail::parse_int_line(next_line(), ln, "variable degree list");
  if (static_cast<int>(var_degs.size()) != n)
    throw AlistParseError("variable degree list length != n", ln);
  auto check_degs = detail::parse_int_line(next_line(), ln, "check degree list");
  if (static_cast<int>(check_degs.size()) != m)
    throw AlistParseError("check degree list length != m", ln);

  std::vector<std::vector<int>> var_lists(n), check_lists(m);
  for (int i = 0; i < n; ++i) {
    auto row = detail::parse_int_line(next_line(), ln, "variable neighbor list");
    std::vector<int>& lst = var_lists[i];
    for (long e : row) {
      if (e == 0) continue;  // zero padding
      if (e < 1 || e > m) throw AlistParseError("index out of range", ln);
      lst.push_back(static_cast<int>(e - 1));
    }
    if (static_cast<long>(lst.size()) != var_degs[i])
      throw AlistParseError("variable degree mismatch", ln);
  }
  for (int a = 0; a < m; ++a) {
    auto row = detail::parse_int_line(next_line(), ln, "check neighbor list");
    std::vector<int>& lst = check_lists[a];
    for (long e : row) {
      if (e == 0) continue;
      if (e < 1 || e > n) throw AlistParseError("index out of range", ln);
      lst.push_back(static_cast<int>(e - 1));
    }
    if (static_cast<long>(lst.size()) != check_degs[a])
      throw AlistParseError("check degree mismatch", ln);
  }

  TannerGraph g;
  try {
    g = TannerGraph::from_check_lists(n, std::move(check_lists));
  } catch (const std::invalid_argument& e) {
    throw AlistParseError(e.what(), ln);
  }
  // Cross-check the variable block against the check block.
  for (int i = 0; i < n; ++i) {
    auto lst = var_lists[i];
    std::sort(lst.begin(), lst.end());
    if (lst != g.var_neighbors[i]) throw AlistParseError("asymmetric adjacency", ln);
  }
  return g;
}

inline TannerGraph load_alist(const std::string& text) {
  std::istringstream ss(text);
  return load_alist(ss);
}

/// Canonical serialization: ascending 1-indexed neighbor lists, no padding.
inline void save_alist(const TannerGraph& g, std::ostream& out) {
  out << g.n << ' ' << g.m << '\n';
  out << g.max_var_degree() << ' ' << g.max_check_degree() << '\n';
  for (int i = 0; i < g.n; ++i) out << g.var_degree(i) << (i + 1 < g.n ? ' ' : '\n');
  if (g.n == 0) out << '\n';
  for (int a = 0; a < g.m; ++a) out << g.check_degree(a) << (a + 1 < g.m ? ' ' : '\n');
  if (g.m == 0) out << '\n';
  // A degree-0 node writes a single padding zero so its line is not blank.
  for (const auto& lst : g.var_neighbors) {
    if (lst.empty()) {
      out << "0\n";
      continue;
    }
    for (std::size_t k = 0; k < lst.size(); ++k)
      out << lst[k] + 1 << (k + 1 < lst.size() ? ' ' : '\n');
  }
  for (const auto& lst : g.check_neighbors) {
    if (lst.empty()) {
      out << "0\n";
      continue;
    }
    for (std::size_t k = 0; k < lst.size(); ++k)
      out << lst[k] + 1 << (k + 1 < lst.size() ? ' ' : '\n');
  }
}

inline std::string save_alist(const TannerGraph& g) {
  std::ostringstream ss;
  save_alist(g, ss);
  return ss.str();
}

}  // namespace errorfloor
