#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace errorfloor {

/// Binary vector in support form: sorted positions carrying a 1.
struct BinaryVector {
  int length = 0;
  std::vector<int> support;

  BinaryVector() = default;
  BinaryVector(int len, std::vector<int> supp) : length(len), support(std::move(supp)) {
    normalize();
  }

  static BinaryVector zero(int len) { return BinaryVector(len, {}); }

  static BinaryVector from_indicator(const std::vector<std::uint8_t>& bits) {
    BinaryVector v;
    v.length = static_cast<int>(bits.size());
    for (int i = 0; i < v.length; ++i)
      if (bits[i]) v.support.push_back(i);
    return v;
  }

  std::vector<std::uint8_t> to_indicator() const {
    std::vector<std::uint8_t> bits(length, 0);
    for (int i : support) bits[i] = 1;
    return bits;
  }

  int weight() const { return static_cast<int>(support.size()); }
  bool is_zero() const { return support.empty(); }

  bool get(int i) const {
    return std::binary_search(support.begin(), support.end(), i);
  }

  BinaryVector xored(const BinaryVector& other) const {
    if (other.length != length) throw std::invalid_argument("BinaryVector: length mismatch");
    std::vector<int> out;
    std::set_symmetric_difference(support.begin(), support.end(),
                                  other.support.begin(), other.support.end(),
                                  std::back_inserter(out));
    return BinaryVector(length, std::move(out));
  }

  bool operator==(const BinaryVector& other) const {
    return length == other.length && support == other.support;
  }

 private:
  void normalize() {
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (int i : support)
      if (i < 0 || i >= length) throw std::invalid_argument("BinaryVector: support out of range");
  }
};

/// Immutable sparse bipartite code graph. Neighbor lists are sorted and
/// duplicate-free (canonical form); adjacency is stored on both sides.
struct TannerGraph {
  int n = 0;  // variable nodes
  int m = 0;  // check nodes
  std::vector<std::vector<int>> var_neighbors;    // per variable: check indices
  std::vector<std::vector<int>> check_neighbors;  // per check: variable indices

  static TannerGraph from_check_lists(int n, std::vector<std::vector<int>> checks) {
    TannerGraph g;
    g.n = n;
    g.m = static_cast<int>(checks.size());
    g.check_neighbors = std::move(checks);
    g.var_neighbors.assign(n, {});
    for (int a = 0; a < g.m; ++a) {
      auto& row = g.check_neighbors[a];
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end())
        throw std::invalid_argument("TannerGraph: parallel edge at check " + std::to_string(a));
      for (int v : row) {
        if (v < 0 || v >= n)
          throw std::invalid_argument("TannerGraph: variable index out of range at check " +
                                      std::to_string(a));
        g.var_neighbors[v].push_back(a);
      }
    }
    for (auto& col : g.var_neighbors) std::sort(col.begin(), col.end());
    return g;
  }

  int edge_count() const {
    int e = 0;
    for (const auto& row : check_neighbors) e += static_cast<int>(row.size());
    return e;
  }

  int var_degree(int i) const { return static_cast<int>(var_neighbors[i].size()); }
  int check_degree(int a) const { return static_cast<int>(check_neighbors[a].size()); }

  int max_var_degree() const {
    int d = 0;
    for (const auto& l : var_neighbors) d = std::max<int>(d, l.size());
    return d;
  }
  int max_check_degree() const {
    int d = 0;
    for (const auto& l : check_neighbors) d = std::max<int>(d, l.size());
    return d;
  }

  bool adjacent(int var, int check) const {
    const auto& l = var_neighbors[var];
    return std::binary_search(l.begin(), l.end(), check);
  }

  /// Full canonical-form validation; throws on the violated invariant.
  void validate() const {
    if (static_cast<int>(var_neighbors.size()) != n ||
        static_cast<int>(check_neighbors.size()) != m)
      throw std::logic_error("TannerGraph: adjacency size mismatch");
    for (int i = 0; i < n; ++i) {
      const auto& l = var_neighbors[i];
      if (!std::is_sorted(l.begin(), l.end()) ||
          std::adjacent_find(l.begin(), l.end()) != l.end())
        throw std::logic_error("TannerGraph: variable list not canonical");
      for (int a : l) {
        if (a < 0 || a >= m) throw std::logic_error("TannerGraph: check index out of range");
        const auto& r = check_neighbors[a];
        if (!std::binary_search(r.begin(), r.end(), i))
          throw std::logic_error("TannerGraph: asymmetric adjacency");
      }
    }
    int back_edges = 0;
    for (int a = 0; a < m; ++a) {
      const auto& r = check_neighbors[a];
      if (!std::is_sorted(r.begin(), r.end()) ||
          std::adjacent_find(r.begin(), r.end()) != r.end())
        throw std::logic_error("TannerGraph: check list not canonical");
      for (int v : r) {
        if (v < 0 || v >= n) throw std::logic_error("TannerGraph: variable index out of range");
        if (!adjacent(v, a)) throw std::logic_error("TannerGraph: asymmetric adjacency");
      }
      back_edges += static_cast<int>(r.size());
    }
    int fwd_edges = 0;
    for (const auto& l : var_neighbors) fwd_edges += static_cast<int>(l.size());
    if (fwd_edges != back_edges) throw std::logic_error("TannerGraph: asymmetric adjacency");
  }

  bool operator==(const TannerGraph& other) const {
    return n == other.n && m == other.m && var_neighbors == other.var_neighbors &&
           check_neighbors == other.check_neighbors;
  }
};

/// Per-check parity of v (length n) as a length-m binary vector.
inline BinaryVector syndrome(const TannerGraph& g, const BinaryVector& v) {
  if (v.length != g.n) throw std::invalid_argument("syndrome: length mismatch");
  std::vector<std::uint8_t> parity(g.m, 0);
  for (int i : v.support)
    for (int a : g.var_neighbors[i]) parity[a] ^= 1;
  return BinaryVector::from_indicator(parity);
}

inline bool is_codeword(const TannerGraph& g, const BinaryVector& v) {
  return syndrome(g, v).is_zero();
}

/// Shortest cycle length of the bipartite graph, nullopt for a forest.
/// BFS from every node, truncated at the current best. Bipartite graphs only
/// have even cycles, so the result is even and >= 4 whenever finite.
inline std::optional<int> girth(const TannerGraph& g) {
  const int total = g.n + g.m;
  auto neighbors = [&](int u) -> const std::vector<int>& {
    return u < g.n ? g.var_neighbors[u] : g.check_neighbors[u - g.n];
  };
  auto node_id = [&](int u, bool is_check) { return is_check ? u + g.n : u; };

  int best = -1;  // -1 = none found yet
  std::vector<int> dist(total), parent(total);
  std::vector<int> queue;
  queue.reserve(total);
  for (int start = 0; start < total; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(start);
    dist[start] = 0;
    parent[start] = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      if (best >= 0 && 2 * dist[u] + 2 > best) break;
      const bool u_is_check = u >= g.n;
      for (int w : neighbors(u)) {
        const int v = node_id(w, !u_is_check);
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (v != parent[u] && parent[v] != u) {
          const int cycle = dist[u] + dist[v] + 1;
          if (best < 0 || cycle < best) best = cycle;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

}  // namespace errorfloor
