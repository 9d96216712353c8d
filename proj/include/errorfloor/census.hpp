#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

/// All connected size-a variable subsets classified as (a,b): the induced
/// subgraph (the a variables plus every adjacent check) has exactly b checks
/// of odd degree.
struct SubgraphClass {
  int a = 0;
  int b = 0;
  std::vector<std::vector<int>> members;  // each sorted; list sorted lex

  std::size_t count() const { return members.size(); }
};

/// Variable-to-variable adjacency (two variables are adjacent when they share
/// a check), used by the subset enumerator and PEG construction.
inline std::vector<std::vector<int>> variable_adjacency(const TannerGraph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (int a = 0; a < g.m; ++a) {
    const auto& vars = g.check_neighbors[a];
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j) {
        adj[vars[i]].push_back(vars[j]);
        adj[vars[j]].push_back(vars[i]);
      }
  }
  for (auto& lst : adj) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }
  return adj;
}

/// Number of odd-degree checks in the subgraph induced by variable set S.
inline int induced_odd_checks(const TannerGraph& g, const std::vector<int>& subset) {
  // Degrees w.r.t. S only; checks touched by S are collected on the fly.
  std::vector<std::pair<int, int>> deg;  // (check, count), small list
  for (int v : subset)
    for (int c : g.var_neighbors[v]) {
      bool found = false;
      for (auto& [chk, cnt] : deg)
        if (chk == c) {
          ++cnt;
          found = true;
          break;
        }
      if (!found) deg.emplace_back(c, 1);
    }
  int odd = 0;
  for (auto& [chk, cnt] : deg)
    if (cnt % 2) ++odd;
  return odd;
}

inline std::pair<int, int> classify_subset(const TannerGraph& g, const std::vector<int>& subset) {
  return {static_cast<int>(subset.size()), induced_odd_checks(g, subset)};
}

/// Closure of a variable set: the set itself plus every variable at least two
/// of whose checks touch it. Failures seeded inside a trapping set settle
/// within this closure (e.g. an 8-cycle pulls in the one extra variable that
/// completes the surrounding five-variable structure).
inline std::vector<int> trapping_closure(const TannerGraph& g, const std::vector<int>& subset) {
  std::vector<char> check_touched(g.m, 0);
  for (int v : subset)
    for (int c : g.var_neighbors[v]) check_touched[c] = 1;
  std::vector<char> in(g.n, 0);
  for (int v : subset) in[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v) {
    if (in[v]) {
      out.push_back(v);
      continue;
    }
    int touch = 0;
    for (int c : g.var_neighbors[v])
      if (check_touched[c]) ++touch;
    if (touch >= 2) out.push_back(v);
  }
  return out;
}

namespace detail {

/// ESU-style enumeration of connected subsets of fixed size rooted at `root`:
/// every emitted subset contains `root` and, when restrict_above_root is set,
/// only vertices > root, which yields each connected subset exactly once when
/// called for every root.
inline void enumerate_rooted(const std::vector<std::vector<int>>& adj, int root, int size,
                             bool restrict_above_root,
                             const std::function<void(const std::vector<int>&)>& emit,
                             std::vector<int>& subset, std::vector<int>& extension,
                             std::vector<char>& banned) {
  if (static_cast<int>(subset.size()) == size) {
    emit(subset);
    return;
  }
  // Candidates are consumed in order; a candidate popped here stays banned in
  // the remaining branches at this level, so no subset is produced twice.
  while (!extension.empty()) {
    const int u = extension.back();
    extension.pop_back();

    subset.push_back(u);
    std::vector<int> added;
    for (int w : adj[u]) {
      if (banned[w]) continue;
      if (restrict_above_root && w <= root) continue;
      banned[w] = 1;
      added.push_back(w);
    }
    std::vector<int> next_extension = extension;
    next_extension.insert(next_extension.end(), added.begin(), added.end());
    enumerate_rooted(adj, root, size, restrict_above_root, emit, subset, next_extension, banned);
    subset.pop_back();
    for (int w : added) banned[w] = 0;
  }
}

}  // namespace detail

/// Stream every connected (via shared checks) variable subset of size a,
/// each exactly once. Order is deterministic.
inline void enumerate_connected_subsets(const TannerGraph& g, int a,
                                        const std::function<void(const std::vector<int>&)>& emit) {
  if (a < 1) throw std::invalid_argument("enumerate_connected_subsets: a must be >= 1");
  const auto adj = variable_adjacency(g);
  std::vector<char> banned(g.n, 0);
  for (int root = 0; root < g.n; ++root) {
    std::vector<int> subset{root};
    std::vector<int> extension;
    banned[root] = 1;
    for (auto it = adj[root].rbegin(); it != adj[root].rend(); ++it) {
      if (*it > root) {
        banned[*it] = 1;
        extension.push_back(*it);
      }
    }
    detail::enumerate_rooted(adj, root, a, /*restrict_above_root=*/true, emit, subset, extension,
                             banned);
    for (int w : adj[root])
      if (w > root) banned[w] = 0;
    banned[root] = 0;
  }
}

/// Connected subsets of size a containing a fixed variable (no root
/// restriction on indices). Used for incremental forbidden-pattern checks.
inline void enumerate_connected_subsets_containing(
    const std::vector<std::vector<int>>& adj, int v, int a,
    const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<char> banned(adj.size(), 0);
  std::vector<int> subset{v};
  std::vector<int> extension;
  banned[v] = 1;
  for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it) {
    banned[*it] = 1;
    extension.push_back(*it);
  }
  detail::enumerate_rooted(adj, v, a, /*restrict_above_root=*/false, emit, subset, extension,
                           banned);
}

/// Census of connected (a,b) subgraphs. With include_disconnected set, every
/// size-a subset is scanned instead (exponential; small graphs only).
inline SubgraphClass census_trapping_subgraphs(const TannerGraph& g, int a, int b,
                                               bool include_disconnected = false) {
  if (a < 0 || b < 0) throw std::invalid_argument("census: a and b must be >= 0");
  SubgraphClass out;
  out.a = a;
  out.b = b;
  if (a == 0) {
    if (b == 0) out.members.push_back({});
    return out;
  }
  if (include_disconnected) {
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(subset.size()) == a) {
        if (induced_odd_checks(g, subset) == b) out.members.push_back(subset);
        return;
      }
      for (int v = start; v < g.n; ++v) {
        subset.push_back(v);
        rec(v + 1);
        subset.pop_back();
      }
    };
    rec(0);
    return out;
  }
  enumerate_connected_subsets(g, a, [&](const std::vector<int>& subset) {
    if (induced_odd_checks(g, subset) == b) {
      std::vector<int> sorted = subset;
      std::sort(sorted.begin(), sorted.end());
      out.members.push_back(std::move(sorted));
    }
  });
  std::sort(out.members.begin(), out.members.end());
  return out;
}

inline nlohmann::json to_json(const SubgraphClass& cls) {
  return nlohmann::json{
      {"a", cls.a}, {"b", cls.b}, {"count", cls.count()}, {"members", cls.members}};
}

}  // namespace errorfloor
