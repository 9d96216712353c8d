#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "errorfloor/census.hpp"
#include "errorfloor/rng.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

/// A subgraph the construction must never create: either any cycle shorter
/// than min_girth, or any connected (a,b) trapping-set shape. Templates match
/// by induced-subgraph classification (a variables, b odd-degree checks), not
/// by a specific labeling.
struct ForbiddenPattern {
  enum class Kind { CycleShorterThan, TrappingTemplate };
  Kind kind = Kind::CycleShorterThan;
  int min_girth = 0;
  int a = 0, b = 0;
  std::optional<TannerGraph> template_graph;

  static ForbiddenPattern cycles_shorter_than(int g_min) {
    if (g_min < 4 || g_min % 2 != 0)
      throw std::invalid_argument("ForbiddenPattern: min girth must be even and >= 4");
    ForbiddenPattern p;
    p.kind = Kind::CycleShorterThan;
    p.min_girth = g_min;
    return p;
  }

  static ForbiddenPattern trapping(int a, int b) {
    if (a < 1 || b < 0) throw std::invalid_argument("ForbiddenPattern: bad (a,b)");
    ForbiddenPattern p;
    p.kind = Kind::TrappingTemplate;
    p.a = a;
    p.b = b;
    return p;
  }

  /// Derive (a,b) from an explicit bipartite shape.
  static ForbiddenPattern trapping_like(const TannerGraph& shape) {
    shape.validate();
    if (shape.n < 1) throw std::invalid_argument("ForbiddenPattern: template needs variables");
    std::vector<int> all(shape.n);
    for (int i = 0; i < shape.n; ++i) all[i] = i;
    ForbiddenPattern p = trapping(shape.n, induced_odd_checks(shape, all));
    p.template_graph = shape;
    return p;
  }
};

struct ConstructionConfig {
  int n = 0;
  int d_v = 0;          // uniform variable degree
  int m = 0;            // check count
  std::uint64_t seed = 1;
  int max_backtracks = 10000;
};

struct ConstructionLog {
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> choices;  // per variable: selected checks
  int backtracks = 0;
};

inline nlohmann::json to_json(const ConstructionLog& log) {
  return nlohmann::json{
      {"seed", log.seed}, {"choices", log.choices}, {"backtracks", log.backtracks}};
}

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, TannerGraph partial)
      : std::runtime_error(what), partial_graph(std::move(partial)) {}
  TannerGraph partial_graph;
};

/// All embeddings of a forbidden pattern in g. Trapping templates return the
/// census members; the cycle pattern returns, per edge lying on a too-short
/// cycle, the pair {variable, check} closing it.
inline std::vector<std::vector<int>> check_forbidden(const TannerGraph& g,
                                                     const ForbiddenPattern& pattern) {
  std::vector<std::vector<int>> violations;
  if (pattern.kind == ForbiddenPattern::Kind::TrappingTemplate) {
    auto cls = census_trapping_subgraphs(g, pattern.a, pattern.b);
    violations = cls.members;
    return violations;
  }
  // Shortest cycle through each edge (v,c): BFS from v to c avoiding the
  // direct edge; cycle length = dist + 1.
  for (int v = 0; v < g.n; ++v) {
    for (int c : g.var_neighbors[v]) {
      std::vector<int> dist(g.n + g.m, -1);
      std::deque<int> queue{v};
      dist[v] = 0;
      bool found = false;
      while (!queue.empty() && !found) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] + 2 >= pattern.min_girth) break;  // shortest closing cycle >= min_girth
        const bool u_is_check = u >= g.n;
        const auto& nbrs = u_is_check ? g.check_neighbors[u - g.n] : g.var_neighbors[u];
        for (int w : nbrs) {
          const int node = u_is_check ? w : w + g.n;
          if (u == v && node == c + g.n) continue;  // skip the direct edge
          if (node == c + g.n && dist[u] + 1 + 1 < pattern.min_girth) {
            violations.push_back({v, c});
            found = true;
            break;
          }
          if (dist[node] < 0) {
            dist[node] = dist[u] + 1;
            queue.push_back(node);
          }
        }
      }
    }
  }
  return violations;
}

namespace detail {

/// Incremental construction state with variable-adjacency maintenance.
struct PegState {
  int n, m;
  std::vector<std::vector<int>> var_checks;   // per variable
  std::vector<std::vector<int>> check_vars;   // per check
  std::vector<std::vector<int>> var_adj;      // variables sharing a check

  PegState(int n_, int m_) : n(n_), m(m_), var_checks(n_), check_vars(m_), var_adj(n_) {}

  void add_edge(int v, int c) {
    for (int u : check_vars[c]) {
      var_adj[v].push_back(u);
      var_adj[u].push_back(v);
    }
    var_checks[v].push_back(c);
    check_vars[c].push_back(v);
  }

  void remove_last_edges_of(int v) {
    for (int c : var_checks[v]) {
      auto& cv = check_vars[c];
      cv.erase(std::find(cv.begin(), cv.end(), v));
    }
    var_checks[v].clear();
    // Rebuild adjacency rows touching v.
    std::vector<int> touched = var_adj[v];
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    var_adj[v].clear();
    for (int u : touched) {
      auto& row = var_adj[u];
      row.erase(std::remove(row.begin(), row.end(), v), row.end());
    }
  }

  /// BFS distances (in edges) from variable v to every check; -1 = unreachable.
  std::vector<int> check_distances(int v) const {
    std::vector<int> vdist(n, -1), cdist(m, -1);
    std::deque<int> vq{v};
    vdist[v] = 0;
    std::deque<int> frontier_checks;
    while (!vq.empty()) {
      const int u = vq.front();
      vq.pop_front();
      for (int c : var_checks[u]) {
        if (cdist[c] >= 0) continue;
        cdist[c] = vdist[u] + 1;
        for (int w : check_vars[c]) {
          if (vdist[w] >= 0) continue;
          vdist[w] = cdist[c] + 1;
          vq.push_back(w);
        }
      }
    }
    return cdist;
  }

  TannerGraph to_graph() const {
    std::vector<std::vector<int>> checks = check_vars;
    return TannerGraph::from_check_lists(n, std::move(checks));
  }
};

/// Does adding variable v create a forbidden connected (a,b) subgraph
/// containing v? Only sets through v can have changed.
inline bool creates_trapping_violation(const PegState& st, int v, int a, int b) {
  bool violated = false;
  std::vector<std::vector<int>> adj_view(st.var_adj.begin(), st.var_adj.end());
  for (auto& row : adj_view) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  enumerate_connected_subsets_containing(adj_view, v, a, [&](const std::vector<int>& subset) {
    if (violated) return;
    // Classify against the partial graph.
    std::vector<std::pair<int, int>> deg;
    for (int u : subset)
      for (int c : st.var_checks[u]) {
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
    if (odd == b) violated = true;
  });
  return violated;
}

}  // namespace detail

/// Generalized progressive-edge-growth construction: place d_v edges per
/// variable, each time choosing among the checks farthest from the variable
/// in the current graph (unreachable first), lowest current degree, random
/// ties; reject any candidate that closes a too-short cycle or completes a
/// forbidden trapping shape. Dead ends back the variable out and retry with
/// fresh tie-breaks, escalating to earlier variables on repeated failure.
inline TannerGraph peg_construct(const ConstructionConfig& cfg,
                                 const std::vector<ForbiddenPattern>& forbidden,
                                 ConstructionLog* log = nullptr) {
  if (cfg.n < 1 || cfg.d_v < 1 || cfg.m < 1 || cfg.d_v > cfg.m)
    throw std::invalid_argument("peg_construct: infeasible parameters");
  Rng rng(cfg.seed);
  detail::PegState st(cfg.n, cfg.m);

  int min_girth = 0;
  std::vector<std::pair<int, int>> trapping_ab;
  for (const auto& p : forbidden) {
    if (p.kind == ForbiddenPattern::Kind::CycleShorterThan)
      min_girth = std::max(min_girth, p.min_girth);
    else
      trapping_ab.emplace_back(p.a, p.b);
  }

  ConstructionLog local_log;
  local_log.seed = cfg.seed;
  local_log.choices.assign(cfg.n, {});
  int backtracks = 0;
  int stuck_retries = 0;

  for (int v = 0; v < cfg.n;) {
    bool variable_ok = true;
    for (int t = 0; t < cfg.d_v && variable_ok; ++t) {
      const auto cdist = st.check_distances(v);
      // Candidate order: unreachable checks first, then decreasing distance;
      // within a class, lowest degree; ties randomized.
      std::vector<std::pair<long long, int>> ranked;
      ranked.reserve(cfg.m);
      for (int c = 0; c < cfg.m; ++c) {
        if (std::find(st.var_checks[v].begin(), st.var_checks[v].end(), c) !=
            st.var_checks[v].end())
          continue;
        const long long dist_rank = cdist[c] < 0 ? 0 : 1000000LL - cdist[c];
        const long long degree_rank = static_cast<long long>(st.check_vars[c].size());
        const long long tie = static_cast<long long>(rng.uniform_below(1u << 20));
        ranked.emplace_back(((dist_rank * 4096 + degree_rank) << 20) | tie, c);
      }
      std::sort(ranked.begin(), ranked.end());

      bool placed = false;
      for (auto& [rank, c] : ranked) {
        (void)rank;
        if (min_girth > 0 && cdist[c] >= 0 && cdist[c] + 1 < min_girth) continue;
        st.add_edge(v, c);
        bool bad = false;
        for (auto& [a, b] : trapping_ab)
          if (detail::creates_trapping_violation(st, v, a, b)) {
            bad = true;
            break;
          }
        if (bad) {
          st.remove_last_edges_of(v);
          // Re-add the edges placed earlier for this variable.
          // remove_last_edges_of drops all of v's edges, so rebuild them.
          // (Candidates are only tested after t edges are in place.)
          for (int k = 0; k < t; ++k) st.add_edge(v, local_log.choices[v][k]);
          continue;
        }
        local_log.choices[v].push_back(c);
        placed = true;
        break;
      }
      if (!placed) variable_ok = false;
    }

    if (variable_ok) {
      ++v;
      stuck_retries = 0;
      continue;
    }

    // Dead end: clear this variable and retry; after repeated failures also
    // back out the previous variable.
    ++backtracks;
    if (backtracks > cfg.max_backtracks) {
      if (log) {
        *log = local_log;
        log->backtracks = backtracks;
      }
      throw ConstructionError("peg_construct: exceeded max backtracks at variable " +
                                  std::to_string(v),
                              st.to_graph());
    }
    st.remove_last_edges_of(v);
    local_log.choices[v].clear();
    if (++stuck_retries >= 10 && v > 0) {
      stuck_retries = 0;
      --v;
      st.remove_last_edges_of(v);
      local_log.choices[v].clear();
    }
  }

  TannerGraph g = st.to_graph();
  // Independent re-check of every pattern on the finished graph.
  for (const auto& p : forbidden)
    if (!check_forbidden(g, p).empty())
      throw std::logic_error("peg_construct: post-construction forbidden-pattern check failed");
  if (log) {
    *log = local_log;
    log->backtracks = backtracks;
  }
  return g;
}

}  // namespace errorfloor
