#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "errorfloor/rng.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {
namespace gf2 {

/// Packed GF(2) row, 64 columns per word.
using Row = std::vector<std::uint64_t>;

inline int words_for(int cols) { return (cols + 63) / 64; }

inline void set_bit(Row& r, int c) { r[c >> 6] ^= (1ULL << (c & 63)); }
inline bool get_bit(const Row& r, int c) { return (r[c >> 6] >> (c & 63)) & 1ULL; }

inline void xor_into(Row& dst, const Row& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

inline std::vector<Row> rows_from_graph(const TannerGraph& g) {
  std::vector<Row> rows(g.m, Row(words_for(g.n), 0));
  for (int a = 0; a < g.m; ++a)
    for (int v : g.check_neighbors[a]) set_bit(rows[a], v);
  return rows;
}

/// Row-reduce in place; returns rank. pivot_cols (optional) receives the
/// pivot column of each of the first `rank` rows.
inline int eliminate(std::vector<Row>& rows, int cols, std::vector<int>* pivot_cols = nullptr) {
  int rank = 0;
  if (pivot_cols) pivot_cols->clear();
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (get_bit(rows[r], c)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && get_bit(rows[r], c)) xor_into(rows[r], rows[rank]);
    if (pivot_cols) pivot_cols->push_back(c);
    ++rank;
  }
  return rank;
}

}  // namespace gf2

/// Rank of the m x n biadjacency matrix over GF(2).
inline int gf2_rank(const TannerGraph& g) {
  auto rows = gf2::rows_from_graph(g);
  return gf2::eliminate(rows, g.n);
}

/// Basis of the code (null space of H), n - rank vectors.
inline std::vector<BinaryVector> gf2_nullspace_basis(const TannerGraph& g) {
  auto rows = gf2::rows_from_graph(g);
  std::vector<int> pivot_cols;
  const int rank = gf2::eliminate(rows, g.n, &pivot_cols);

  std::vector<bool> is_pivot(g.n, false);
  for (int c : pivot_cols) is_pivot[c] = true;
  std::vector<BinaryVector> basis;
  basis.reserve(g.n - rank);
  for (int free_col = 0; free_col < g.n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<int> support{free_col};
    for (int r = 0; r < rank; ++r)
      if (gf2::get_bit(rows[r], free_col)) support.push_back(pivot_cols[r]);
    basis.emplace_back(g.n, std::move(support));
  }
  return basis;
}

/// Randomized information-set probe for a codeword of weight <= max_weight.
/// Finds low-weight codewords with high probability given enough rounds;
/// returning nullopt is not a proof of absence.
inline std::optional<BinaryVector> find_low_weight_codeword(const TannerGraph& g,
                                                            int max_weight, int rounds,
                                                            Rng& rng) {
  const int k_words = gf2::words_for(g.n);
  std::optional<BinaryVector> best;
  int best_weight = max_weight + 1;
  std::vector<int> perm(g.n);
  for (int i = 0; i < g.n; ++i) perm[i] = i;

  for (int round = 0; round < rounds; ++round) {
    for (int i = g.n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.uniform_below(static_cast<std::uint64_t>(i + 1))]);
    std::vector<gf2::Row> rows(g.m, gf2::Row(k_words, 0));
    for (int a = 0; a < g.m; ++a)
      for (int v : g.check_neighbors[a]) gf2::set_bit(rows[a], perm[v]);
    std::vector<int> pivot_cols;
    const int rank = gf2::eliminate(rows, g.n, &pivot_cols);

    std::vector<bool> is_pivot(g.n, false);
    for (int c : pivot_cols) is_pivot[c] = true;
    for (int free_col = 0; free_col < g.n; ++free_col) {
      if (is_pivot[free_col]) continue;
      int w = 1;
      for (int r = 0; r < rank && w <= best_weight; ++r)
        if (gf2::get_bit(rows[r], free_col)) ++w;
      if (w < best_weight) {
        std::vector<int> support{free_col};
        for (int r = 0; r < rank; ++r)
          if (gf2::get_bit(rows[r], free_col)) support.push_back(pivot_cols[r]);
        // Undo the permutation.
        std::vector<int> inv(g.n);
        for (int i = 0; i < g.n; ++i) inv[perm[i]] = i;
        std::vector<int> orig;
        orig.reserve(support.size());
        for (int c : support) orig.push_back(inv[c]);
        best = BinaryVector(g.n, std::move(orig));
        best_weight = w;
      }
    }
    if (best_weight <= max_weight && best) break;
  }
  if (best && best->weight() <= max_weight) return best;
  return std::nullopt;
}

}  // namespace errorfloor
