#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "errorfloor/gf2.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

/// Quasi-cyclic layout: an r x c array of block_size x block_size circulant
/// permutation blocks, block (i,j) shifting by shifts[i][j].
struct CirculantSpec {
  int block_size = 0;
  std::vector<std::vector<int>> shifts;  // row-major, one entry per block

  void validate() const {
    if (block_size < 1) throw std::invalid_argument("CirculantSpec: block_size must be positive");
    for (const auto& row : shifts) {
      if (row.size() != shifts.front().size())
        throw std::invalid_argument("CirculantSpec: ragged shift matrix");
      for (int s : row)
        if (s < 0 || s >= block_size)
          throw std::invalid_argument("CirculantSpec: shift out of [0, block_size)");
    }
  }
};

/// Assemble the Tanner graph of the parity-check matrix described by `spec`.
/// Check (i*b + r) is adjacent to variable (j*b + ((r + shift) mod b)) for
/// every block (i,j) and block row r.
inline TannerGraph build_from_circulants(const CirculantSpec& spec) {
  spec.validate();
  const int b = spec.block_size;
  const int block_rows = static_cast<int>(spec.shifts.size());
  const int block_cols = block_rows ? static_cast<int>(spec.shifts.front().size()) : 0;
  std::vector<std::vector<int>> checks(block_rows * b);
  for (int i = 0; i < block_rows; ++i)
    for (int r = 0; r < b; ++r) {
      auto& lst = checks[i * b + r];
      for (int j = 0; j < block_cols; ++j)
        lst.push_back(j * b + (r + spec.shifts[i][j]) % b);
    }
  return TannerGraph::from_check_lists(block_cols * b, std::move(checks));
}

inline CirculantSpec tanner_155_spec() {
  CirculantSpec spec;
  spec.block_size = 31;
  spec.shifts.assign(3, std::vector<int>(5, 0));
  // shift(i,j) = 5^i * 2^j mod 31; 2 has order 5 and 5 has order 3 mod 31.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) {
      long s = 1;
      for (int k = 0; k < i; ++k) s = (s * 5) % 31;
      for (int k = 0; k < j; ++k) s = (s * 2) % 31;
      spec.shifts[i][j] = static_cast<int>(s);
    }
  return spec;
}

/// The (3,5)-regular [155,64] quasi-cyclic code with girth 8. The assembled
/// graph is self-checked: (3,5) regularity, girth 8, GF(2) rank 91.
inline TannerGraph build_tanner_155() {
  TannerGraph g = build_from_circulants(tanner_155_spec());
  if (g.n != 155 || g.m != 93) throw std::logic_error("tanner155: wrong dimensions");
  for (int i = 0; i < g.n; ++i)
    if (g.var_degree(i) != 3) throw std::logic_error("tanner155: variable degree != 3");
  for (int a = 0; a < g.m; ++a)
    if (g.check_degree(a) != 5) throw std::logic_error("tanner155: check degree != 5");
  const auto gr = girth(g);
  if (!gr || *gr != 8)
    throw std::logic_error("tanner155: girth check failed (got " +
                           (gr ? std::to_string(*gr) : std::string("inf")) + ")");
  if (gf2_rank(g) != 91) throw std::logic_error("tanner155: rank check failed");
  return g;
}

}  // namespace errorfloor
