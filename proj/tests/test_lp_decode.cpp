#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

#include "errorfloor/gf2.hpp"
#include "errorfloor/lp_decode.hpp"
#include "errorfloor/rng.hpp"
#include "errorfloor/tanner155.hpp"

using namespace errorfloor;

namespace {

TannerGraph random_code(Rng& rng, int max_n = 12) {
  const int n = 4 + static_cast<int>(rng.uniform_below(max_n - 3));
  const int m = 2 + static_cast<int>(rng.uniform_below(4));
  std::vector<std::vector<int>> checks(m);
  for (int a = 0; a < m; ++a) {
    for (int v = 0; v < n; ++v)
      if (rng.bernoulli(0.4)) checks[a].push_back(v);
    if (checks[a].empty()) checks[a].push_back(static_cast<int>(rng.uniform_below(n)));
  }
  return TannerGraph::from_check_lists(n, std::move(checks));
}

LlrVector random_llr(Rng& rng, int n, double shift = 0.0) {
  LlrVector g;
  g.values.resize(n);
  for (auto& v : g.values) v = rng.gaussian() + shift;
  return g;
}

// Brute-force minimum-cost codeword via the GF(2) null-space.
double ml_cost(const TannerGraph& g, const LlrVector& gamma) {
  auto basis = gf2_nullspace_basis(g);
  const int k = static_cast<int>(basis.size());
  REQUIRE(k <= 16);
  double best = 0.0;  // zero codeword
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    BinaryVector cw = BinaryVector::zero(g.n);
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) cw = cw.xored(basis[j]);
    double c = 0.0;
    for (int i : cw.support) c += gamma.values[i];
    best = std::min(best, c);
  }
  return best;
}

// Enumerate the vertices of the fundamental polytope of a tiny instance by
// scanning all basis subsets of the equality system. Returns the minimum cost
// over nonzero vertices (+inf when none exists).
double min_cost_nonzero_vertex(const LcLpInstance& inst, const LlrVector& gamma) {
  const int rows = inst.num_rows;
  const int cols = inst.num_cols;
  REQUIRE(cols <= 20);
  std::vector<std::vector<double>> A(rows, std::vector<double>(cols, 0.0));
  for (int j = 0; j < cols; ++j)
    for (auto& [r, v] : inst.cols[j].entries) A[r][j] = v;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == rows) {
      // Solve A[:, pick] x = rhs.
      std::vector<std::vector<double>> M(rows, std::vector<double>(rows + 1, 0.0));
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < rows; ++c) M[r][c] = A[r][pick[c]];
        M[r][rows] = inst.rhs[r];
      }
      for (int c = 0; c < rows; ++c) {
        int piv = -1;
        double mag = 1e-9;
        for (int r = c; r < rows; ++r)
          if (std::fabs(M[r][c]) > mag) {
            mag = std::fabs(M[r][c]);
            piv = r;
          }
        if (piv < 0) return;  // singular
        std::swap(M[c], M[piv]);
        for (int r = 0; r < rows; ++r) {
          if (r == c) continue;
          const double f = M[r][c] / M[c][c];
          if (f == 0.0) continue;
          for (int j = c; j <= rows; ++j) M[r][j] -= f * M[c][j];
        }
      }
      std::vector<double> x(cols, 0.0);
      for (int c = 0; c < rows; ++c) x[pick[c]] = M[c][rows] / M[c][c];
      for (double v : x)
        if (v < -1e-9 || v > 1.0 + 1e-9) return;  // infeasible basic solution
      double cost_here = 0.0;
      bool nonzero = false;
      for (int i = 0; i < inst.n; ++i) {
        cost_here += gamma.values[i] * x[i];
        if (std::fabs(x[i]) > 1e-7) nonzero = true;
      }
      if (nonzero) best = std::min(best, cost_here);
      return;
    }
    if (start >= cols) return;
    if (cols - start < rows - static_cast<int>(pick.size())) return;
    pick.push_back(start);
    rec(start + 1);
    pick.pop_back();
    rec(start + 1);
  };
  rec(0);
  return best;
}

int w_bsc_oracle(const std::vector<double>& p) {
  auto s = p;
  std::sort(s.begin(), s.end());
  std::reverse(s.begin(), s.end());
  double total = 0.0;
  for (double v : s) total += v;
  double acc = 0.0;
  int e = 0;
  while (acc < total / 2.0 - 1e-9 * std::max(1.0, total)) acc += s[e++];
  return std::fabs(acc - total / 2.0) <= 1e-9 * std::max(1.0, total) ? 2 * e : 2 * e - 1;
}

double w_awgn_oracle(const std::vector<double>& p) {
  double s = std::accumulate(p.begin(), p.end(), 0.0);
  double ss = 0.0;
  for (double v : p) ss += v * v;
  return s * s / ss;
}

std::vector<int> median_oracle(const std::vector<double>& p) {
  const int e = (w_bsc_oracle(p) + 2) / 2;
  std::vector<int> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return p[i] != p[j] ? p[i] > p[j] : i < j;
  });
  std::vector<int> supp(idx.begin(), idx.begin() + e);
  std::sort(supp.begin(), supp.end());
  return supp;
}

}  // namespace

TEST_CASE("simplex solves, detects infeasible and unbounded") {
  // min -x s.t. x + s = 1.
  {
    std::vector<SparseColumn> cols(2);
    cols[0].entries = {{0, 1.0}};
    cols[1].entries = {{0, 1.0}};
    SimplexSolver s(1, cols, {1.0});
    CHECK(s.optimize({-1.0, 0.0}) == LpStatus::Optimal);
    CHECK(s.objective({-1.0, 0.0}) == Catch::Approx(-1.0));
  }
  {
    std::vector<SparseColumn> cols(2);
    cols[0].entries = {{0, 1.0}, {1, 1.0}};
    cols[1].entries = {{0, 1.0}, {1, 1.0}};
    SimplexSolver s(2, cols, {1.0, 3.0});
    CHECK(s.optimize({0.0, 0.0}) == LpStatus::Infeasible);
  }
  {
    std::vector<SparseColumn> cols(2);
    cols[0].entries = {{0, 1.0}};
    cols[1].entries = {{0, -1.0}};
    SimplexSolver s(1, cols, {0.0});
    CHECK(s.optimize({-1.0, 0.0}) == LpStatus::Unbounded);
  }
}

TEST_CASE("build_lclp layout and degree cap") {
  TannerGraph single = TannerGraph::from_check_lists(3, {{0, 1, 2}});
  auto inst = build_lclp(single);
  CHECK(inst.subsets[0].size() == 4);  // even subsets of a 3-set
  CHECK(inst.num_cols == 3 + 4);
  CHECK(inst.num_rows == 1 + 3);

  TannerGraph t155 = build_tanner_155();
  auto big = build_lclp(t155);
  CHECK(big.num_cols == 155 + 93 * 16);
  CHECK(big.num_rows == 93 + 465);

  std::vector<int> wide(13);
  std::iota(wide.begin(), wide.end(), 0);
  TannerGraph d13 = TannerGraph::from_check_lists(13, {wide});
  CHECK_THROWS_AS(build_lclp(d13), std::invalid_argument);
}

TEST_CASE("lp_solve: all-positive LLR returns the zero codeword") {
  TannerGraph t155 = build_tanner_155();
  auto inst = build_lclp(t155);
  LlrVector gamma;
  gamma.values.assign(155, 2.0);
  auto res = lp_solve(inst, gamma);
  CHECK(res.pseudo_codeword.is_zero());
  CHECK(res.objective == Catch::Approx(0.0).margin(1e-9));
  CHECK(res.integral);
  CHECK(!res.failure());
}

TEST_CASE("lp_solve on a single parity check matches vertex enumeration") {
  TannerGraph g = TannerGraph::from_check_lists(3, {{0, 1, 2}});
  auto inst = build_lclp(g);
  LlrVector gamma;
  gamma.values = {-1.0, 0.4, 0.6};
  auto res = lp_solve(inst, gamma);
  CHECK(res.objective == Catch::Approx(-0.6));
  CHECK(res.pseudo_codeword.f[0] == Catch::Approx(1.0));
  CHECK(res.pseudo_codeword.f[1] == Catch::Approx(1.0));
  CHECK(res.pseudo_codeword.f[2] == Catch::Approx(0.0).margin(1e-9));
  CHECK(res.integral);
}

TEST_CASE("LP objective is never positive (zero is feasible)") {
  Rng rng(2024);
  for (int t = 0; t < 30; ++t) {
    TannerGraph g = random_code(rng);
    auto inst = build_lclp(g);
    auto gamma = random_llr(rng, g.n, 0.4);
    auto res = lp_solve(inst, gamma);
    CHECK(res.objective <= 1e-9);
    CHECK(check_feasibility(inst, res.pseudo_codeword, res.aux) <= kFeasibilityTol);
  }
}

TEST_CASE("ML certificate: integral outputs are maximum-likelihood") {
  Rng rng(99);
  int integral_seen = 0;
  for (int t = 0; t < 60; ++t) {
    TannerGraph g = random_code(rng);
    auto inst = build_lclp(g);
    auto gamma = random_llr(rng, g.n);
    auto res = lp_solve(inst, gamma);
    CHECK(check_feasibility(inst, res.pseudo_codeword, res.aux) <= kFeasibilityTol);
    if (!res.integral) continue;
    ++integral_seen;
    CHECK(res.objective == Catch::Approx(ml_cost(g, gamma)).margin(1e-7));
    // The rounded output is a codeword.
    std::vector<int> supp;
    for (int i = 0; i < g.n; ++i)
      if (res.pseudo_codeword.f[i] > 0.5) supp.push_back(i);
    CHECK(is_codeword(g, BinaryVector(g.n, supp)));
  }
  CHECK(integral_seen > 10);
}

TEST_CASE("failure criterion matches polytope vertex enumeration on tiny codes") {
  Rng rng(7);
  int failures_seen = 0;
  for (int t = 0; t < 40; ++t) {
    const int n = 4 + static_cast<int>(rng.uniform_below(3));
    std::vector<std::vector<int>> checks(2);
    for (int a = 0; a < 2; ++a) {
      while (checks[a].size() != 3) {
        const int v = static_cast<int>(rng.uniform_below(n));
        if (std::find(checks[a].begin(), checks[a].end(), v) == checks[a].end())
          checks[a].push_back(v);
      }
      std::sort(checks[a].begin(), checks[a].end());
    }
    TannerGraph g = TannerGraph::from_check_lists(n, checks);
    auto inst = build_lclp(g);
    auto gamma = random_llr(rng, g.n);
    auto res = lp_solve(inst, gamma);
    const double oracle = min_cost_nonzero_vertex(inst, gamma);
    if (res.failure()) {
      ++failures_seen;
      CHECK(oracle <= 1e-7);
    } else {
      // Successful decode: no nonzero vertex at or below cost zero (up to tie
      // tolerance for degenerate optima).
      CHECK(oracle > -1e-7);
    }
  }
  CHECK(failures_seen > 0);
}

TEST_CASE("LP output invariant under positive scaling of gamma") {
  Rng rng(512);
  for (int t = 0; t < 10; ++t) {
    TannerGraph g = random_code(rng);
    auto inst = build_lclp(g);
    auto gamma = random_llr(rng, g.n);
    auto base = lp_solve(inst, gamma);
    for (double lambda : {0.1, 10.0}) {
      LlrVector scaled;
      scaled.values = gamma.values;
      for (auto& v : scaled.values) v *= lambda;
      auto res = lp_solve(inst, scaled);
      CHECK(res.pseudo_codeword.linf_distance(base.pseudo_codeword) <= kIntegralTol);
    }
  }
}

TEST_CASE("warm-started decoder agrees with cold solves") {
  TannerGraph t155 = build_tanner_155();
  auto inst = build_lclp(t155);
  LpDecoder warm(inst);
  Rng rng(88);
  for (int t = 0; t < 5; ++t) {
    auto gamma = random_llr(rng, 155, 0.5);
    auto a = warm.decode(gamma);
    auto b = lp_solve(inst, gamma);
    CHECK(a.objective == Catch::Approx(b.objective).margin(1e-7));
    CHECK(a.pseudo_codeword.linf_distance(b.pseudo_codeword) <= 1e-6);
  }
}

TEST_CASE("snapshot/restore reproduces solves exactly") {
  TannerGraph t155 = build_tanner_155();
  auto inst = build_lclp(t155);
  auto start = canonical_start(inst);

  Rng rng(4242);
  auto gamma = random_llr(rng, 155, -0.2);

  LpDecoder d1(inst);
  d1.restore(start);
  auto r1 = d1.decode(gamma);

  LpDecoder d2(inst);
  d2.decode(random_llr(rng, 155, 0.3));  // contaminate history
  d2.restore(start);
  auto r2 = d2.decode(gamma);

  CHECK(r1.pseudo_codeword.f == r2.pseudo_codeword.f);
  CHECK(r1.solver_stats.pivots == r2.solver_stats.pivots);
}

TEST_CASE("pseudo-codeword cost") {
  LlrVector gamma;
  gamma.values = {1.0, -2.0};
  PseudoCodeword p{{0.5, 0.5}};
  CHECK(cost(gamma, p) == Catch::Approx(-0.5));
  PseudoCodeword zero{{0.0, 0.0}};
  CHECK(cost(gamma, zero) == 0.0);
  PseudoCodeword wrong{{0.1, 0.2, 0.3}};
  CHECK_THROWS_AS(cost(gamma, wrong), std::invalid_argument);
}

TEST_CASE("w_bsc on hand cases") {
  // Codeword indicators: weight d for both parities of d.
  PseudoCodeword even{{1, 1, 1, 1, 0, 0}};
  CHECK(w_bsc(even) == 4);
  PseudoCodeword odd{{1, 1, 1, 0, 0}};
  CHECK(w_bsc(odd) == 3);
  PseudoCodeword frac{{1.0, 1.0, 0.5, 0.5, 0.5}};
  CHECK(w_bsc(frac) == 3);
  PseudoCodeword zero{{0.0, 0.0}};
  CHECK_THROWS_AS(w_bsc(zero), std::invalid_argument);
}

TEST_CASE("w_awgn on hand cases") {
  PseudoCodeword ind{{1, 0, 1, 1, 0}};
  CHECK(w_awgn(ind) == Catch::Approx(3.0));
  PseudoCodeword p{{1.0, 0.5}};
  CHECK(w_awgn(p) == Catch::Approx(1.8));
  PseudoCodeword zero{{0.0}};
  CHECK_THROWS_AS(w_awgn(zero), std::invalid_argument);
}

TEST_CASE("median on hand cases") {
  PseudoCodeword frac{{1.0, 1.0, 0.5, 0.5, 0.5}};
  auto m = median(frac);
  CHECK(m.support == std::vector<int>{0, 1});

  // Odd-weight indicator: ties resolved toward the lowest indices.
  PseudoCodeword odd{{0, 1, 1, 1, 0, 1, 1}};
  auto m2 = median(odd);  // w = 5, e = 3 lowest-index ones
  CHECK(m2.support == std::vector<int>{1, 2, 3});
}

TEST_CASE("weight and median agree with independent reimplementations") {
  Rng rng(31337);
  for (int t = 0; t < 10000; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform_below(12));
    std::vector<double> p(n);
    bool nonzero = false;
    for (auto& v : p) {
      v = rng.bernoulli(0.3) ? 0.0 : rng.uniform();
      if (v != 0.0) nonzero = true;
    }
    if (!nonzero) p[rng.uniform_below(n)] = 0.5;
    PseudoCodeword pc{p};
    CHECK(w_bsc(pc) == w_bsc_oracle(p));
    CHECK(w_awgn(pc) == Catch::Approx(w_awgn_oracle(p)).epsilon(1e-12));
    CHECK(median(pc).support == median_oracle(p));
  }
}

TEST_CASE("LP text dump has the documented shape") {
  TannerGraph g = TannerGraph::from_check_lists(3, {{0, 1, 2}});
  auto inst = build_lclp(g);
  LlrVector gamma;
  gamma.values = {-1.0, 0.4, 0.6};
  std::ostringstream ss;
  write_lp(inst, gamma, ss);
  const std::string text = ss.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("sum_c0: w_c0_s0 + w_c0_s1 + w_c0_s2 + w_c0_s3 = 1") != std::string::npos);
  CHECK(text.find("edge_c0_v0: f0") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}
