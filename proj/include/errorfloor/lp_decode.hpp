#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "errorfloor/channel.hpp"
#include "errorfloor/simplex.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

inline constexpr double kIntegralTol = 1e-6;   // f within this of {0,1} counts as integral
inline constexpr double kFeasibilityTol = 1e-8;

class LpSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rescaled pseudo-codeword: the f part of an LCLP solution, entries in [0,1].
struct PseudoCodeword {
  std::vector<double> f;

  int length() const { return static_cast<int>(f.size()); }

  bool is_zero(double tol = kIntegralTol) const {
    for (double v : f)
      if (std::fabs(v) > tol) return false;
    return true;
  }

  double linf_distance(const PseudoCodeword& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::fabs(f[i] - other.f[i]));
    return d;
  }
};

/// The linear-code linear program over the fundamental polytope:
///   minimize sum_i gamma_i f_i  subject to, for every check a,
///     0 <= f_i <= 1, 0 <= w_{a,T} <= 1,
///     sum_{T in E_a} w_{a,T} = 1,
///     f_i = sum_{T in E_a, T contains i} w_{a,T}  for i in N(a),
/// with E_a the even-cardinality subsets of N(a). Columns are the n
/// f-variables followed by the per-check w blocks; rows are the m per-check
/// normalization rows followed by one coupling row per (check, neighbor).
/// Upper bounds need no explicit rows: w <= 1 follows from the normalization
/// row and f_i <= 1 from any coupling row. A degree-0 variable (never present
/// in real codes) gets one extra bound row with a slack column.
struct LcLpInstance {
  TannerGraph graph;
  int degree_cap = 12;

  int n = 0, m = 0;
  int num_cols = 0, num_rows = 0;
  std::vector<int> w_offset;                   // per check: first w column
  std::vector<std::vector<std::uint16_t>> subsets;  // per check: even-subset masks
  std::vector<int> edge_row_offset;            // per check: first coupling row
  std::vector<SparseColumn> cols;
  std::vector<double> rhs;
  int slack_cols = 0;
};

inline LcLpInstance build_lclp(const TannerGraph& g, int degree_cap = 12) {
  if (g.max_check_degree() > degree_cap)
    throw std::invalid_argument("build_lclp: check degree " +
                                std::to_string(g.max_check_degree()) + " exceeds cap " +
                                std::to_string(degree_cap));
  LcLpInstance inst;
  inst.graph = g;
  inst.degree_cap = degree_cap;
  inst.n = g.n;
  inst.m = g.m;

  inst.w_offset.resize(g.m);
  inst.subsets.resize(g.m);
  inst.edge_row_offset.resize(g.m);
  int col = g.n;
  int row = g.m;
  for (int a = 0; a < g.m; ++a) {
    const int d = g.check_degree(a);
    inst.w_offset[a] = col;
    auto& masks = inst.subsets[a];
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
      if (__builtin_popcount(mask) % 2 == 0) masks.push_back(static_cast<std::uint16_t>(mask));
    col += static_cast<int>(masks.size());
    inst.edge_row_offset[a] = row;
    row += d;
  }
  inst.num_cols = col;
  inst.num_rows = row;

  inst.cols.assign(inst.num_cols, {});
  inst.rhs.assign(inst.num_rows, 0.0);
  for (int a = 0; a < g.m; ++a) inst.rhs[a] = 1.0;

  for (int a = 0; a < g.m; ++a) {
    const auto& vars = g.check_neighbors[a];
    const int d = static_cast<int>(vars.size());
    for (int t = 0; t < d; ++t) {
      // Coupling row: f_{vars[t]} - sum_{T ni t} w_{a,T} = 0.
      inst.cols[vars[t]].entries.emplace_back(inst.edge_row_offset[a] + t, 1.0);
    }
    for (std::size_t k = 0; k < inst.subsets[a].size(); ++k) {
      const int wcol = inst.w_offset[a] + static_cast<int>(k);
      inst.cols[wcol].entries.emplace_back(a, 1.0);
      const std::uint16_t mask = inst.subsets[a][k];
      for (int t = 0; t < d; ++t)
        if (mask & (1u << t)) inst.cols[wcol].entries.emplace_back(inst.edge_row_offset[a] + t, -1.0);
    }
  }
  // Bound rows for isolated variables: f_i + s = 1.
  for (int i = 0; i < g.n; ++i) {
    if (g.var_degree(i) > 0) continue;
    inst.cols[i].entries.emplace_back(inst.num_rows, 1.0);
    SparseColumn slack;
    slack.entries.emplace_back(inst.num_rows, 1.0);
    inst.cols.push_back(slack);
    inst.rhs.push_back(1.0);
    ++inst.num_rows;
    ++inst.num_cols;
    ++inst.slack_cols;
  }
  return inst;
}

struct LpResult {
  PseudoCodeword pseudo_codeword;
  double objective = 0.0;
  bool integral = false;
  std::vector<double> aux;  // w values, instance column order
  struct SolverStats {
    int pivots = 0;
    std::string status;
  } solver_stats;

  /// LP decoding fails on an input iff the optimal pseudo-codeword is nonzero
  /// (cost <= 0 is then attained by a nonzero point of the polytope).
  bool failure() const { return !pseudo_codeword.is_zero(); }
};

/// One decoder per worker. The embedded simplex keeps its basis between
/// decodes, so successive solves on the same polytope warm-start; a snapshot
/// of the solved state can be exported and installed to make any trial's
/// starting point independent of solver history.
class LpDecoder {
 public:
  using Snapshot = SimplexSolver::State;

  explicit LpDecoder(const LcLpInstance& inst)
      : inst_(&inst), solver_(inst.num_rows, inst.cols, inst.rhs) {}

  const LcLpInstance& instance() const { return *inst_; }

  LpResult decode(const LlrVector& gamma) {
    if (gamma.length() != inst_->n) throw std::invalid_argument("lp decode: gamma length");
    for (double v : gamma.values)
      if (!std::isfinite(v)) throw std::invalid_argument("lp decode: gamma must be finite");
    costs_.assign(inst_->num_cols, 0.0);
    for (int i = 0; i < inst_->n; ++i) costs_[i] = gamma.values[i];
    const LpStatus st = solver_.optimize(costs_);
    if (st != LpStatus::Optimal)
      throw LpSolverError(std::string("lp decode: solver returned ") + to_string(st));
    const auto x = solver_.solution();
    LpResult res;
    res.pseudo_codeword.f.assign(x.begin(), x.begin() + inst_->n);
    for (double& v : res.pseudo_codeword.f) v = std::min(1.0, std::max(0.0, v));
    res.aux.assign(x.begin() + inst_->n, x.begin() + (inst_->num_cols - inst_->slack_cols));
    res.objective = 0.0;
    for (int i = 0; i < inst_->n; ++i) res.objective += gamma.values[i] * res.pseudo_codeword.f[i];
    res.integral = true;
    for (double v : res.pseudo_codeword.f)
      if (std::fabs(v) > kIntegralTol && std::fabs(v - 1.0) > kIntegralTol) {
        res.integral = false;
        break;
      }
    res.solver_stats.pivots = solver_.pivots_last();
    res.solver_stats.status = to_string(st);
    return res;
  }

  Snapshot snapshot() const { return solver_.export_state(); }
  void restore(const Snapshot& snap) { solver_.import_state(snap); }

 private:
  const LcLpInstance* inst_;
  SimplexSolver solver_;
  std::vector<double> costs_;
};

/// Solved-state snapshot for an all-positive objective (the zero codeword is
/// then optimal). Computed once per instance and installed into fresh
/// decoders so every trial starts from the same canonical basis.
inline LpDecoder::Snapshot canonical_start(const LcLpInstance& inst) {
  LpDecoder dec(inst);
  LlrVector ones;
  ones.values.assign(inst.n, 1.0);
  dec.decode(ones);
  return dec.snapshot();
}

inline LpResult lp_solve(const LcLpInstance& inst, const LlrVector& gamma) {
  LpDecoder dec(inst);
  return dec.decode(gamma);
}

/// cost(gamma, p) = sum_i gamma_i p_i.
inline double cost(const LlrVector& gamma, const PseudoCodeword& p) {
  if (gamma.length() != p.length()) throw std::invalid_argument("cost: length mismatch");
  double c = 0.0;
  for (int i = 0; i < p.length(); ++i) c += gamma.values[i] * p.f[i];
  return c;
}

/// BSC pseudo-codeword weight: with e the smallest number such that the sum
/// of the e largest components reaches half the total, the weight is 2e on
/// exact equality and 2e-1 otherwise.
inline int w_bsc(const PseudoCodeword& p) {
  if (p.is_zero(0.0) || p.length() == 0)
    throw std::invalid_argument("w_bsc: zero pseudo-codeword");
  std::vector<double> sorted = p.f;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  const double half = total / 2.0;
  const double tol = 1e-9 * std::max(1.0, total);
  double prefix = 0.0;
  for (int e = 1; e <= static_cast<int>(sorted.size()); ++e) {
    prefix += sorted[e - 1];
    if (prefix >= half - tol) {
      if (std::fabs(prefix - half) <= tol) return 2 * e;
      return 2 * e - 1;
    }
  }
  throw std::logic_error("w_bsc: prefix never reached half");
}

/// AWGN pseudo-codeword weight (sum p)^2 / (sum p^2).
inline double w_awgn(const PseudoCodeword& p) {
  if (p.is_zero(0.0) || p.length() == 0)
    throw std::invalid_argument("w_awgn: zero pseudo-codeword");
  double s = 0.0, ss = 0.0;
  for (double v : p.f) {
    s += v;
    ss += v * v;
  }
  return s * s / ss;
}

/// Median noise vector: indicator of the ceil((w_bsc+1)/2) largest
/// components, value ties broken toward the lowest index.
inline BinaryVector median(const PseudoCodeword& p) {
  const int w = w_bsc(p);
  const int e = (w + 2) / 2;  // ceil((w+1)/2)
  std::vector<int> order(p.length());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (p.f[i] != p.f[j]) return p.f[i] > p.f[j];
    return i < j;
  });
  std::vector<int> support(order.begin(), order.begin() + e);
  return BinaryVector(p.length(), std::move(support));
}

/// Largest violation of the polytope constraints by (f, w); callers compare
/// against kFeasibilityTol. Independent of the solver.
inline double check_feasibility(const LcLpInstance& inst, const PseudoCodeword& p,
                                const std::vector<double>& aux) {
  if (p.length() != inst.n || static_cast<int>(aux.size()) !=
                                  inst.num_cols - inst.n - inst.slack_cols)
    throw std::invalid_argument("check_feasibility: size mismatch");
  double worst = 0.0;
  auto bound = [&](double v) {
    worst = std::max(worst, -v);
    worst = std::max(worst, v - 1.0);
  };
  for (double v : p.f) bound(v);
  for (double v : aux) bound(v);
  for (int a = 0; a < inst.m; ++a) {
    const auto& vars = inst.graph.check_neighbors[a];
    const int d = static_cast<int>(vars.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < inst.subsets[a].size(); ++k)
      sum += aux[inst.w_offset[a] - inst.n + static_cast<int>(k)];
    worst = std::max(worst, std::fabs(sum - 1.0));
    for (int t = 0; t < d; ++t) {
      double couple = 0.0;
      for (std::size_t k = 0; k < inst.subsets[a].size(); ++k)
        if (inst.subsets[a][k] & (1u << t))
          couple += aux[inst.w_offset[a] - inst.n + static_cast<int>(k)];
      worst = std::max(worst, std::fabs(p.f[vars[t]] - couple));
    }
  }
  return worst;
}

/// Text dump in CPLEX LP format. Variables are named f<i> and w_c<a>_s<k>
/// where k is the ordinal of the even subset in mask order.
inline void write_lp(const LcLpInstance& inst, const LlrVector& gamma, std::ostream& out) {
  if (gamma.length() != inst.n) throw std::invalid_argument("write_lp: gamma length");
  out << "\\ LCLP over the fundamental polytope: n=" << inst.n << " m=" << inst.m << "\n";
  out << "Minimize\n obj:";
  bool first = true;
  for (int i = 0; i < inst.n; ++i) {
    const double c = gamma.values[i];
    if (c == 0.0) continue;
    out << (first ? " " : (c >= 0 ? " + " : " ")) << c << " f" << i;
    first = false;
  }
  if (first) out << " 0 f0";
  out << "\nSubject To\n";
  for (int a = 0; a < inst.m; ++a) {
    out << " sum_c" << a << ":";
    for (std::size_t k = 0; k < inst.subsets[a].size(); ++k)
      out << (k ? " + " : " ") << "w_c" << a << "_s" << k;
    out << " = 1\n";
    const auto& vars = inst.graph.check_neighbors[a];
    for (std::size_t t = 0; t < vars.size(); ++t) {
      out << " edge_c" << a << "_v" << vars[t] << ": f" << vars[t];
      for (std::size_t k = 0; k < inst.subsets[a].size(); ++k)
        if (inst.subsets[a][k] & (1u << t)) out << " - w_c" << a << "_s" << k;
      out << " = 0\n";
    }
  }
  out << "Bounds\n";
  for (int i = 0; i < inst.n; ++i) out << " 0 <= f" << i << " <= 1\n";
  for (int a = 0; a < inst.m; ++a)
    for (std::size_t k = 0; k < inst.subsets[a].size(); ++k)
      out << " 0 <= w_c" << a << "_s" << k << " <= 1\n";
  out << "End\n";
}

}  // namespace errorfloor
