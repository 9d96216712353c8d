#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "errorfloor/rng.hpp"

namespace errorfloor {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

/// One column of the constraint matrix in (row, value) form.
struct SparseColumn {
  std::vector<std::pair<int, double>> entries;
};

/// Revised primal simplex for min c'x s.t. Ax = b, x >= 0 with b >= 0,
/// dense explicit basis inverse. Dantzig pricing with an automatic switch to
/// Bland's rule on degenerate stalls, which guarantees termination.
///
/// Degeneracy is handled by solving against a deterministically perturbed
/// right-hand side (every basic solution becomes simple, so every pivot makes
/// strict progress); the reported solution is re-extracted against the true b
/// from the final basis, whose optimality does not depend on b. If the final
/// basis is not feasible for the true b the perturbation is shrunk and the
/// solve continues; the last resort is an unperturbed Bland run.
///
/// The object is reusable: the basis factorization persists across calls to
/// optimize(), so re-solving with a new cost vector warm-starts from the
/// previous optimal basis (it stays primal feasible since A and b are fixed).
class SimplexSolver {
 public:
  SimplexSolver(int rows, std::vector<SparseColumn> cols, std::vector<double> b)
      : m_(rows), ncols_(static_cast<int>(cols.size())), cols_(std::move(cols)),
        b_(std::move(b)) {
    if (static_cast<int>(b_.size()) != m_) throw std::invalid_argument("simplex: b size");
    for (double v : b_)
      if (v < 0.0) throw std::invalid_argument("simplex: requires b >= 0");
    for (const auto& col : cols_)
      for (auto& [r, v] : col.entries) {
        (void)v;
        if (r < 0 || r >= m_) throw std::invalid_argument("simplex: row index out of range");
      }
    set_perturbation(kPerturb);
  }

  int rows() const { return m_; }
  int columns() const { return ncols_; }

  /// Minimize costs'x. Returns the status; on Optimal the solution is available
  /// through solution()/objective(). First call runs phase 1 from the
  /// all-artificial basis; later calls reuse the current basis.
  LpStatus optimize(const std::vector<double>& costs) {
    if (static_cast<int>(costs.size()) != ncols_)
      throw std::invalid_argument("simplex: cost size");
    pivots_last_ = 0;
    if (basis_.empty()) {
      const LpStatus ph1 = run_phase1();
      if (ph1 != LpStatus::Optimal) return ph1;
    }
    LpStatus st = run(costs, /*phase1=*/false);
    if (st != LpStatus::Optimal) return st;
    // Re-extract against the true b; shrink the perturbation if the optimal
    // basis is infeasible for it.
    for (int attempt = 0; attempt < 3 && extract_true_solution() < -1e-9; ++attempt) {
      set_perturbation(attempt + 1 < 3 ? perturb_scale_ / 1e3 : 0.0);
      refactor();
      st = run(costs, /*phase1=*/false);
      if (st != LpStatus::Optimal) return st;
    }
    if (extract_true_solution() < -1e-9) return LpStatus::IterationLimit;
    return LpStatus::Optimal;
  }

  /// Basic solution against the true right-hand side, expanded over all
  /// structural columns.
  std::vector<double> solution() const {
    std::vector<double> x(ncols_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < ncols_) x[basis_[r]] = xb_true_[r] < 0.0 ? 0.0 : xb_true_[r];
    return x;
  }

  double objective(const std::vector<double>& costs) const {
    double obj = 0.0;
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < ncols_) obj += costs[basis_[r]] * (xb_true_[r] < 0.0 ? 0.0 : xb_true_[r]);
    return obj;
  }

  int pivots_last() const { return pivots_last_; }
  const std::vector<int>& basis() const { return basis_; }

  /// Install a known-feasible basis (column indices, artificials excluded).
  void set_basis(const std::vector<int>& basis) {
    if (static_cast<int>(basis.size()) != m_) throw std::invalid_argument("simplex: basis size");
    basis_ = basis;
    refactor();
  }

  /// Exact factorized state, for bit-reproducible warm starts.
  struct State {
    std::vector<int> basis;
    std::vector<double> binv, xb;
  };

  State export_state() const { return State{basis_, binv_, xb_}; }

  void import_state(const State& st) {
    if (static_cast<int>(st.basis.size()) != m_)
      throw std::invalid_argument("simplex: state size mismatch");
    basis_ = st.basis;
    binv_ = st.binv;
    xb_ = st.xb;
    rebuild_basis_mark();
    since_refactor_ = 0;
  }

  int max_pivots = 200000;

 private:
  static constexpr double kCostTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kPerturb = 1e-7;
  static constexpr int kRefactorEvery = 256;
  static constexpr int kStallLimit = 64;

  /// Perturb b within the column space: b + A*dx with dx > 0 deterministic
  /// per column. Keeps redundant-but-consistent rows consistent (the shifted
  /// system is feasible whenever the original is) while separating degenerate
  /// basic solutions, so pivots make strict progress.
  void set_perturbation(double scale) {
    perturb_scale_ = scale;
    b_pert_ = b_;
    if (scale == 0.0) return;
    for (int j = 0; j < ncols_; ++j) {
      const double u = static_cast<double>(splitmix64(static_cast<std::uint64_t>(j) + 1) >> 11) *
                       0x1.0p-53;
      const double dx = scale * (1.0 + u);
      for (const auto& [r, v] : cols_[j].entries) b_pert_[r] += dx * v;
    }
  }

  /// xb for the true b from the current factorization; returns the minimum
  /// entry (negative means the basis is infeasible for the true problem).
  double extract_true_solution() {
    xb_true_.assign(m_, 0.0);
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      double s = 0.0;
      for (int j = 0; j < m_; ++j) s += row[j] * b_[j];
      xb_true_[r] = s;
      worst = std::min(worst, s);
    }
    return worst;
  }

  LpStatus run_phase1() {
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) basis_[r] = ncols_ + r;  // artificial per row
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) binv_[static_cast<std::size_t>(r) * m_ + r] = 1.0;
    xb_ = b_pert_;
    rebuild_basis_mark();

    std::vector<double> costs(ncols_, 0.0);  // artificial cost handled in run()
    const LpStatus st = run(costs, /*phase1=*/true);
    if (st != LpStatus::Optimal) return st;
    double infeas = 0.0;
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= ncols_) infeas += std::fabs(xb_[r]);
    if (infeas > 1e-7) return LpStatus::Infeasible;
    drive_out_artificials();
    return LpStatus::Optimal;
  }

  LpStatus run(const std::vector<double>& costs, bool phase1) {
    if (in_basis_mark_.size() != static_cast<std::size_t>(ncols_)) rebuild_basis_mark();
    int stall = 0;
    bool bland = false;
    double last_obj = current_objective(costs, phase1);
    devex_w_.assign(ncols_, 1.0);  // fresh devex reference framework

    for (;;) {
      if (pivots_last_ >= max_pivots) return LpStatus::IterationLimit;

      // y = c_B' B^-1
      y_.assign(m_, 0.0);
      for (int r = 0; r < m_; ++r) {
        const double cb = basic_cost(basis_[r], costs, phase1);
        if (cb == 0.0) continue;
        const double* row = &binv_[static_cast<std::size_t>(r) * m_];
        for (int j = 0; j < m_; ++j) y_[j] += cb * row[j];
      }

      // Devex pricing: maximize d_j^2 / w_j over improving columns. In phase 2
      // artificial columns never re-enter; in Bland mode the smallest
      // improving index enters.
      int entering = -1;
      double best_score = 0.0;
      for (int j = 0; j < ncols_; ++j) {
        if (in_basis_mark_[j]) continue;
        double d = costs_value(j, costs, phase1);
        for (const auto& [r, v] : cols_[j].entries) d -= y_[r] * v;
        if (d >= -kCostTol) continue;
        if (bland) {
          entering = j;
          break;
        }
        const double score = d * d / devex_w_[j];
        if (score > best_score) {
          best_score = score;
          entering = j;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      // u = B^-1 a_q
      u_.assign(m_, 0.0);
      for (const auto& [row, val] : cols_[entering].entries)
        for (int r = 0; r < m_; ++r) u_[r] += binv_[static_cast<std::size_t>(r) * m_ + row] * val;

      // Ratio test, two passes. A basic artificial sitting at zero is forced
      // out whenever its pivot element is nonzero, so it can never go
      // positive again. Near-ties are filtered for pivot stability and then
      // resolved lexicographically (comparing rows of B^-1 scaled by the
      // pivot element), which simulates the standard symbolic perturbation
      // and stops degenerate cycling; in Bland mode the smallest basis index
      // wins instead.
      double theta = -1.0;
      for (int r = 0; r < m_; ++r) {
        const bool zero_artificial = basis_[r] >= ncols_ && std::fabs(xb_[r]) <= 1e-9;
        double ratio;
        if (zero_artificial && std::fabs(u_[r]) > kPivotTol)
          ratio = 0.0;
        else if (u_[r] > kPivotTol)
          ratio = std::max(xb_[r], 0.0) / u_[r];
        else
          continue;
        if (theta < 0.0 || ratio < theta) theta = ratio;
      }
      if (theta < 0.0) return LpStatus::Unbounded;

      candidates_.clear();
      double max_pivot_mag = 0.0;
      for (int r = 0; r < m_; ++r) {
        const bool zero_artificial = basis_[r] >= ncols_ && std::fabs(xb_[r]) <= 1e-9;
        double ratio;
        if (zero_artificial && std::fabs(u_[r]) > kPivotTol)
          ratio = 0.0;
        else if (u_[r] > kPivotTol)
          ratio = std::max(xb_[r], 0.0) / u_[r];
        else
          continue;
        if (ratio <= theta + 1e-9 * (1.0 + theta)) {
          candidates_.push_back(r);
          max_pivot_mag = std::max(max_pivot_mag, std::fabs(u_[r]));
        }
      }
      int leave = -1;
      for (int r : candidates_) {
        if (std::fabs(u_[r]) < 0.01 * max_pivot_mag) continue;  // stability filter
        if (leave < 0) {
          leave = r;
        } else if (bland) {
          if (basis_[r] < basis_[leave]) leave = r;
        } else if (lex_less(r, leave)) {
          leave = r;
        }
      }
      theta = std::max(xb_[leave], 0.0) / u_[leave];
      if (basis_[leave] >= ncols_ && std::fabs(xb_[leave]) <= 1e-9) theta = 0.0;

      // Devex weight update (Forrest-Goldfarb): alpha_j for nonbasic j comes
      // from the leaving row of B^-1, which is already at hand.
      if (!bland) {
        const double alpha_q = u_[leave];
        const double wq = std::max(devex_w_[entering], 1.0);
        const double* rho = &binv_[static_cast<std::size_t>(leave) * m_];
        const double scale = wq / (alpha_q * alpha_q);
        for (int j = 0; j < ncols_; ++j) {
          if (in_basis_mark_[j] || j == entering) continue;
          double alpha_j = 0.0;
          for (const auto& [r, v] : cols_[j].entries) alpha_j += rho[r] * v;
          if (alpha_j == 0.0) continue;
          const double cand = alpha_j * alpha_j * scale;
          if (cand > devex_w_[j]) devex_w_[j] = cand;
        }
        devex_w_[basis_[leave] < ncols_ ? basis_[leave] : entering] =
            std::max(wq / (alpha_q * alpha_q), 1.0);
        if (wq > 1e8) devex_w_.assign(ncols_, 1.0);  // reference reset
      }

      pivot(entering, leave, theta);
      ++pivots_last_;

      if (++since_refactor_ >= kRefactorEvery) {
        refactor();
        since_refactor_ = 0;
      }

      const double obj = current_objective(costs, phase1);
      if (obj < last_obj - 1e-11) {
        stall = 0;
        bland = false;
        last_obj = obj;
      } else if (++stall >= kStallLimit) {
        bland = true;
      }
    }
  }

  /// Lexicographic comparison of B^-1 rows a and b scaled by their pivot
  /// elements; true when row a wins the ratio-test tie.
  bool lex_less(int a, int b) const {
    const double* ra = &binv_[static_cast<std::size_t>(a) * m_];
    const double* rb = &binv_[static_cast<std::size_t>(b) * m_];
    const double ua = u_[a], ub = u_[b];
    for (int j = 0; j < m_; ++j) {
      const double va = ra[j] / ua, vb = rb[j] / ub;
      if (std::fabs(va - vb) > 1e-12) return va < vb;
    }
    return a < b;
  }

  double basic_cost(int col, const std::vector<double>& costs, bool phase1) const {
    if (col >= ncols_) return phase1 ? 1.0 : 0.0;
    return phase1 ? 0.0 : costs[col];
  }
  double costs_value(int col, const std::vector<double>& costs, bool phase1) const {
    return phase1 ? 0.0 : costs[col];
  }

  double current_objective(const std::vector<double>& costs, bool phase1) const {
    double obj = 0.0;
    for (int r = 0; r < m_; ++r) obj += basic_cost(basis_[r], costs, phase1) * xb_[r];
    return obj;
  }

  void pivot(int entering, int leave, double theta) {
    for (int r = 0; r < m_; ++r) xb_[r] -= theta * u_[r];
    xb_[leave] = theta;
    const double piv = u_[leave];
    double* lrow = &binv_[static_cast<std::size_t>(leave) * m_];
    const double inv = 1.0 / piv;
    for (int j = 0; j < m_; ++j) lrow[j] *= inv;
    for (int r = 0; r < m_; ++r) {
      if (r == leave) continue;
      const double f = u_[r];
      if (f == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int j = 0; j < m_; ++j) row[j] -= f * lrow[j];
    }
    if (basis_[leave] < ncols_) in_basis_mark_[basis_[leave]] = 0;
    basis_[leave] = entering;
    in_basis_mark_[entering] = 1;
  }

  void rebuild_basis_mark() {
    in_basis_mark_.assign(ncols_, 0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < ncols_) in_basis_mark_[basis_[r]] = 1;
  }

  /// Rebuild B^-1 from scratch (Gauss-Jordan with partial pivoting) and
  /// recompute the basic solution.
  void refactor() {
    std::vector<double> mat(static_cast<std::size_t>(m_) * 2 * m_, 0.0);
    const int w = 2 * m_;
    for (int c = 0; c < m_; ++c) {
      const int col = basis_[c];
      if (col >= ncols_) {
        mat[static_cast<std::size_t>(col - ncols_) * w + c] = 1.0;
      } else {
        for (const auto& [r, v] : cols_[col].entries) mat[static_cast<std::size_t>(r) * w + c] = v;
      }
    }
    for (int r = 0; r < m_; ++r) mat[static_cast<std::size_t>(r) * w + m_ + r] = 1.0;

    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 1e-12;
      for (int r = c; r < m_; ++r) {
        const double v = std::fabs(mat[static_cast<std::size_t>(r) * w + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) throw std::runtime_error("simplex: singular basis during refactorization");
      if (piv != c)
        for (int j = 0; j < w; ++j)
          std::swap(mat[static_cast<std::size_t>(piv) * w + j],
                    mat[static_cast<std::size_t>(c) * w + j]);
      double* crow = &mat[static_cast<std::size_t>(c) * w];
      const double inv = 1.0 / crow[c];
      for (int j = 0; j < w; ++j) crow[j] *= inv;
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        double* row = &mat[static_cast<std::size_t>(r) * w];
        const double f = row[c];
        if (f == 0.0) continue;
        for (int j = 0; j < w; ++j) row[j] -= f * crow[j];
      }
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r)
      for (int j = 0; j < m_; ++j)
        binv_[static_cast<std::size_t>(r) * m_ + j] = mat[static_cast<std::size_t>(r) * w + m_ + j];
    // xb = B^-1 b (perturbed)
    xb_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      double s = 0.0;
      for (int j = 0; j < m_; ++j) s += row[j] * b_pert_[j];
      xb_[r] = s;
    }
    rebuild_basis_mark();
    since_refactor_ = 0;
  }

  /// After phase 1, pivot every remaining basic artificial out on any
  /// structural column with a nonzero element in its row. An artificial with
  /// an all-zero structural row marks a redundant row; it stays basic, pinned
  /// at zero, and never interferes again (its pivot column is always zero).
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < ncols_) continue;
      int entering = -1;
      for (int j = 0; j < ncols_ && entering < 0; ++j) {
        if (!in_basis_mark_.empty() && in_basis_mark_[j]) continue;
        double urj = 0.0;
        for (const auto& [row, val] : cols_[j].entries)
          urj += binv_[static_cast<std::size_t>(r) * m_ + row] * val;
        if (std::fabs(urj) > 1e-7) entering = j;
      }
      if (entering < 0) continue;  // redundant row
      u_.assign(m_, 0.0);
      for (const auto& [row, val] : cols_[entering].entries)
        for (int rr = 0; rr < m_; ++rr)
          u_[rr] += binv_[static_cast<std::size_t>(rr) * m_ + row] * val;
      pivot(entering, r, xb_[r] / u_[r]);
    }
    refactor();
  }

  int m_ = 0, ncols_ = 0;
  std::vector<SparseColumn> cols_;
  std::vector<double> b_, b_pert_, xb_true_;
  double perturb_scale_ = 0.0;
  std::vector<int> basis_;
  std::vector<double> binv_, xb_, y_, u_, devex_w_;
  std::vector<int> candidates_;
  std::vector<char> in_basis_mark_;
  int pivots_last_ = 0;
  int since_refactor_ = 0;
};

}  // namespace errorfloor
