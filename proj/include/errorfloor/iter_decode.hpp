#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "errorfloor/census.hpp"
#include "errorfloor/channel.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

enum class IterAlgorithm { GallagerA, GallagerB, Bp, MinSum };

inline const char* to_string(IterAlgorithm a) {
  switch (a) {
    case IterAlgorithm::GallagerA: return "gallager-a";
    case IterAlgorithm::GallagerB: return "gallager-b";
    case IterAlgorithm::Bp: return "bp";
    case IterAlgorithm::MinSum: return "min-sum";
  }
  return "?";
}

/// Decoder configuration. Gallager B thresholds b_{k,d} may be overridden per
/// (iteration, degree); when absent the default schedule applies: b = d - 1
/// for Gallager A, and for Gallager B b = 2 at d = 3 (coinciding with
/// Gallager A) and ceil((d+1)/2) otherwise.
struct IterConfig {
  IterAlgorithm algorithm = IterAlgorithm::Bp;
  int max_iterations = 50;
  bool halt_on_codeword = true;
  std::map<std::pair<int, int>, int> thresholds;  // (iteration k, degree d) -> b_{k,d}

  int threshold(int k, int d) const {
    if (!thresholds.empty()) {
      auto it = thresholds.find({k, d});
      if (it == thresholds.end())
        throw std::invalid_argument("IterConfig: missing threshold for (k=" + std::to_string(k) +
                                    ", d=" + std::to_string(d) + ")");
      validate_threshold(it->second, d);
      return it->second;
    }
    if (algorithm == IterAlgorithm::GallagerA) return d - 1;
    return d <= 3 ? d - 1 : (d + 2) / 2;  // ceil((d+1)/2) above d = 3
  }

  static void validate_threshold(int b, int d) {
    if (b < (d + 1) / 2 || b > d - 1)
      throw std::invalid_argument("IterConfig: threshold outside [ceil(d/2), d-1]");
  }
};

enum class DecodeOutcome { ConvergedZero, ConvergedOtherCodeword, Failure };

inline const char* to_string(DecodeOutcome o) {
  switch (o) {
    case DecodeOutcome::ConvergedZero: return "converged_zero";
    case DecodeOutcome::ConvergedOtherCodeword: return "converged_other_codeword";
    case DecodeOutcome::Failure: return "failure";
  }
  return "?";
}

/// Per-iteration hard decisions x^(0)..x^(k). x^(0) is the decision before
/// any message passing (the received word / LLR signs).
struct DecodeTrace {
  std::vector<BinaryVector> decisions;
  std::optional<int> halted_at;
  DecodeOutcome outcome = DecodeOutcome::Failure;

  const BinaryVector& final_decision() const { return decisions.back(); }
};

/// Not-eventually-correct variable set extracted from a failed trace as the
/// union of hard-decision supports over the last `window_used` iterations.
struct TrappingSetReport {
  std::vector<int> support;
  int a = 0;
  int b = 0;
  int window_used = 0;
  bool window_stable = true;  // false when a longer window keeps growing the set
};

namespace detail {

/// Flat directed-edge indexing shared by all message-passing decoders.
/// Edges are numbered variable-major, so variable i owns the contiguous edge
/// range [var_offset[i], var_offset[i+1]).
struct EdgeIndex {
  int n = 0, m = 0, edges = 0;
  std::vector<int> var_offset;    // n+1 prefix
  std::vector<int> check_offset;  // m+1 prefix
  std::vector<int> check_edges;   // per check slot: edge id
  std::vector<int> edge_var;      // edge id -> variable

  explicit EdgeIndex(const TannerGraph& g) : n(g.n), m(g.m) {
    var_offset.assign(n + 1, 0);
    check_offset.assign(m + 1, 0);
    for (int i = 0; i < n; ++i) var_offset[i + 1] = var_offset[i] + g.var_degree(i);
    for (int a = 0; a < m; ++a) check_offset[a + 1] = check_offset[a] + g.check_degree(a);
    edges = var_offset[n];
    check_edges.resize(edges);
    edge_var.resize(edges);
    std::vector<int> fill = check_offset;
    int e = 0;
    for (int i = 0; i < n; ++i)
      for (int a : g.var_neighbors[i]) {
        check_edges[fill[a]++] = e;
        edge_var[e] = i;
        ++e;
      }
  }
};

}  // namespace detail

/// Gallager A/B hard-decision decoder. One instance per worker; the message
/// workspace is reused across decodes.
class GallagerDecoder {
 public:
  GallagerDecoder(const TannerGraph& g, IterConfig cfg)
      : g_(g), cfg_(std::move(cfg)), idx_(g) {
    if (cfg_.algorithm != IterAlgorithm::GallagerA && cfg_.algorithm != IterAlgorithm::GallagerB)
      throw std::invalid_argument("GallagerDecoder: algorithm must be Gallager A or B");
    var_to_check_.resize(idx_.edges);
    check_to_var_.resize(idx_.edges);
  }

  DecodeTrace decode(const BinaryVector& received) {
    if (received.length != g_.n) throw std::invalid_argument("gallager_decode: length mismatch");
    const auto hard = received.to_indicator();
    DecodeTrace trace;
    trace.decisions.push_back(received);  // x^(0) = received word
    if (try_halt(trace, received)) return trace;

    for (int e = 0; e < idx_.edges; ++e) var_to_check_[e] = hard[idx_.edge_var[e]];

    for (int k = 1; k <= cfg_.max_iterations; ++k) {
      // Check update: extrinsic mod-2 sums.
      for (int a = 0; a < g_.m; ++a) {
        std::uint8_t total = 0;
        for (int s = idx_.check_offset[a]; s < idx_.check_offset[a + 1]; ++s)
          total ^= var_to_check_[idx_.check_edges[s]];
        for (int s = idx_.check_offset[a]; s < idx_.check_offset[a + 1]; ++s) {
          const int e = idx_.check_edges[s];
          check_to_var_[e] = total ^ var_to_check_[e];
        }
      }
      // Variable update (threshold rule) and hard decision (majority with the
      // received bit breaking exact ties).
      std::vector<int> decision_support;
      for (int i = 0; i < g_.n; ++i) {
        const int d = g_.var_degree(i);
        int ones = 0;
        for (int e = idx_.var_offset[i]; e < idx_.var_offset[i + 1]; ++e)
          ones += check_to_var_[e];
        const int b = cfg_.threshold(k, d);
        for (int e = idx_.var_offset[i]; e < idx_.var_offset[i + 1]; ++e) {
          std::uint8_t msg = hard[i];
          if (d > 1) {
            const int ext_ones = ones - check_to_var_[e];
            const int ext_zeros = (d - 1) - ext_ones;
            if (ext_ones >= b)
              msg = 1;
            else if (ext_zeros >= b)
              msg = 0;
          }
          var_to_check_[e] = msg;
        }
        const int zeros = d - ones;
        bool bit = hard[i];
        if (ones > zeros)
          bit = true;
        else if (zeros > ones)
          bit = false;
        if (bit) decision_support.push_back(i);
      }
      trace.decisions.emplace_back(g_.n, std::move(decision_support));
      if (try_halt(trace, trace.decisions.back())) return trace;
    }
    finish(trace);
    return trace;
  }

 private:
  bool try_halt(DecodeTrace& trace, const BinaryVector& decision) {
    if (!cfg_.halt_on_codeword) return false;
    if (!is_codeword(g_, decision)) return false;
    trace.halted_at = static_cast<int>(trace.decisions.size()) - 1;
    trace.outcome = decision.is_zero() ? DecodeOutcome::ConvergedZero
                                       : DecodeOutcome::ConvergedOtherCodeword;
    return true;
  }

  void finish(DecodeTrace& trace) const {
    const auto& last = trace.decisions.back();
    if (is_codeword(g_, last))
      trace.outcome = last.is_zero() ? DecodeOutcome::ConvergedZero
                                     : DecodeOutcome::ConvergedOtherCodeword;
    else
      trace.outcome = DecodeOutcome::Failure;
  }

  const TannerGraph& g_;
  IterConfig cfg_;
  detail::EdgeIndex idx_;
  std::vector<std::uint8_t> var_to_check_, check_to_var_;
};

/// BP (sum-product) and min-sum decoder over real-valued messages.
/// Variable-to-check messages are clipped to |w| <= 30 before the tanh rule;
/// a hard-decision tie (m_i = 0) decodes to 1.
class SoftDecoder {
 public:
  SoftDecoder(const TannerGraph& g, IterConfig cfg) : g_(g), cfg_(std::move(cfg)), idx_(g) {
    if (cfg_.algorithm != IterAlgorithm::Bp && cfg_.algorithm != IterAlgorithm::MinSum)
      throw std::invalid_argument("SoftDecoder: algorithm must be BP or min-sum");
    var_to_check_.resize(idx_.edges);
    check_to_var_.resize(idx_.edges);
  }

  DecodeTrace decode(const LlrVector& gamma) {
    if (gamma.length() != g_.n) throw std::invalid_argument("soft decode: length mismatch");
    DecodeTrace trace;
    trace.decisions.push_back(hard_decision(gamma.values));  // x^(0): sign of gamma
    if (try_halt(trace, trace.decisions.back())) return trace;

    // Clipping is a BP-only guard; min-sum stays unclipped so its exact
    // invariance under positive scaling of gamma is preserved.
    const bool bp = cfg_.algorithm == IterAlgorithm::Bp;
    for (int e = 0; e < idx_.edges; ++e) {
      const double w = gamma.values[idx_.edge_var[e]];
      var_to_check_[e] = bp ? clip(w) : w;
    }

    std::vector<double> posterior(g_.n);
    for (int k = 1; k <= cfg_.max_iterations; ++k) {
      if (cfg_.algorithm == IterAlgorithm::Bp)
        check_update_bp();
      else
        check_update_min_sum();

      std::vector<int> decision_support;
      for (int i = 0; i < g_.n; ++i) {
        double sum = 0.0;
        for (int e = idx_.var_offset[i]; e < idx_.var_offset[i + 1]; ++e)
          sum += check_to_var_[e];
        posterior[i] = gamma.values[i] + sum;
        for (int e = idx_.var_offset[i]; e < idx_.var_offset[i + 1]; ++e) {
          const double w = posterior[i] - check_to_var_[e];
          var_to_check_[e] = bp ? clip(w) : w;
        }
        if (posterior[i] <= 0.0) decision_support.push_back(i);
      }
      trace.decisions.emplace_back(g_.n, std::move(decision_support));
      if (try_halt(trace, trace.decisions.back())) return trace;
    }
    finish(trace);
    return trace;
  }

 private:
  static double clip(double w) { return w > 30.0 ? 30.0 : (w < -30.0 ? -30.0 : w); }

  void check_update_bp() {
    // Forward/backward partial products of tanh(w/2) avoid dividing by zero
    // when some message vanishes.
    for (int a = 0; a < g_.m; ++a) {
      const int lo = idx_.check_offset[a], hi = idx_.check_offset[a + 1];
      const int d = hi - lo;
      fwd_.resize(d + 1);
      bwd_.resize(d + 1);
      fwd_[0] = 1.0;
      bwd_[d] = 1.0;
      for (int t = 0; t < d; ++t)
        fwd_[t + 1] = fwd_[t] * std::tanh(0.5 * var_to_check_[idx_.check_edges[lo + t]]);
      for (int t = d; t-- > 0;)
        bwd_[t] = bwd_[t + 1] * std::tanh(0.5 * var_to_check_[idx_.check_edges[lo + t]]);
      for (int t = 0; t < d; ++t) {
        double prod = fwd_[t] * bwd_[t + 1];
        if (prod > 0.999999999999999) prod = 0.999999999999999;
        if (prod < -0.999999999999999) prod = -0.999999999999999;
        check_to_var_[idx_.check_edges[lo + t]] = 2.0 * std::atanh(prod);
      }
    }
  }

  void check_update_min_sum() {
    for (int a = 0; a < g_.m; ++a) {
      const int lo = idx_.check_offset[a], hi = idx_.check_offset[a + 1];
      double min1 = 1e300, min2 = 1e300;
      int argmin = -1;
      int neg = 0;
      for (int s = lo; s < hi; ++s) {
        const double w = var_to_check_[idx_.check_edges[s]];
        if (w < 0.0) ++neg;
        const double mag = std::fabs(w);
        if (mag < min1) {
          min2 = min1;
          min1 = mag;
          argmin = s;
        } else if (mag < min2) {
          min2 = mag;
        }
      }
      for (int s = lo; s < hi; ++s) {
        const int e = idx_.check_edges[s];
        const double w = var_to_check_[e];
        int ext_neg = neg - (w < 0.0 ? 1 : 0);
        const double mag = (s == argmin) ? min2 : min1;
        check_to_var_[e] = (ext_neg % 2 ? -mag : mag);
      }
    }
  }

  BinaryVector hard_decision(const std::vector<double>& m) const {
    std::vector<int> support;
    for (int i = 0; i < g_.n; ++i)
      if (m[i] <= 0.0) support.push_back(i);
    return BinaryVector(g_.n, std::move(support));
  }

  bool try_halt(DecodeTrace& trace, const BinaryVector& decision) {
    if (!cfg_.halt_on_codeword) return false;
    if (!is_codeword(g_, decision)) return false;
    trace.halted_at = static_cast<int>(trace.decisions.size()) - 1;
    trace.outcome = decision.is_zero() ? DecodeOutcome::ConvergedZero
                                       : DecodeOutcome::ConvergedOtherCodeword;
    return true;
  }

  void finish(DecodeTrace& trace) const {
    const auto& last = trace.decisions.back();
    if (is_codeword(g_, last))
      trace.outcome = last.is_zero() ? DecodeOutcome::ConvergedZero
                                     : DecodeOutcome::ConvergedOtherCodeword;
    else
      trace.outcome = DecodeOutcome::Failure;
  }

  const TannerGraph& g_;
  IterConfig cfg_;
  detail::EdgeIndex idx_;
  std::vector<double> var_to_check_, check_to_var_, fwd_, bwd_;
};

inline DecodeTrace gallager_decode(const TannerGraph& g, const BinaryVector& received,
                                   const IterConfig& cfg) {
  GallagerDecoder dec(g, cfg);
  return dec.decode(received);
}

inline DecodeTrace bp_decode(const TannerGraph& g, const LlrVector& gamma,
                             const IterConfig& cfg) {
  if (cfg.algorithm != IterAlgorithm::Bp)
    throw std::invalid_argument("bp_decode: config algorithm must be BP");
  SoftDecoder dec(g, cfg);
  return dec.decode(gamma);
}

inline DecodeTrace min_sum_decode(const TannerGraph& g, const LlrVector& gamma,
                                  const IterConfig& cfg) {
  if (cfg.algorithm != IterAlgorithm::MinSum)
    throw std::invalid_argument("min_sum_decode: config algorithm must be min-sum");
  SoftDecoder dec(g, cfg);
  return dec.decode(gamma);
}

/// Union of hard-decision supports over the last W recorded iterations of a
/// failed trace, classified as an (a,b) subgraph.
inline TrappingSetReport extract_trapping_set(const DecodeTrace& trace, const TannerGraph& g,
                                              int window) {
  if (trace.outcome != DecodeOutcome::Failure)
    throw std::invalid_argument("extract_trapping_set: trace did not fail");
  if (window < 1) throw std::invalid_argument("extract_trapping_set: window must be >= 1");

  auto union_over = [&](int w) {
    std::vector<char> in(g.n, 0);
    const int len = static_cast<int>(trace.decisions.size());
    for (int k = std::max(0, len - w); k < len; ++k)
      for (int i : trace.decisions[k].support) in[i] = 1;
    std::vector<int> out;
    for (int i = 0; i < g.n; ++i)
      if (in[i]) out.push_back(i);
    return out;
  };

  TrappingSetReport rep;
  rep.window_used = std::min<int>(window, static_cast<int>(trace.decisions.size()));
  rep.support = union_over(window);
  rep.a = static_cast<int>(rep.support.size());
  rep.b = induced_odd_checks(g, rep.support);
  if (static_cast<int>(trace.decisions.size()) >= 2 * window)
    rep.window_stable = union_over(2 * window) == rep.support;
  return rep;
}

inline nlohmann::json trace_to_json(const DecodeTrace& trace, const IterConfig& cfg,
                                    const TrappingSetReport* ts = nullptr) {
  nlohmann::json j{{"algorithm", to_string(cfg.algorithm)},
                   {"D", cfg.max_iterations},
                   {"outcome", to_string(trace.outcome)},
                   {"final_support", trace.final_decision().support}};
  if (trace.halted_at)
    j["halted_at"] = *trace.halted_at;
  else
    j["halted_at"] = nullptr;
  if (ts) j["ts"] = {{"a", ts->a}, {"b", ts->b}, {"support", ts->support}};
  return j;
}

}  // namespace errorfloor
