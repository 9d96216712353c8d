#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "errorfloor/channel.hpp"
#include "errorfloor/iter_decode.hpp"
#include "errorfloor/lp_decode.hpp"
#include "errorfloor/parallel.hpp"
#include "errorfloor/rng.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

/// One measured FER point with a Wilson 95% interval.
struct FerPoint {
  double param = 0.0;  // epsilon (BSC) or Eb/N0 in dB (AWGNC)
  long frames = 0;
  long errors = 0;
  double fer = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
};

inline FerPoint wilson_point(double param, long frames, long errors, double z = 1.959963985) {
  if (frames <= 0) throw std::invalid_argument("wilson_point: frames must be positive");
  FerPoint p;
  p.param = param;
  p.frames = frames;
  p.errors = errors;
  p.fer = static_cast<double>(errors) / static_cast<double>(frames);
  const double n = static_cast<double>(frames);
  const double z2 = z * z;
  const double center = (p.fer + z2 / (2 * n)) / (1 + z2 / n);
  const double half =
      z * std::sqrt(p.fer * (1 - p.fer) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  p.ci_lo = std::max(0.0, center - half);
  p.ci_hi = std::min(1.0, center + half);
  return p;
}

struct McStop {
  long min_errors = 100;
  long max_frames = 100000000;
};

/// Monte-Carlo FER. `make_worker(worker_id)` returns a frame oracle: given the
/// frame's derived seed, simulate one all-zero-codeword transmission and
/// report decoder failure. Frames are processed in fixed-size batches with
/// frame-indexed seeds, so the result is independent of the worker count;
/// the stop rule is evaluated at batch boundaries.
inline FerPoint mc_fer(double param,
                       const std::function<std::function<bool(std::uint64_t)>(int)>& make_worker,
                       const McStop& stop, std::uint64_t base_seed, int workers,
                       long batch_size = 4096) {
  if (stop.min_errors < 1) throw std::invalid_argument("mc_fer: min_errors must be >= 1");
  long frames = 0, errors = 0;
  std::vector<std::function<bool(std::uint64_t)>> oracles(std::max(workers, 1));
  std::vector<std::uint8_t> fails;
  while (frames < stop.max_frames && errors < stop.min_errors) {
    const long batch = std::min(batch_size, stop.max_frames - frames);
    fails.assign(batch, 0);
    parallel_for(batch, workers, [&](long i, int w) {
      if (!oracles[w]) oracles[w] = make_worker(w);
      fails[i] = oracles[w](derive_seed(base_seed, frames + i)) ? 1 : 0;
    });
    for (long i = 0; i < batch; ++i) errors += fails[i];
    frames += batch;
  }
  return wilson_point(param, frames, errors);
}

/// Frame oracle for Gallager A/B over the BSC.
inline std::function<std::function<bool(std::uint64_t)>(int)> gallager_bsc_frames(
    const TannerGraph& g, const IterConfig& cfg, double epsilon) {
  return [&g, cfg, epsilon](int) {
    auto dec = std::make_shared<GallagerDecoder>(g, cfg);
    auto ch = ChannelModel::bsc(epsilon);
    return [dec, ch, &g](std::uint64_t seed) {
      Rng rng(seed);
      auto out = sample_zero_codeword(ch, g.n, rng);
      return dec->decode(out.bits).outcome != DecodeOutcome::ConvergedZero;
    };
  };
}

/// Frame oracle for BP / min-sum over either channel.
inline std::function<std::function<bool(std::uint64_t)>(int)> soft_frames(
    const TannerGraph& g, const IterConfig& cfg, const ChannelModel& ch) {
  return [&g, cfg, ch](int) {
    auto dec = std::make_shared<SoftDecoder>(g, cfg);
    return [dec, ch, &g](std::uint64_t seed) {
      Rng rng(seed);
      auto out = sample_zero_codeword(ch, g.n, rng);
      return dec->decode(llr(ch, out)).outcome != DecodeOutcome::ConvergedZero;
    };
  };
}

/// Frame oracle for the LP decoder. Every frame restarts from the canonical
/// solver state so outcomes are history-free.
inline std::function<std::function<bool(std::uint64_t)>(int)> lp_frames(
    const LcLpInstance& inst, const ChannelModel& ch,
    std::shared_ptr<const LpDecoder::Snapshot> start) {
  return [&inst, ch, start](int) {
    auto dec = std::make_shared<LpDecoder>(inst);
    return [dec, ch, &inst, start](std::uint64_t seed) {
      Rng rng(seed);
      auto out = sample_zero_codeword(ch, inst.n, rng);
      dec->restore(*start);
      return dec->decode(llr(ch, out)).failure();
    };
  };
}

/// Deduplicated instanton weight/multiplicity statistics.
struct InstantonSpectrum {
  struct Entry {
    double weight = 0.0;
    long multiplicity = 0;
  };
  std::vector<Entry> entries;

  void validate() const {
    if (entries.empty()) throw std::invalid_argument("InstantonSpectrum: empty spectrum");
    for (const auto& e : entries) {
      if (!(e.weight > 0.0)) throw std::invalid_argument("InstantonSpectrum: weights must be > 0");
      if (e.multiplicity < 1)
        throw std::invalid_argument("InstantonSpectrum: multiplicities must be >= 1");
    }
  }

  static InstantonSpectrum from_pairs(const std::vector<std::pair<double, long>>& pairs) {
    std::map<double, long> dedup;
    for (auto& [w, mult] : pairs) dedup[w] += mult;
    InstantonSpectrum s;
    for (auto& [w, mult] : dedup) s.entries.push_back({w, mult});
    s.validate();
    return s;
  }
};

struct PredictedPoint {
  double param = 0.0;
  double fer = 0.0;
};

/// Leading-order error-floor prediction for the BSC:
/// FER(eps) = sum_beta N_beta eps^{w_beta} (1-eps)^{n-w_beta}.
inline std::vector<PredictedPoint> predict_fer_bsc(const InstantonSpectrum& spec, int n,
                                                   const std::vector<double>& eps_list) {
  spec.validate();
  std::vector<PredictedPoint> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("predict_fer_bsc: eps range");
    double fer = 0.0;
    for (const auto& e : spec.entries)
      fer += static_cast<double>(e.multiplicity) * std::pow(eps, e.weight) *
             std::pow(1.0 - eps, n - e.weight);
    out.push_back({eps, fer});
  }
  return out;
}

inline double gaussian_tail_q(double x) { return 0.5 * std::erfc(x / 1.4142135623730951); }

/// Leading-order error-floor prediction for the AWGNC (curvature factors set
/// to one): FER(sigma) = sum_beta N_beta Q(sqrt(w_beta)/sigma). Points carry
/// Eb/N0 in dB computed at the given code rate.
inline std::vector<PredictedPoint> predict_fer_awgn(const InstantonSpectrum& spec, double rate,
                                                    const std::vector<double>& sigma_list) {
  spec.validate();
  std::vector<PredictedPoint> out;
  out.reserve(sigma_list.size());
  for (double sigma : sigma_list) {
    if (!(sigma > 0.0)) throw std::invalid_argument("predict_fer_awgn: sigma range");
    double fer = 0.0;
    for (const auto& e : spec.entries)
      fer += static_cast<double>(e.multiplicity) * gaussian_tail_q(std::sqrt(e.weight) / sigma);
    out.push_back({ebn0_db(sigma, rate), fer});
  }
  return out;
}

inline double harmonic_number(double n) {
  if (n < 1.0) return n;
  if (n <= 1e6) {
    double h = 0.0;
    for (long k = 1; k <= static_cast<long>(std::llround(n)); ++k) h += 1.0 / k;
    return h;
  }
  return std::log(n) + 0.57721566490153286 + 1.0 / (2.0 * n);
}

/// Coupon-collector trial budget: N * H_N (approximately N ln N).
inline double trials_needed(double estimated_total) {
  if (estimated_total <= 1.0) return 1.0;
  return estimated_total * harmonic_number(estimated_total);
}

struct CoverageEstimate {
  double estimated_total = 0.0;
  double trials_needed = 0.0;
};

/// Estimate the total number of distinct instantons from the unique-count
/// curve u_t (unique configurations seen after t trials) by inverting the
/// saturation model u = N (1 - exp(-t/N)). The estimate is the running
/// maximum of the per-prefix inversions (prefixes with u_t = t carry no
/// information and are skipped), which makes it monotone under appended
/// trials. A degenerate curve (a single configuration seen forever) yields 1.
inline CoverageEstimate coverage_estimate(const std::vector<long>& unique_counts_per_trial) {
  if (unique_counts_per_trial.empty())
    throw std::invalid_argument("coverage_estimate: empty observation list");
  long prev = 0;
  for (long u : unique_counts_per_trial) {
    if (u < prev || u < 0) throw std::invalid_argument("coverage_estimate: counts must be "
                                                       "non-decreasing and non-negative");
    prev = u;
  }
  const double u_final = static_cast<double>(unique_counts_per_trial.back());
  if (u_final <= 1.0) return CoverageEstimate{1.0, 1.0};  // degenerate: one configuration
  double best = u_final;
  for (std::size_t i = 0; i < unique_counts_per_trial.size(); ++i) {
    const double t = static_cast<double>(i + 1);
    const double u = static_cast<double>(unique_counts_per_trial[i]);
    if (u >= t || u < 1.0) continue;  // no repeat information yet
    // Solve N (1 - exp(-t/N)) = u for N in [u, inf); the left side increases
    // from u (1 - e^{-t/u}) < u toward t > u.
    double lo = u, hi = std::max(2.0 * u, 4.0);
    auto value = [&](double N) { return N * (1.0 - std::exp(-t / N)); };
    while (value(hi) < u && hi < 1e15) hi *= 2.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (value(mid) < u)
        lo = mid;
      else
        hi = mid;
    }
    best = std::max(best, 0.5 * (lo + hi));
  }
  CoverageEstimate est;
  est.estimated_total = best;
  est.trials_needed = trials_needed(best);
  return est;
}

}  // namespace errorfloor
