#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errorfloor/instanton.hpp"
#include "errorfloor/lp_decode.hpp"
#include "errorfloor/parallel.hpp"
#include "errorfloor/rng.hpp"

namespace errorfloor {

/// Outcome of a multi-start search: per-trial records (in trial order, so
/// results do not depend on the worker count) plus deduplicated statistics.
/// BSC records deduplicate on the sorted support, AWGNC records on the noise
/// vector quantized at 1e-6.
struct SearchBatch {
  std::vector<std::optional<InstantonRecord>> records;  // empty slot = failed trial
  long failed_trials = 0;
  long nonconverged_trials = 0;

  std::map<std::vector<int>, long> unique_bsc;           // support -> first trial
  std::map<std::vector<long long>, long> unique_awgn;    // quantized noise -> first trial

  /// weight (BSC size, or w_awgn rounded to 1e-4 for display) -> {total, unique}
  struct Bin {
    long total = 0;
    long unique = 0;
  };
  std::map<double, Bin> histogram;

  double min_weight = 0.0;
  bool any = false;
};

namespace detail {

inline std::vector<long long> quantize_noise(const std::vector<double>& noise) {
  std::vector<long long> q(noise.size());
  for (std::size_t i = 0; i < noise.size(); ++i) q[i] = std::llround(noise[i] * 1e6);
  return q;
}

inline void finalize_batch(SearchBatch& batch) {
  for (std::size_t t = 0; t < batch.records.size(); ++t) {
    if (!batch.records[t]) {
      ++batch.failed_trials;
      continue;
    }
    const InstantonRecord& rec = *batch.records[t];
    if (!rec.search.converged) {
      ++batch.nonconverged_trials;
      continue;
    }
    bool fresh = false;
    if (rec.channel == ChannelKind::Bsc)
      fresh = batch.unique_bsc.emplace(rec.bsc_support.support, static_cast<long>(t)).second;
    else
      fresh = batch.unique_awgn.emplace(quantize_noise(rec.awgn_noise), static_cast<long>(t))
                  .second;
    const double bin =
        rec.channel == ChannelKind::Bsc ? rec.weight : std::round(rec.weight * 1e4) / 1e4;
    auto& b = batch.histogram[bin];
    ++b.total;
    if (fresh) ++b.unique;
    if (!batch.any || rec.weight < batch.min_weight) {
      batch.min_weight = rec.weight;
      batch.any = true;
    }
  }
}

}  // namespace detail

/// Multi-start ISA. Trial t uses seed derive_seed(base_seed, t) and starts
/// from the canonical solver state, so outcomes are independent of the worker
/// count and of trial interleaving.
inline SearchBatch run_isa_batch(const LcLpInstance& inst, long trials, int flips,
                                 std::uint64_t base_seed, int workers,
                                 const SearchTolerances& tol = {}) {
  SearchBatch batch;
  batch.records.resize(trials);
  const auto start = canonical_start(inst);
  std::vector<std::unique_ptr<LpDecoder>> decoders(std::max(workers, 1));
  parallel_for(trials, workers, [&](long t, int w) {
    if (!decoders[w]) decoders[w] = std::make_unique<LpDecoder>(inst);
    decoders[w]->restore(start);
    try {
      batch.records[t] = isa_bsc_lp(*decoders[w], flips, derive_seed(base_seed, t), tol);
    } catch (const RetryCapError&) {
      batch.records[t] = std::nullopt;
    }
  });
  detail::finalize_batch(batch);
  return batch;
}

/// Multi-start PCS, with the same determinism contract as run_isa_batch.
inline SearchBatch run_pcs_batch(const LcLpInstance& inst, long trials,
                                 double initial_noise_strength, std::uint64_t base_seed,
                                 int workers, const SearchTolerances& tol = {}) {
  SearchBatch batch;
  batch.records.resize(trials);
  const auto start = canonical_start(inst);
  std::vector<std::unique_ptr<LpDecoder>> decoders(std::max(workers, 1));
  parallel_for(trials, workers, [&](long t, int w) {
    if (!decoders[w]) decoders[w] = std::make_unique<LpDecoder>(inst);
    decoders[w]->restore(start);
    try {
      batch.records[t] =
          pcs_awgn_lp(*decoders[w], initial_noise_strength, derive_seed(base_seed, t), tol);
    } catch (const RetryCapError&) {
      batch.records[t] = std::nullopt;
    }
  });
  detail::finalize_batch(batch);
  return batch;
}

}  // namespace errorfloor
