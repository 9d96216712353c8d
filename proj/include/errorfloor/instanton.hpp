#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "errorfloor/channel.hpp"
#include "errorfloor/iter_decode.hpp"
#include "errorfloor/lp_decode.hpp"
#include "errorfloor/rng.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

/// Raised when a search cannot start (no failing initialization found).
class RetryCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchTolerances {
  double delta = 1e-6;        // relative failure-side nudge
  double tau_surface = 1e-6;  // error-surface bisection, relative
  int pcs_step_cap = 100;
  int isa_retry_cap = 50;
  double scale_cap = 20.0;    // error-surface doubling bound
};

/// A failure-boundary noise configuration with its weight, attribution and
/// search provenance.
struct InstantonRecord {
  ChannelKind channel = ChannelKind::Bsc;
  std::string decoder_id;
  BinaryVector bsc_support;        // BSC representation
  std::vector<double> awgn_noise;  // AWGNC representation (received = 1 - noise)
  double weight = 0.0;             // |support| (BSC) or ||noise||^2 (AWGNC)

  std::optional<PseudoCodeword> pcw;   // LP attribution
  std::optional<TrappingSetReport> ts;  // iterative attribution

  struct SearchInfo {
    std::string method;
    std::uint64_t seed = 0;
    int steps = 0;
    bool converged = true;
    std::vector<double> weight_trajectory;
    double surface_scale_ok = 0.0;    // amoeba certificates
    double surface_scale_fail = 0.0;
  } search;
};

inline nlohmann::json record_to_json(const InstantonRecord& rec) {
  nlohmann::json j{{"channel", rec.channel == ChannelKind::Bsc ? "bsc" : "awgn"},
                   {"decoder", rec.decoder_id},
                   {"weight", rec.weight},
                   {"method", rec.search.method},
                   {"seed", rec.search.seed},
                   {"steps", rec.search.steps},
                   {"converged", rec.search.converged},
                   {"trajectory", rec.search.weight_trajectory}};
  if (rec.channel == ChannelKind::Bsc)
    j["support"] = rec.bsc_support.support;
  else
    j["noise"] = rec.awgn_noise;
  if (rec.pcw) {
    j["pcw"] = rec.pcw->f;
    j["pcw_w_bsc"] = w_bsc(*rec.pcw);
    j["pcw_w_awgn"] = w_awgn(*rec.pcw);
  }
  if (rec.ts) j["ts"] = {{"a", rec.ts->a}, {"b", rec.ts->b}, {"support", rec.ts->support}};
  return j;
}

/// +-1 LLR vector for a BSC received word (any positive magnitude is
/// equivalent for the LP, Gallager and min-sum decoders).
inline LlrVector bsc_sign_llr(int n, const BinaryVector& received, double magnitude = 1.0) {
  LlrVector g;
  g.values.assign(n, magnitude);
  for (int i : received.support) g.values[i] = -magnitude;
  return g;
}

/// Instanton search for LP decoding over the BSC. From a random multi-flip
/// start whose LP output is a nonzero pseudo-codeword, repeatedly decode the
/// median: a strictly lighter output replaces the current pseudo-codeword,
/// and on equal weight the leave-one-out probe over the median support either
/// yields the next input or certifies the median as the instanton.
inline InstantonRecord isa_bsc_lp(LpDecoder& dec, int flips, std::uint64_t seed,
                                  const SearchTolerances& tol = {}) {
  const int n = dec.instance().n;
  if (flips < 1 || flips > n) throw std::invalid_argument("isa: flips out of range");
  Rng rng(seed);

  PseudoCodeword p;
  bool initialized = false;
  for (int attempt = 0; attempt < tol.isa_retry_cap; ++attempt) {
    std::vector<int> support;
    while (static_cast<int>(support.size()) < flips) {
      const int v = static_cast<int>(rng.uniform_below(n));
      if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
    }
    auto res = dec.decode(bsc_sign_llr(n, BinaryVector(n, support)));
    if (!res.pseudo_codeword.is_zero()) {
      p = res.pseudo_codeword;
      initialized = true;
      break;
    }
  }
  if (!initialized)
    throw RetryCapError("isa: no failing initialization in " +
                        std::to_string(tol.isa_retry_cap) + " attempts");

  InstantonRecord rec;
  rec.channel = ChannelKind::Bsc;
  rec.decoder_id = "lp";
  rec.search.method = "isa";
  rec.search.seed = seed;

  int w = w_bsc(p);
  rec.search.weight_trajectory.push_back(w);

  for (int step = 0; step < n; ++step) {
    rec.search.steps = step + 1;
    const BinaryVector M = median(p);
    auto res_m = dec.decode(bsc_sign_llr(n, M));
    if (res_m.pseudo_codeword.is_zero())
      throw LpSolverError("isa: median decoded to the zero codeword");
    const int w_m = w_bsc(res_m.pseudo_codeword);
    if (w_m > w) throw std::logic_error("isa: pseudo-codeword weight increased");
    if (w_m < w) {
      p = res_m.pseudo_codeword;
      w = w_m;
      rec.search.weight_trajectory.push_back(w);
      continue;
    }
    // Equal weight: probe each leave-one-out sub-support in ascending order;
    // the first failing probe becomes the next input.
    bool all_probes_decode_to_zero = true;
    for (std::size_t t = 0; t < M.support.size(); ++t) {
      std::vector<int> sub = M.support;
      sub.erase(sub.begin() + static_cast<long>(t));
      auto res_p = dec.decode(bsc_sign_llr(n, BinaryVector(n, sub)));
      if (!res_p.pseudo_codeword.is_zero()) {
        p = res_p.pseudo_codeword;
        const int w_p = w_bsc(p);
        if (w_p > w) throw std::logic_error("isa: pseudo-codeword weight increased");
        w = w_p;
        rec.search.weight_trajectory.push_back(w);
        all_probes_decode_to_zero = false;
        break;
      }
    }
    if (all_probes_decode_to_zero) {
      rec.bsc_support = M;
      rec.weight = M.weight();
      rec.pcw = res_m.pseudo_codeword;
      rec.search.converged = true;
      return rec;
    }
  }
  throw std::logic_error("isa: did not halt within n steps");
}

/// Minimum-norm noise configuration equidistant (in channel log-probability)
/// between the zero codeword and p: the projection of the origin onto the
/// decision hyperplane sum_i p_i (1 - n_i) = 0, i.e. n = p * (sum p)/(sum p^2).
/// Its squared norm equals w_awgn(p).
inline std::vector<double> awgn_instanton_from_pcw(const PseudoCodeword& p) {
  if (p.is_zero(0.0) || p.length() == 0)
    throw std::invalid_argument("awgn_instanton_from_pcw: zero pseudo-codeword");
  double s = 0.0, ss = 0.0;
  for (double v : p.f) {
    s += v;
    ss += v * v;
  }
  const double factor = s / ss;
  std::vector<double> noise(p.f.size());
  for (std::size_t i = 0; i < p.f.size(); ++i) noise[i] = factor * p.f[i];
  return noise;
}

inline LlrVector awgn_llr_for_noise(const std::vector<double>& noise, double scale = 1.0,
                                    double sigma = 1.0) {
  LlrVector g;
  g.values.resize(noise.size());
  for (std::size_t i = 0; i < noise.size(); ++i)
    g.values[i] = 2.0 * (1.0 - scale * noise[i]) / (sigma * sigma);
  return g;
}

/// Pseudo-codeword search for LP decoding over the AWGNC: decode, project the
/// output onto its instanton candidate, push the candidate slightly past the
/// error surface, decode again; a fixed point of this map is the instanton.
inline InstantonRecord pcs_awgn_lp(LpDecoder& dec, double initial_noise_strength,
                                   std::uint64_t seed, const SearchTolerances& tol = {}) {
  const int n = dec.instance().n;
  if (!(initial_noise_strength > 0.0))
    throw std::invalid_argument("pcs: initial noise strength must be > 0");
  Rng rng(seed);

  PseudoCodeword p;
  bool initialized = false;
  for (int attempt = 0; attempt < tol.isa_retry_cap; ++attempt) {
    std::vector<double> noise(n);
    for (auto& v : noise) v = initial_noise_strength * rng.gaussian();
    auto res = dec.decode(awgn_llr_for_noise(noise));
    if (!res.pseudo_codeword.is_zero()) {
      p = res.pseudo_codeword;
      initialized = true;
      break;
    }
  }
  if (!initialized)
    throw RetryCapError("pcs: no failing initialization in " +
                        std::to_string(tol.isa_retry_cap) + " attempts");

  InstantonRecord rec;
  rec.channel = ChannelKind::Awgnc;
  rec.decoder_id = "lp";
  rec.search.method = "pcs";
  rec.search.seed = seed;

  for (int step = 0; step < tol.pcs_step_cap; ++step) {
    rec.search.steps = step + 1;
    rec.search.weight_trajectory.push_back(w_awgn(p));
    const auto candidate = awgn_instanton_from_pcw(p);
    auto res = dec.decode(awgn_llr_for_noise(candidate, 1.0 + tol.delta));
    if (res.pseudo_codeword.is_zero())
      throw LpSolverError("pcs: nudged instanton candidate decoded to zero");
    if (res.pseudo_codeword.linf_distance(p) < kIntegralTol) {
      rec.awgn_noise = candidate;
      rec.weight = w_awgn(p);
      rec.pcw = p;
      rec.search.converged = true;
      return rec;
    }
    p = res.pseudo_codeword;
  }
  // Step cap exceeded: report the trajectory with the latest candidate.
  rec.awgn_noise = awgn_instanton_from_pcw(p);
  rec.weight = w_awgn(p);
  rec.pcw = p;
  rec.search.converged = false;
  return rec;
}

/// Bracket the decoder error surface along a fixed direction: returns
/// (largest scale observed to decode correctly, smallest scale observed to
/// fail) with relative gap <= tau_surface, or nullopt when no failure occurs
/// below the scale cap. `fails(s)` must report the decoding outcome at
/// received = 1 - s * direction.
inline std::optional<std::pair<double, double>> bracket_error_surface(
    const std::function<bool(double)>& fails, const SearchTolerances& tol = {}) {
  if (fails(0.0)) return std::make_pair(0.0, 0.0);  // degenerate: fails at zero noise
  double lo = 0.0, hi = 1.0;
  while (!fails(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > tol.scale_cap) return std::nullopt;
  }
  while (hi - lo > tol.tau_surface * hi) {
    const double mid = 0.5 * (lo + hi);
    if (fails(mid))
      hi = mid;
    else
      lo = mid;
  }
  return std::make_pair(lo, hi);
}

/// Scale s* placing a unit direction exactly on the error surface (failure
/// side). Succeeds below, fails at and slightly above s*.
inline std::optional<double> scale_to_error_surface(const std::function<bool(double)>& fails,
                                                    const SearchTolerances& tol = {}) {
  auto bracket = bracket_error_surface(fails, tol);
  if (!bracket) return std::nullopt;
  return bracket->second;
}

/// Failure predicate for an iterative decoder on the AWGNC at noise
/// `scale * direction` (BPSK all-zero transmission, received = 1 - noise).
inline std::function<bool(double)> make_iterative_fail_predicate(
    const TannerGraph& g, const IterConfig& cfg, std::vector<double> direction,
    double sigma = 1.0) {
  if (static_cast<int>(direction.size()) != g.n)
    throw std::invalid_argument("fail predicate: direction length");
  if (cfg.algorithm == IterAlgorithm::GallagerA || cfg.algorithm == IterAlgorithm::GallagerB) {
    auto dec = std::make_shared<GallagerDecoder>(g, cfg);
    return [dec, direction, n = g.n](double scale) {
      std::vector<int> supp;
      for (int i = 0; i < n; ++i)
        if (1.0 - scale * direction[i] < 0.0) supp.push_back(i);
      return dec->decode(BinaryVector(n, supp)).outcome != DecodeOutcome::ConvergedZero;
    };
  }
  auto dec = std::make_shared<SoftDecoder>(g, cfg);
  return [dec, direction, sigma, n = g.n](double scale) {
    LlrVector gamma;
    gamma.values.resize(n);
    for (int i = 0; i < n; ++i)
      gamma.values[i] = 2.0 * (1.0 - scale * direction[i]) / (sigma * sigma);
    return dec->decode(gamma).outcome != DecodeOutcome::ConvergedZero;
  };
}

/// Downhill-simplex (amoeba) configuration. Vertices live in noise-direction
/// space; the objective of a direction is the squared norm of its rescaling
/// onto the error surface.
struct AmoebaConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double tau_stop = 1e-4;  // simplex diameter stop
  int max_evaluations = 5000;
  std::optional<std::vector<int>> restrict_support;  // optimize only these bits

  void validate() const {
    if (reflection <= 0 || expansion <= 0 || contraction <= 0 || shrink <= 0 || tau_stop <= 0)
      throw std::invalid_argument("AmoebaConfig: coefficients and tolerances must be positive");
  }
};

/// Instanton search for iterative decoding over the AWGNC by Nelder-Mead over
/// noise directions, each vertex rescaled onto the error surface.
inline InstantonRecord amoeba_iterative(const TannerGraph& g, const IterConfig& iter_cfg,
                                        double sigma, const AmoebaConfig& cfg,
                                        std::uint64_t seed,
                                        const std::vector<double>* seed_point = nullptr,
                                        const SearchTolerances& tol = {}) {
  cfg.validate();
  Rng rng(seed);
  std::vector<int> dims;
  if (cfg.restrict_support) {
    dims = *cfg.restrict_support;
    for (int i : dims)
      if (i < 0 || i >= g.n) throw std::invalid_argument("amoeba: restricted support out of range");
  } else {
    dims.resize(g.n);
    for (int i = 0; i < g.n; ++i) dims[i] = i;
  }
  const int d = static_cast<int>(dims.size());

  auto expand_direction = [&](const std::vector<double>& v) {
    std::vector<double> full(g.n, 0.0);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) return full;
    for (int k = 0; k < d; ++k) full[dims[k]] = v[k] / norm;
    return full;
  };

  int evaluations = 0;
  auto objective = [&](const std::vector<double>& v) -> std::pair<double, std::pair<double, double>> {
    ++evaluations;
    auto dir = expand_direction(v);
    bool all_zero = true;
    for (double x : dir)
      if (x != 0.0) all_zero = false;
    if (all_zero) return {std::numeric_limits<double>::infinity(), {0, 0}};
    auto fails = make_iterative_fail_predicate(g, iter_cfg, dir, sigma);
    auto bracket = bracket_error_surface(fails, tol);
    if (!bracket) return {std::numeric_limits<double>::infinity(), {0, 0}};
    const double s = bracket->second;
    return {s * s, *bracket};
  };

  // Initial simplex: seed direction (or random), plus axis perturbations.
  std::vector<std::vector<double>> verts;
  std::vector<double> v0(d);
  if (seed_point) {
    if (static_cast<int>(seed_point->size()) != g.n)
      throw std::invalid_argument("amoeba: seed point length");
    for (int k = 0; k < d; ++k) v0[k] = (*seed_point)[dims[k]];
  } else {
    for (auto& x : v0) x = rng.gaussian();
  }
  double n0 = 0.0;
  for (double x : v0) n0 += x * x;
  if (n0 < 1e-12) v0[0] = 1.0;
  verts.push_back(v0);
  for (int k = 0; k < d; ++k) {
    auto v = v0;
    v[k] += 0.5 * std::sqrt(std::max(n0, 1.0));
    verts.push_back(v);
  }

  struct Eval {
    double value;
    std::pair<double, double> bracket;
  };
  std::vector<Eval> vals(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    auto [val, br] = objective(verts[i]);
    vals[i] = {val, br};
  }

  InstantonRecord rec;
  rec.channel = ChannelKind::Awgnc;
  rec.decoder_id = to_string(iter_cfg.algorithm);
  rec.search.method = "amoeba";
  rec.search.seed = seed;

  auto order = [&]() {
    std::vector<int> idx(verts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return vals[a].value < vals[b].value; });
    std::vector<std::vector<double>> nv(verts.size());
    std::vector<Eval> ne(verts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      nv[i] = verts[idx[i]];
      ne[i] = vals[idx[i]];
    }
    verts.swap(nv);
    vals.swap(ne);
  };

  auto diameter = [&]() {
    double best = 0.0;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      double dist = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = verts[i][k] - verts[0][k];
        dist += diff * diff;
      }
      best = std::max(best, std::sqrt(dist));
    }
    return best;
  };

  int iterations = 0;
  while (true) {
    order();
    rec.search.weight_trajectory.push_back(vals[0].value);
    ++iterations;
    if (diameter() < cfg.tau_stop) {
      rec.search.converged = true;
      break;
    }
    if (evaluations >= cfg.max_evaluations) {
      rec.search.converged = false;
      break;
    }

    const std::size_t worst = verts.size() - 1;
    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < worst; ++i)
      for (int k = 0; k < d; ++k) centroid[k] += verts[i][k];
    for (int k = 0; k < d; ++k) centroid[k] /= static_cast<double>(worst);

    auto combine = [&](double t) {
      std::vector<double> v(d);
      for (int k = 0; k < d; ++k) v[k] = centroid[k] + t * (verts[worst][k] - centroid[k]);
      return v;
    };

    auto reflected = combine(-cfg.reflection);
    auto [rv, rb] = objective(reflected);
    if (rv < vals[0].value) {
      auto expanded = combine(-cfg.reflection * cfg.expansion);
      auto [ev, eb] = objective(expanded);
      if (ev < rv) {
        verts[worst] = expanded;
        vals[worst] = {ev, eb};
      } else {
        verts[worst] = reflected;
        vals[worst] = {rv, rb};
      }
      continue;
    }
    if (rv < vals[worst - 1].value) {
      verts[worst] = reflected;
      vals[worst] = {rv, rb};
      continue;
    }
    auto contracted = combine(cfg.contraction);
    auto [cv, cb] = objective(contracted);
    if (cv < vals[worst].value) {
      verts[worst] = contracted;
      vals[worst] = {cv, cb};
      continue;
    }
    for (std::size_t i = 1; i < verts.size(); ++i) {
      for (int k = 0; k < d; ++k)
        verts[i][k] = verts[0][k] + cfg.shrink * (verts[i][k] - verts[0][k]);
      auto [sv, sb] = objective(verts[i]);
      vals[i] = {sv, sb};
    }
  }

  order();
  if (!std::isfinite(vals[0].value))
    throw RetryCapError("amoeba: no failing direction found below the scale cap");

  const auto dir = expand_direction(verts[0]);
  const double s_fail = vals[0].bracket.second;
  rec.awgn_noise.resize(g.n);
  for (int i = 0; i < g.n; ++i) rec.awgn_noise[i] = s_fail * dir[i];
  rec.weight = vals[0].value;
  rec.search.steps = iterations;
  rec.search.surface_scale_ok = vals[0].bracket.first;
  rec.search.surface_scale_fail = s_fail;

  // Trapping-set attribution from the failing decode at the surface.
  {
    auto fails_trace = [&]() {
      if (iter_cfg.algorithm == IterAlgorithm::GallagerA ||
          iter_cfg.algorithm == IterAlgorithm::GallagerB) {
        std::vector<int> supp;
        for (int i = 0; i < g.n; ++i)
          if (1.0 - s_fail * dir[i] < 0.0) supp.push_back(i);
        return gallager_decode(g, BinaryVector(g.n, supp), iter_cfg);
      }
      LlrVector gamma;
      gamma.values.resize(g.n);
      for (int i = 0; i < g.n; ++i)
        gamma.values[i] = 2.0 * (1.0 - s_fail * dir[i]) / (sigma * sigma);
      IterConfig cfg2 = iter_cfg;
      return cfg2.algorithm == IterAlgorithm::Bp ? bp_decode(g, gamma, cfg2)
                                                 : min_sum_decode(g, gamma, cfg2);
    }();
    if (fails_trace.outcome == DecodeOutcome::Failure)
      rec.ts = extract_trapping_set(fails_trace, g, 10);
  }
  return rec;
}

/// Result of the combinatorial critical-number search.
struct CriticalNumberResult {
  std::optional<int> critical_number;  // empty when the cap was exhausted
  BinaryVector witness;
  int tested_up_to = 0;  // critical number exceeds this when not found
};

/// Smallest k such that some k-subset of the trapping set (all other bits
/// correct) drives the decoder into a failure confined to the set's closure.
/// Subsets are scanned in lexicographic order; failures whose
/// not-eventually-correct set leaks outside the closure do not count.
inline CriticalNumberResult critical_number_search(const TannerGraph& g,
                                                   const std::vector<int>& trapping_set,
                                                   const IterConfig& cfg, int size_cap = 5) {
  GallagerDecoder dec(g, cfg);
  const auto closure = trapping_closure(g, trapping_set);
  const int s = static_cast<int>(trapping_set.size());
  CriticalNumberResult out;
  std::vector<int> pick;
  bool found = false;
  BinaryVector witness;

  std::function<void(int, int)> combos = [&](int start, int k) {
    if (found) return;
    if (k == 0) {
      std::vector<int> supp;
      for (int idx : pick) supp.push_back(trapping_set[idx]);
      BinaryVector input(g.n, supp);
      auto trace = dec.decode(input);
      if (trace.outcome != DecodeOutcome::Failure) return;
      auto rep = extract_trapping_set(trace, g, 10);
      if (std::includes(closure.begin(), closure.end(), rep.support.begin(),
                        rep.support.end())) {
        found = true;
        witness = input;
      }
      return;
    }
    for (int i = start; i <= s - k && !found; ++i) {
      pick.push_back(i);
      combos(i + 1, k - 1);
      pick.pop_back();
    }
  };

  for (int k = 1; k <= std::min(size_cap, s); ++k) {
    combos(0, k);
    out.tested_up_to = k;
    if (found) {
      out.critical_number = k;
      out.witness = witness;
      return out;
    }
  }
  return out;
}

/// Instanton verification. For the LP decoder over the BSC, failure of the
/// candidate plus success of every leave-one-out sub-support suffices (an
/// input whose support contains an instanton always fails). For Gallager
/// decoding all proper sub-supports are checked, which is exponential; the
/// cap bounds the subset count.
inline bool verify_instanton_lp(LpDecoder& dec, const BinaryVector& candidate) {
  const int n = dec.instance().n;
  if (candidate.length != n) throw std::invalid_argument("verify_instanton: length mismatch");
  if (candidate.is_zero()) return false;
  if (dec.decode(bsc_sign_llr(n, candidate)).pseudo_codeword.is_zero()) return false;
  for (std::size_t t = 0; t < candidate.support.size(); ++t) {
    std::vector<int> sub = candidate.support;
    sub.erase(sub.begin() + static_cast<long>(t));
    if (!dec.decode(bsc_sign_llr(n, BinaryVector(n, sub))).pseudo_codeword.is_zero())
      return false;
  }
  return true;
}

inline bool verify_instanton_gallager(const TannerGraph& g, const IterConfig& cfg,
                                      const BinaryVector& candidate,
                                      long max_subsets = 1 << 20) {
  if (candidate.is_zero()) return false;
  const int k = candidate.weight();
  if (k > 62 || (1LL << k) - 2 > max_subsets)
    throw std::invalid_argument("verify_instanton: subset count exceeds cap");
  GallagerDecoder dec(g, cfg);
  if (dec.decode(candidate).outcome != DecodeOutcome::Failure) return false;
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << k); ++mask) {
    std::vector<int> sub;
    for (int t = 0; t < k; ++t)
      if (mask & (1ULL << t)) sub.push_back(candidate.support[t]);
    if (dec.decode(BinaryVector(candidate.length, sub)).outcome == DecodeOutcome::Failure)
      return false;
  }
  return true;
}

}  // namespace errorfloor
