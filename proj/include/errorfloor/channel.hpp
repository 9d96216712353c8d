#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "errorfloor/rng.hpp"
#include "errorfloor/tanner_graph.hpp"

namespace errorfloor {

enum class ChannelKind { Bsc, Awgnc };

/// BSC(epsilon) or AWGNC(sigma). Exactly the parameter matching the kind is
/// meaningful; both are validated to their open ranges.
struct ChannelModel {
  ChannelKind kind = ChannelKind::Bsc;
  double epsilon = 0.0;  // BSC transition probability, in (0, 1/2)
  double sigma = 0.0;    // AWGNC noise standard deviation, > 0

  static ChannelModel bsc(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
      throw std::invalid_argument("ChannelModel: epsilon must be in (0, 1/2)");
    ChannelModel ch;
    ch.kind = ChannelKind::Bsc;
    ch.epsilon = epsilon;
    return ch;
  }

  static ChannelModel awgn(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("ChannelModel: sigma must be > 0");
    ChannelModel ch;
    ch.kind = ChannelKind::Awgnc;
    ch.sigma = sigma;
    return ch;
  }
};

/// Channel output for the all-zero codeword: hard bits for the BSC, or the
/// BPSK observation vector (0 -> +1) plus noise for the AWGNC.
struct ChannelOutput {
  ChannelKind kind = ChannelKind::Bsc;
  BinaryVector bits;            // BSC payload
  std::vector<double> samples;  // AWGNC payload

  static ChannelOutput from_bits(BinaryVector v) {
    ChannelOutput o;
    o.kind = ChannelKind::Bsc;
    o.bits = std::move(v);
    return o;
  }
  static ChannelOutput from_samples(std::vector<double> s) {
    ChannelOutput o;
    o.kind = ChannelKind::Awgnc;
    o.samples = std::move(s);
    return o;
  }

  int length() const {
    return kind == ChannelKind::Bsc ? bits.length : static_cast<int>(samples.size());
  }
};

/// Per-variable negative log-likelihood ratios; the decoder-facing view of
/// any channel output.
struct LlrVector {
  std::vector<double> values;

  int length() const { return static_cast<int>(values.size()); }
};

/// gamma_i = log(Pr(y_i | 0) / Pr(y_i | 1)).
/// BSC: +log((1-eps)/eps) for a received 0, the negative for a received 1.
/// AWGNC: 2 y_i / sigma^2.
inline LlrVector llr(const ChannelModel& ch, const ChannelOutput& out) {
  if (ch.kind != out.kind) throw std::invalid_argument("llr: channel/output kind mismatch");
  LlrVector g;
  if (ch.kind == ChannelKind::Bsc) {
    const double mag = std::log((1.0 - ch.epsilon) / ch.epsilon);
    g.values.assign(out.bits.length, mag);
    for (int i : out.bits.support) g.values[i] = -mag;
  } else {
    g.values.reserve(out.samples.size());
    for (double y : out.samples) g.values.push_back(2.0 * y / (ch.sigma * ch.sigma));
  }
  return g;
}

/// Sample the channel output for the transmitted all-zero codeword.
inline ChannelOutput sample_zero_codeword(const ChannelModel& ch, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_zero_codeword: n must be >= 1");
  if (ch.kind == ChannelKind::Bsc) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (rng.bernoulli(ch.epsilon)) support.push_back(i);
    return ChannelOutput::from_bits(BinaryVector(n, std::move(support)));
  }
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = 1.0 + ch.sigma * rng.gaussian();
  return ChannelOutput::from_samples(std::move(samples));
}

/// Log-probability of observing `out` given the all-zero codeword. For the
/// AWGNC this is the log-density up to its additive normalization constant.
inline double log_probability(const ChannelModel& ch, const ChannelOutput& out) {
  if (ch.kind != out.kind)
    throw std::invalid_argument("log_probability: channel/output kind mismatch");
  if (ch.kind == ChannelKind::Bsc) {
    const int flips = out.bits.weight();
    return flips * std::log(ch.epsilon) + (out.bits.length - flips) * std::log(1.0 - ch.epsilon);
  }
  double ss = 0.0;
  for (double y : out.samples) ss += (y - 1.0) * (y - 1.0);
  return -ss / (2.0 * ch.sigma * ch.sigma);
}

/// E_b/N_0 in dB for BPSK at code rate r and noise deviation sigma.
inline double ebn0_db(double sigma, double rate) {
  return 10.0 * std::log10(1.0 / (2.0 * rate * sigma * sigma));
}

inline double sigma_from_ebn0_db(double ebn0_db_value, double rate) {
  const double ebn0 = std::pow(10.0, ebn0_db_value / 10.0);
  return std::sqrt(1.0 / (2.0 * rate * ebn0));
}

}  // namespace errorfloor
