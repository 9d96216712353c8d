#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "errorfloor/census.hpp"
#include "errorfloor/instanton.hpp"
#include "errorfloor/lp_decode.hpp"
#include "errorfloor/rng.hpp"
#include "errorfloor/tanner155.hpp"

using namespace errorfloor;

namespace {

struct TannerFixture {
  TannerGraph g = build_tanner_155();
  LcLpInstance inst = build_lclp(g);
  LpDecoder::Snapshot start = canonical_start(inst);
  SubgraphClass census53 = census_trapping_subgraphs(g, 5, 3);
};

TannerFixture& fixture() {
  static TannerFixture f;
  return f;
}

}  // namespace

TEST_CASE("ISA finds verified instantons on the Tanner code") {
  auto& f = fixture();
  LpDecoder dec(f.inst);

  std::set<std::vector<int>> size5;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    dec.restore(f.start);
    auto rec = isa_bsc_lp(dec, 20, seed);
    CHECK(rec.search.converged);
    CHECK(rec.weight >= 5.0);  // minimum instanton size for this code
    CHECK(rec.search.steps < f.g.n);
    // Monotone non-increasing weight trajectory.
    for (std::size_t k = 1; k < rec.search.weight_trajectory.size(); ++k)
      CHECK(rec.search.weight_trajectory[k] <= rec.search.weight_trajectory[k - 1]);
    REQUIRE(rec.pcw.has_value());
    CHECK(cost(bsc_sign_llr(f.g.n, rec.bsc_support), *rec.pcw) <= 1e-9);

    if (rec.bsc_support.weight() == 5) {
      size5.insert(rec.bsc_support.support);
      CHECK(w_bsc(*rec.pcw) == 9);
      // Support is a (5,3) trapping set.
      CHECK(std::binary_search(f.census53.members.begin(), f.census53.members.end(),
                               rec.bsc_support.support));
    }
  }
  CHECK(!size5.empty());

  // ISA outputs satisfy the instanton predicate by construction.
  dec.restore(f.start);
  auto rec = isa_bsc_lp(dec, 20, 3);
  CHECK(verify_instanton_lp(dec, rec.bsc_support));
}

TEST_CASE("ISA determinism: same seed, same instanton") {
  auto& f = fixture();
  LpDecoder dec(f.inst);
  dec.restore(f.start);
  auto a = isa_bsc_lp(dec, 20, 42);
  dec.restore(f.start);
  auto b = isa_bsc_lp(dec, 20, 42);
  CHECK(a.bsc_support == b.bsc_support);
  CHECK(a.search.weight_trajectory == b.search.weight_trajectory);
}

TEST_CASE("awgn instanton projection formula") {
  PseudoCodeword ind{{1, 0, 1, 1, 0}};
  auto n1 = awgn_instanton_from_pcw(ind);
  CHECK(n1 == std::vector<double>{1, 0, 1, 1, 0});

  PseudoCodeword p{{1.0, 0.5}};
  auto n2 = awgn_instanton_from_pcw(p);
  CHECK(n2[0] == Catch::Approx(1.2));
  CHECK(n2[1] == Catch::Approx(0.6));
  CHECK(n2[0] * n2[0] + n2[1] * n2[1] == Catch::Approx(1.8));

  PseudoCodeword zero{{0, 0}};
  CHECK_THROWS_AS(awgn_instanton_from_pcw(zero), std::invalid_argument);
}

TEST_CASE("awgn instanton: norm identity and constrained-minimum property") {
  Rng rng(2718);
  for (int t = 0; t < 10000; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform_below(10));
    std::vector<double> f(n);
    bool nonzero = false;
    for (auto& v : f) {
      v = rng.bernoulli(0.4) ? 0.0 : rng.uniform();
      if (v > 0) nonzero = true;
    }
    if (!nonzero) f[0] = 0.3;
    PseudoCodeword p{f};
    auto noise = awgn_instanton_from_pcw(p);
    double norm2 = 0.0, constraint = 0.0;
    for (int i = 0; i < n; ++i) {
      norm2 += noise[i] * noise[i];
      constraint += p.f[i] * (1.0 - noise[i]);
    }
    CHECK(norm2 == Catch::Approx(w_awgn(p)).epsilon(1e-10));
    CHECK(constraint == Catch::Approx(0.0).margin(1e-9));
  }

  // Numerical minimality: no tangent perturbation on the decision hyperplane
  // shortens the noise.
  PseudoCodeword p{{0.9, 0.4, 0.0, 0.7, 0.2}};
  auto noise = awgn_instanton_from_pcw(p);
  double base = 0.0;
  for (double v : noise) base += v * v;
  Rng rng2(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> d(5);
    for (auto& v : d) v = rng2.gaussian();
    // Project d onto the hyperplane sum p_i d_i = 0.
    double pd = 0.0, pp = 0.0;
    for (int i = 0; i < 5; ++i) {
      pd += p.f[i] * d[i];
      pp += p.f[i] * p.f[i];
    }
    for (int i = 0; i < 5; ++i) d[i] -= pd / pp * p.f[i];
    double perturbed = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double v = noise[i] + 0.05 * d[i];
      perturbed += v * v;
    }
    CHECK(perturbed >= base - 1e-12);
  }

  // The slightly scaled instanton lies strictly on the failure side.
  auto gamma = awgn_llr_for_noise(noise, 1.0 + 1e-6);
  CHECK(cost(gamma, p) < 0.0);
}

TEST_CASE("PCS converges to self-consistent instantons") {
  auto& f = fixture();
  LpDecoder dec(f.inst);
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    dec.restore(f.start);
    auto rec = pcs_awgn_lp(dec, 1.2, seed);
    if (!rec.search.converged) continue;
    ++converged;
    REQUIRE(rec.pcw.has_value());
    double norm2 = 0.0;
    for (double v : rec.awgn_noise) norm2 += v * v;
    CHECK(norm2 == Catch::Approx(w_awgn(*rec.pcw)).epsilon(1e-9));
    CHECK(rec.weight == Catch::Approx(w_awgn(*rec.pcw)));

    // Fixed point: decoding the nudged instanton returns the same
    // pseudo-codeword in one step.
    auto res = dec.decode(awgn_llr_for_noise(rec.awgn_noise, 1.0 + 1e-6));
    CHECK(res.pseudo_codeword.linf_distance(*rec.pcw) < kIntegralTol);
  }
  CHECK(converged >= 2);
}

TEST_CASE("error-surface bracketing on the single parity check") {
  TannerGraph g = TannerGraph::from_check_lists(3, {{0, 1, 2}});
  IterConfig cfg;
  cfg.algorithm = IterAlgorithm::Bp;
  cfg.max_iterations = 0;  // channel hard decision only
  auto fails = make_iterative_fail_predicate(g, cfg, {1.0, 0.0, 0.0});
  auto s = scale_to_error_surface(fails);
  REQUIRE(s.has_value());
  CHECK(*s == Catch::Approx(1.0).epsilon(1e-5));

  auto bracket = bracket_error_surface(fails);
  REQUIRE(bracket.has_value());
  CHECK(!fails(bracket->first));
  CHECK(fails(bracket->second));
  CHECK(bracket->second - bracket->first <= 1e-6 * bracket->second * 1.001);

  // Tolerance refinement does not move the surface.
  SearchTolerances tighter;
  tighter.tau_surface = 1e-8;
  auto s2 = scale_to_error_surface(fails, tighter);
  REQUIRE(s2.has_value());
  CHECK(*s2 == Catch::Approx(*s).margin(2e-6));

  // A direction the decoder always corrects has no surface below the cap.
  IterConfig strong;
  strong.algorithm = IterAlgorithm::Bp;
  strong.max_iterations = 10;
  auto never = make_iterative_fail_predicate(
      g, strong, {0.57735026919, 0.57735026919, 0.57735026919});
  // All three bits pushed equally: the all-one decision flips to the 111
  // pattern? 111 is odd parity, not a codeword, so failures do occur; use a
  // subcritical cap instead to exercise the nullopt path.
  SearchTolerances capped;
  capped.scale_cap = 0.5;
  CHECK(!scale_to_error_surface(never, capped).has_value());
}

TEST_CASE("amoeba finds the single-bit instanton of the parity-check code") {
  TannerGraph g = TannerGraph::from_check_lists(3, {{0, 1, 2}});
  IterConfig cfg;
  cfg.algorithm = IterAlgorithm::Bp;
  cfg.max_iterations = 0;
  AmoebaConfig am;
  am.tau_stop = 1e-5;
  auto rec = amoeba_iterative(g, cfg, 1.0, am, 7);
  // Optimal weight is 1 (push one bit across zero).
  CHECK(rec.weight < 1.3);
  CHECK(rec.weight >= 1.0 - 1e-6);
  // Certificates replay.
  std::vector<double> dir(3);
  double norm = std::sqrt(rec.weight);
  for (int i = 0; i < 3; ++i) dir[i] = rec.awgn_noise[i] / norm;
  auto fails = make_iterative_fail_predicate(g, cfg, dir);
  CHECK(fails(rec.search.surface_scale_fail));
  CHECK(!fails(rec.search.surface_scale_ok));
}

TEST_CASE("amoeba with LP seed and restricted support on the Tanner code") {
  auto& f = fixture();
  LpDecoder dec(f.inst);
  dec.restore(f.start);
  auto isa_rec = isa_bsc_lp(dec, 20, 11);
  REQUIRE(isa_rec.pcw.has_value());
  auto seed_noise = awgn_instanton_from_pcw(*isa_rec.pcw);

  // The LP instanton seed already fails for a large-iteration decoder.
  IterConfig ms;
  ms.algorithm = IterAlgorithm::MinSum;
  ms.max_iterations = 200;
  {
    std::vector<double> dir = seed_noise;
    double norm = 0.0;
    for (double v : dir) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : dir) v /= norm;
    auto fails = make_iterative_fail_predicate(f.g, ms, dir);
    CHECK(fails(norm * 1.02));
  }

  // Restricted-support amoeba over the seed support converges to a surface
  // point with replayable certificates.
  IterConfig bp;
  bp.algorithm = IterAlgorithm::Bp;
  bp.max_iterations = 20;
  AmoebaConfig am;
  am.tau_stop = 1e-3;
  am.max_evaluations = 400;
  std::vector<int> support;
  for (int i = 0; i < f.g.n; ++i)
    if (seed_noise[i] > 0.3) support.push_back(i);
  am.restrict_support = support;
  auto rec = amoeba_iterative(f.g, bp, 1.0, am, 13, &seed_noise);
  CHECK(rec.weight > 0.0);
  std::vector<double> dir(f.g.n);
  const double norm = std::sqrt(rec.weight);
  for (int i = 0; i < f.g.n; ++i) dir[i] = rec.awgn_noise[i] / norm;
  auto fails = make_iterative_fail_predicate(f.g, bp, dir);
  CHECK(fails(rec.search.surface_scale_fail));
  CHECK(!fails(rec.search.surface_scale_ok));
  if (rec.ts) CHECK(rec.ts->a > 0);
}

TEST_CASE("critical numbers of Tanner-code trapping sets") {
  auto& f = fixture();
  IterConfig cfg;
  cfg.algorithm = IterAlgorithm::GallagerA;
  cfg.max_iterations = 200;

  for (std::size_t idx : {std::size_t(0), std::size_t(60), std::size_t(154)}) {
    auto res = critical_number_search(f.g, f.census53.members[idx], cfg);
    REQUIRE(res.critical_number.has_value());
    CHECK(*res.critical_number == 3);
    // Witness minimality: every strict subset decodes correctly.
    GallagerDecoder dec(f.g, cfg);
    const auto& w = res.witness.support;
    for (std::uint32_t mask = 1; mask + 1 < (1u << w.size()); ++mask) {
      std::vector<int> sub;
      for (std::size_t t = 0; t < w.size(); ++t)
        if (mask & (1u << t)) sub.push_back(w[t]);
      CHECK(dec.decode(BinaryVector(f.g.n, sub)).outcome == DecodeOutcome::ConvergedZero);
    }
  }

  auto census44 = census_trapping_subgraphs(f.g, 4, 4);
  REQUIRE(census44.count() == 465);
  for (std::size_t idx : {std::size_t(0), std::size_t(200)}) {
    auto res = critical_number_search(f.g, census44.members[idx], cfg);
    REQUIRE(res.critical_number.has_value());
    CHECK(*res.critical_number == 4);
  }
}

TEST_CASE("verify_instanton rejects non-instantons") {
  auto& f = fixture();
  LpDecoder dec(f.inst);
  dec.restore(f.start);

  // Single flips decode correctly, so they are not instantons.
  for (int i = 0; i < 155; i += 31) CHECK(!verify_instanton_lp(dec, BinaryVector(155, {i})));

  // Superset property: adding bits to a verified instanton still fails.
  auto rec = isa_bsc_lp(dec, 20, 21);
  REQUIRE(verify_instanton_lp(dec, rec.bsc_support));
  Rng rng(77);
  for (int t = 0; t < 5; ++t) {
    auto supp = rec.bsc_support.support;
    int extra = static_cast<int>(rng.uniform_below(155));
    while (std::find(supp.begin(), supp.end(), extra) != supp.end())
      extra = static_cast<int>(rng.uniform_below(155));
    supp.push_back(extra);
    auto res = dec.decode(bsc_sign_llr(155, BinaryVector(155, supp)));
    CHECK(res.failure());
    // With one extra bit the support strictly contains an instanton, so it
    // cannot itself be one.
    CHECK(!verify_instanton_lp(dec, BinaryVector(155, supp)));
  }
}

TEST_CASE("gallager instanton verification on a witness") {
  auto& f = fixture();
  IterConfig cfg;
  cfg.algorithm = IterAlgorithm::GallagerA;
  cfg.max_iterations = 200;
  auto res = critical_number_search(f.g, f.census53.members[5], cfg);
  REQUIRE(res.critical_number.has_value());
  CHECK(verify_instanton_gallager(f.g, cfg, res.witness));
}

TEST_CASE("instanton record JSON shape") {
  auto& f = fixture();
  LpDecoder dec(f.inst);
  dec.restore(f.start);
  auto rec = isa_bsc_lp(dec, 20, 2);
  auto j = record_to_json(rec);
  CHECK(j["channel"] == "bsc");
  CHECK(j["method"] == "isa");
  CHECK(j.contains("support"));
  CHECK(j.contains("trajectory"));
  CHECK(j.contains("pcw_w_bsc"));
}
