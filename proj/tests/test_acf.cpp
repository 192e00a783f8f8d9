#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "foeval/acf.hpp"
#include "foeval/error.hpp"
#include "foeval/evaluate.hpp"
#include "foeval/rng.hpp"
#include "foeval/synth.hpp"
#include "oracles.hpp"

using namespace foeval;

namespace {

std::span<const double> mid_frame(const Waveform& wave, const FrameSpec& spec) {
  const std::size_t count = spec.frame_count(wave.samples.size(), wave.rate);
  return frame_slice(wave, spec, count / 2);
}

}  // namespace

TEST_CASE("clean tone frame yields a strong candidate at fo") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  const SynthResult synth = synthesize(spec);
  const FrameSpec frames;
  const auto candidates =
      autocorr_candidates(mid_frame(synth.wave, frames), 8000, {});
  REQUIRE_FALSE(candidates.empty());
  CHECK(candidates.front().voiced());
  CHECK(std::abs(candidates.front().fo_hz - 200.0) <= 1.0);
  CHECK(candidates.front().strength > 0.9);
}

TEST_CASE("white noise frame ranks the unvoiced candidate first") {
  Rng rng(314);
  Waveform noise;
  noise.rate = 8000;
  noise.samples.resize(400);
  for (double& s : noise.samples) s = 0.3 * rng.gaussian();
  const auto candidates = autocorr_candidates(noise.samples, 8000, {});
  REQUIRE_FALSE(candidates.empty());
  CHECK_FALSE(candidates.front().voiced());
}

TEST_CASE("strong period-2 modulation pulls the top candidate to fo/2") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  spec.subh_period = 2;
  spec.am_extent = 0.6;
  const SynthResult synth = synthesize(spec);
  const FrameSpec frames;
  const auto candidates =
      autocorr_candidates(mid_frame(synth.wave, frames), 8000, {});
  REQUIRE_FALSE(candidates.empty());
  CHECK(std::abs(candidates.front().fo_hz - 100.0) <= 2.0);
}

TEST_CASE("candidate frequencies respect the configured bounds") {
  SynthSpec spec;
  spec.fo_hz = 150.0;
  spec.jitter = 0.02;
  spec.noise_snr_db = 10.0;
  const SynthResult synth = synthesize(spec);
  const FrameSpec frames;
  TrackerConfig cfg;
  const std::size_t count =
      frames.frame_count(synth.wave.samples.size(), synth.wave.rate);
  for (std::size_t f = 0; f < count; ++f) {
    for (const Candidate& c :
         autocorr_candidates(frame_slice(synth.wave, frames, f), 8000, cfg)) {
      if (!c.voiced()) continue;
      CHECK(c.fo_hz >= cfg.fo_min);
      CHECK(c.fo_hz <= cfg.fo_max);
      CHECK(c.strength >= 0.0);
      CHECK(c.strength <= 1.0);
    }
  }
}

TEST_CASE("amplitude scaling leaves candidates and the track unchanged") {
  SynthSpec spec;
  spec.fo_hz = 220.0;
  spec.subh_period = 2;
  spec.am_extent = 0.3;
  spec.jitter = 0.01;
  spec.noise_snr_db = 25.0;
  const SynthResult synth = synthesize(spec);

  Waveform scaled = synth.wave;
  for (double& s : scaled.samples) s *= 8.0;  // exact in floating point

  const FrameSpec frames;
  const TrackerConfig cfg;
  const EstimateTrack a = estimate(synth.wave, frames, cfg, true);
  const EstimateTrack b = estimate(scaled, frames, cfg, true);
  CHECK(a.fo_hz == b.fo_hz);

  Waveform scaled_odd = synth.wave;
  for (double& s : scaled_odd.samples) s *= 3.7;
  const EstimateTrack c = estimate(scaled_odd, frames, cfg, true);
  REQUIRE(c.fo_hz.size() == a.fo_hz.size());
  for (std::size_t i = 0; i < a.fo_hz.size(); ++i) {
    CHECK(std::abs(a.fo_hz[i] - c.fo_hz[i]) <= 1e-6);
  }
}

TEST_CASE("autocorr rejects degenerate frames") {
  const std::vector<double> one(1, 0.5);
  CHECK_THROWS_AS(autocorr_candidates(one, 8000, {}), InvalidInput);
}

TEST_CASE("zero transition costs reduce the decode to per-frame argmax") {
  TrackerConfig cfg;
  cfg.octave_jump_cost = 0.0;
  cfg.voiced_unvoiced_cost = 0.0;
  const std::vector<std::vector<Candidate>> frames{
      {{100.0, 0.8}, {200.0, 0.9}, {0.0, 0.2}},
      {{100.0, 0.95}, {200.0, 0.3}},
      {{0.0, 0.9}, {150.0, 0.4}},
  };
  const auto track = viterbi_track(frames, cfg);
  CHECK(track == std::vector<double>{200.0, 100.0, 0.0});
}

TEST_CASE("single frame decodes to its strongest candidate") {
  TrackerConfig cfg;
  cfg.octave_jump_cost = 10.0;
  cfg.voiced_unvoiced_cost = 10.0;
  const std::vector<std::vector<Candidate>> frames{
      {{100.0, 0.5}, {240.0, 0.7}, {0.0, 0.4}}};
  CHECK(viterbi_track(frames, cfg) == std::vector<double>{240.0});
}

TEST_CASE("large octave-jump cost forces a constant track") {
  TrackerConfig cfg;
  cfg.octave_jump_cost = 5.0;
  cfg.voiced_unvoiced_cost = 5.0;
  // Alternating per-frame winners; exhaustive enumeration over 2^5 paths
  // confirms the constant track is optimal.
  std::vector<std::vector<Candidate>> frames;
  for (int t = 0; t < 5; ++t) {
    if (t % 2 == 0) {
      frames.push_back({{100.0, 0.8}, {200.0, 0.75}});
    } else {
      frames.push_back({{100.0, 0.75}, {200.0, 0.8}});
    }
  }
  const auto track = viterbi_track(frames, cfg);
  const auto expected = oracles::viterbi_bruteforce(frames, cfg);
  CHECK(track == expected);
  for (double f : track) CHECK(f == track.front());
}

TEST_CASE("viterbi matches exhaustive enumeration on random instances") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    TrackerConfig cfg;
    cfg.octave_jump_cost = rng.uniform(0.0, 1.0);
    cfg.voiced_unvoiced_cost = rng.uniform(0.0, 0.5);
    const std::size_t n_frames = 1 + rng.next() % 6;
    std::vector<std::vector<Candidate>> frames(n_frames);
    for (auto& frame : frames) {
      const std::size_t n_cands = 1 + rng.next() % 4;
      for (std::size_t c = 0; c < n_cands; ++c) {
        const bool voiced = c + 1 < n_cands || rng.uniform() < 0.7;
        frame.push_back({voiced ? rng.uniform(60.0, 700.0) : 0.0,
                         rng.uniform(0.0, 1.0)});
      }
    }
    double best_cost = 0.0;
    const auto expected = oracles::viterbi_bruteforce(frames, cfg, &best_cost);
    const auto decoded = viterbi_track(frames, cfg);
    CHECK(decoded == expected);
  }
}

TEST_CASE("viterbi rejects empty input") {
  CHECK_THROWS_AS(viterbi_track({}, {}), InvalidInput);
  CHECK_THROWS_AS(viterbi_track({{}}, {}), InvalidInput);
}

TEST_CASE("estimate on silence reports every frame unvoiced") {
  Waveform silence;
  silence.rate = 8000;
  silence.samples.assign(8000, 0.0);
  const EstimateTrack track = estimate(silence, {}, {}, false);
  REQUIRE(track.size() == 20);
  for (double f : track.fo_hz) CHECK(f == 0.0);
}

TEST_CASE("subharmonic error rate is nondecreasing in the AM extent") {
  // Corpus-level monotone sensitivity of the no-postprocessing mode.
  const FrameSpec frames;
  const TrackerConfig cfg;
  double previous_rate = -1.0;
  for (double a : {0.0, 0.2, 0.45, 0.6}) {
    std::size_t subharmonic = 0;
    std::size_t total = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      SynthSpec spec;
      spec.fo_hz = 160.0 + 10.0 * static_cast<double>(seed);
      spec.duration_s = 0.5;
      spec.subh_period = 2;
      spec.am_extent = a;
      spec.seed = seed;
      const SynthResult synth = synthesize(spec);
      const EstimateTrack track = estimate(synth.wave, frames, cfg, false);
      for (double f : track.fo_hz) {
        ++total;
        if (f > 0.0 && std::abs(spec.fo_hz / f - 2.0) < 0.2) ++subharmonic;
      }
    }
    const double rate = static_cast<double>(subharmonic) / total;
    CHECK(rate >= previous_rate);
    previous_rate = rate;
  }
}
