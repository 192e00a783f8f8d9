#include "foeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "foeval/error.hpp"
#include "foeval/rng.hpp"

namespace foeval {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

void validate(const SynthSpec& spec) {
  if (!(spec.fo_hz > 0.0 && spec.fo_hz < 0.5 * spec.rate)) {
    throw InvalidInput("synth: fo must lie in (0, rate/2)");
  }
  if (spec.rate <= 0) throw InvalidInput("synth: rate must be positive");
  if (!(spec.duration_s > 0.0)) {
    throw InvalidInput("synth: duration must be positive");
  }
  if (spec.subh_period < 1) throw InvalidInput("synth: subharmonic period >= 1");
  if (!(spec.am_extent >= 0.0 && spec.am_extent < 1.0)) {
    throw InvalidInput("synth: AM extent must be in [0, 1)");
  }
  if (!(spec.fm_extent >= 0.0 && spec.fm_extent <= 0.05)) {
    throw InvalidInput("synth: FM extent must be in [0, 0.05]");
  }
  if (!(spec.jitter >= 0.0 && spec.jitter <= 0.05)) {
    throw InvalidInput("synth: jitter must be in [0, 0.05]");
  }
  if (spec.n_harmonics < -1) {
    throw InvalidInput("synth: harmonic count must be -1, 0 or positive");
  }
  if (std::isnan(spec.noise_snr_db)) {
    throw InvalidInput("synth: noise SNR must not be NaN");
  }
}

double expected_shr_am(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw InvalidInput("expected_shr_am: extent must be in [0, 1)");
  }
  return 0.5 * a * a;
}

namespace {

SynthResult render(const SynthSpec& spec, std::span<const double> extents,
                   const FrameSpec& frames) {
  validate(spec);
  validate(frames);
  for (double a : extents) {
    if (!(a >= 0.0 && a < 1.0)) {
      throw InvalidInput("synth: AM extent must be in [0, 1)");
    }
  }

  const std::size_t n =
      static_cast<std::size_t>(std::lround(spec.duration_s * spec.rate));
  if (n == 0) throw InvalidInput("synth: duration too short for one sample");

  const double max_extent =
      extents.empty() ? 0.0 : *std::max_element(extents.begin(), extents.end());

  // Highest harmonic whose top modulation sideband still clears Nyquist,
  // with headroom for the frequency deviations (FM plus ~3 sigma of jitter).
  const double nyquist = 0.5 * spec.rate;
  const double sideband =
      (max_extent > 0.0) ? spec.fo_hz / spec.subh_period : 0.0;
  const double deviation = 1.0 + spec.fm_extent + 3.0 * spec.jitter;
  int k_max = 0;
  while (static_cast<double>(k_max + 1) * spec.fo_hz * deviation + sideband <
         nyquist) {
    ++k_max;
  }
  if (spec.n_harmonics >= 0) k_max = std::min(k_max, spec.n_harmonics);

  std::vector<double> amp(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const double db = spec.tilt_db_per_octave * std::log2(static_cast<double>(k));
    amp[static_cast<std::size_t>(k - 1)] = std::pow(10.0, db / 20.0);
  }

  Rng rng(spec.seed);
  const double am_phase = rng.uniform(0.0, kTwoPi);
  const double fm_phase = rng.uniform(0.0, kTwoPi);
  std::vector<double> phase(amp.size());
  for (double& p : phase) p = rng.uniform(0.0, kTwoPi);

  double harmonic_power = 0.0;
  for (double a : amp) harmonic_power += 0.5 * a * a;

  double noise_sigma = 0.0;
  if (std::isfinite(spec.noise_snr_db)) {
    // Noise-only specs have no harmonic power to reference; fall back to the
    // power of a unit-amplitude fundamental.
    const double ref = harmonic_power > 0.0 ? harmonic_power : 0.5;
    noise_sigma = std::sqrt(ref * std::pow(10.0, -spec.noise_snr_db / 10.0));
  }

  const std::size_t hop = static_cast<std::size_t>(frames.hop_length(spec.rate));
  const double mod_rate = kTwoPi * spec.fo_hz / spec.subh_period;

  // Cycle-to-cycle jitter: one fresh period deviation per glottal cycle,
  // from its own stream so the noise draws stay independent of it.
  Rng jitter_rng(spec.seed ^ 0x6a09e667f3bcc909ull);
  double cycle_dev = spec.jitter > 0.0 ? jitter_rng.gaussian() : 0.0;
  double next_cycle = kTwoPi;

  // The fundamental phase integrates the instantaneous frequency; harmonic k
  // runs at exactly k times it, which keeps the signal harmonic under both
  // modulation and jitter.
  double theta = 0.0;

  Waveform wave;
  wave.rate = spec.rate;
  wave.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / spec.rate;
    double extent = 0.0;
    if (!extents.empty()) {
      const std::size_t f = std::min(hop > 0 ? i / hop : 0, extents.size() - 1);
      extent = extents[f];
    }
    const double env = 1.0 + extent * std::cos(mod_rate * t + am_phase);

    double carrier = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      carrier += amp[k] * std::cos(static_cast<double>(k + 1) * theta + phase[k]);
    }
    double sample = env * carrier;
    if (noise_sigma > 0.0) sample += noise_sigma * rng.gaussian();
    wave.samples[i] = sample;

    const double fm = (spec.fm_extent > 0.0)
                          ? spec.fm_extent * std::cos(mod_rate * t + fm_phase)
                          : 0.0;
    theta +=
        kTwoPi * spec.fo_hz * (1.0 + fm + spec.jitter * cycle_dev) / spec.rate;
    if (spec.jitter > 0.0 && theta >= next_cycle) {
      cycle_dev = jitter_rng.gaussian();
      next_cycle += kTwoPi;
    }
  }

  double peak = 0.0;
  for (double s : wave.samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0) {
    const double scale = 0.75 / peak;
    for (double& s : wave.samples) s *= scale;
  }

  TruthTrack truth;
  const std::size_t n_frames = frames.frame_count(n, spec.rate);
  truth.frames.resize(n_frames);
  const bool voiced = !amp.empty();
  for (std::size_t f = 0; f < n_frames; ++f) {
    truth.frames[f] = {f, frames.center_time(f), voiced ? spec.fo_hz : 0.0,
                       voiced};
  }
  return {std::move(wave), std::move(truth)};
}

}  // namespace

SynthResult synthesize(const SynthSpec& spec, const FrameSpec& frames) {
  const double extent[1] = {spec.am_extent};
  return render(spec, std::span<const double>(extent, 1), frames);
}

SynthResult synthesize_with_extents(const SynthSpec& spec,
                                    std::span<const double> am_extent_per_frame,
                                    const FrameSpec& frames) {
  if (am_extent_per_frame.empty()) {
    throw InvalidInput("synth: per-frame extents must not be empty");
  }
  return render(spec, am_extent_per_frame, frames);
}

std::vector<CorpusEntry> make_mixed_corpus(const MixedCorpusSpec& spec,
                                           const FrameSpec& frames) {
  if (spec.n_recordings == 0 || spec.frames_per_recording == 0) {
    throw InvalidInput("corpus: need at least one recording and frame");
  }
  if (!(spec.fo_lo_hz > 0.0 && spec.fo_lo_hz <= spec.fo_hi_hz)) {
    throw InvalidInput("corpus: bad fo range");
  }
  if (!(spec.subharmonic_fraction >= 0.0 && spec.subharmonic_fraction <= 1.0)) {
    throw InvalidInput("corpus: subharmonic fraction must be in [0, 1]");
  }

  const std::size_t n_subh = static_cast<std::size_t>(
      std::lround(spec.subharmonic_fraction * spec.frames_per_recording));

  std::vector<CorpusEntry> corpus;
  corpus.reserve(spec.n_recordings);
  for (std::size_t e = 0; e < spec.n_recordings; ++e) {
    Rng rng = Rng::for_entry(spec.seed, e);

    SynthSpec entry;
    entry.fo_hz = rng.uniform(spec.fo_lo_hz, spec.fo_hi_hz);
    entry.duration_s = frames.hop_s * static_cast<double>(spec.frames_per_recording);
    entry.rate = spec.rate;
    entry.subh_period = spec.subh_period;
    entry.tilt_db_per_octave = spec.tilt_db_per_octave;
    entry.jitter = spec.jitter;
    entry.noise_snr_db = spec.noise_snr_db;
    entry.seed = rng.next();

    // Seeded subset of frames carries the modulation (partial Fisher-Yates).
    std::vector<std::size_t> order(spec.frames_per_recording);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < n_subh && i + 1 < order.size(); ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(rng.next() % (order.size() - i));
      std::swap(order[i], order[j]);
    }
    std::vector<double> extents(spec.frames_per_recording, 0.0);
    for (std::size_t i = 0; i < n_subh; ++i) {
      extents[order[i]] = spec.am_extent;
    }

    SynthResult rendered = synthesize_with_extents(entry, extents, frames);

    char id[32];
    std::snprintf(id, sizeof id, "rec%04zu", e);
    corpus.push_back(
        {id, std::move(rendered.wave), std::move(rendered.truth)});
  }
  return corpus;
}

}  // namespace foeval
