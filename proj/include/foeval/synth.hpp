#ifndef FOEVAL_SYNTH_HPP
#define FOEVAL_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "foeval/waveform.hpp"

namespace foeval {

/// Sustained-vowel-like test signal: a harmonic series at fo_hz with
/// tilt-shaped amplitudes, optionally amplitude/frequency modulated at
/// fo_hz/subh_period to create controlled period-M subharmonics, plus white
/// Gaussian noise. Deterministic given the seed.
struct SynthSpec {
  double fo_hz = 200.0;
  double duration_s = 1.0;
  int rate = 8000;
  /// -1 = as many harmonics as fit below Nyquist (modulation sidebands
  /// included); 0 = none (noise only); otherwise an explicit count, clipped
  /// to the below-Nyquist limit.
  int n_harmonics = -1;
  double tilt_db_per_octave = -6.0;
  int subh_period = 1;    // M; 1 = no subharmonic modulation
  double am_extent = 0.0; // a in [0,1): AM depth at fo/M
  double fm_extent = 0.0; // [0,0.05]: peak relative deviation of the
                          // instantaneous frequency, modulated at fo/M
  /// [0,0.05]: relative cycle-to-cycle period perturbation (a fresh Gaussian
  /// deviation per glottal cycle). Models the natural aperiodicity of
  /// voicing; decorrelates the autocorrelation at period multiples the way
  /// real phonation does.
  double jitter = 0.0;
  /// Harmonic-power to noise-power ratio in dB; +inf disables the noise.
  double noise_snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
};

/// Throws InvalidInput when the spec violates its invariants
/// (0 < fo_hz < rate/2, M >= 1, 0 <= a < 1, 0 <= fm <= 0.05, ...).
void validate(const SynthSpec& spec);

/// Ground truth on the analysis frame grid. fo_hz is the speaking
/// fundamental (never fo/M); it is 0 on unvoiced frames.
struct TruthFrame {
  std::size_t index = 0;
  double time_s = 0.0;  // frame center
  double fo_hz = 0.0;
  bool voiced = false;
};

struct TruthTrack {
  std::vector<TruthFrame> frames;
};

struct SynthResult {
  Waveform wave;
  TruthTrack truth;
};

SynthResult synthesize(const SynthSpec& spec, const FrameSpec& frames = {});

/// Same model with a per-frame AM extent (one entry per full frame on the
/// grid; samples past the last full frame reuse the final entry). Harmonic
/// phases stay continuous across the whole waveform, so only the modulation
/// envelope switches at frame boundaries.
SynthResult synthesize_with_extents(const SynthSpec& spec,
                                    std::span<const double> am_extent_per_frame,
                                    const FrameSpec& frames = {});

/// Analytic subharmonic-to-harmonic power ratio of pure AM at extent a: each
/// harmonic acquires two sidebands of relative amplitude a/2, so the ratio is
/// a^2/2. Test oracle for the AM calibration checks.
double expected_shr_am(double a);

/// Seeded evaluation corpus: recordings drawing fo uniformly from
/// [fo_lo_hz, fo_hi_hz], with a fixed fraction of frames per recording
/// switched to period-M amplitude modulation at `am_extent`. The default
/// texture (flattened tilt, strong cycle jitter, light noise) mimics
/// disordered sustained vowels: the per-frame tracker then commits both
/// incidental and genuine subharmonic errors, and temporal postprocessing
/// recovers most of the incidental ones.
struct MixedCorpusSpec {
  std::size_t n_recordings = 100;
  std::size_t frames_per_recording = 20;
  double subharmonic_fraction = 0.25;
  double am_extent = 0.6;
  int subh_period = 2;
  double fo_lo_hz = 140.0;
  double fo_hi_hz = 240.0;
  double tilt_db_per_octave = -2.0;
  double jitter = 0.035;
  double noise_snr_db = 25.0;
  int rate = 8000;
  std::uint64_t seed = 1;
};

struct CorpusEntry {
  std::string id;
  Waveform wave;
  TruthTrack truth;
};

std::vector<CorpusEntry> make_mixed_corpus(const MixedCorpusSpec& spec,
                                           const FrameSpec& frames = {});

}  // namespace foeval

#endif  // FOEVAL_SYNTH_HPP
