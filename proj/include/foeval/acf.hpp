#ifndef FOEVAL_ACF_HPP
#define FOEVAL_ACF_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "foeval/track.hpp"
#include "foeval/waveform.hpp"

namespace foeval {

/// One per-frame pitch hypothesis. fo_hz == 0 denotes the unvoiced
/// hypothesis. Strength is clamped to [0, 1].
struct Candidate {
  double fo_hz = 0.0;
  double strength = 0.0;

  bool voiced() const { return fo_hz > 0.0; }
};

/// Autocorrelation tracker parameters. The cost/threshold defaults mirror the
/// published defaults of the estimator this reproduces; the evaluation runs
/// fix only the two costs that the no-postprocessing mode zeroes out.
struct TrackerConfig {
  double fo_min = 60.0;
  double fo_max = 700.0;
  std::size_t max_candidates = 15;
  double voicing_threshold = 0.45;
  double silence_threshold = 0.03;
  double octave_cost = 0.01;
  double octave_jump_cost = 0.35;
  double voiced_unvoiced_cost = 0.14;
};

/// Throws InvalidInput unless 0 < fo_min < fo_max, costs >= 0 and
/// max_candidates >= 2 (room for the unvoiced hypothesis plus one pitch).
void validate(const TrackerConfig& cfg);

/// Pitch candidates of one frame. The frame is mean-subtracted and
/// Hanning-windowed; the normalized autocorrelation is divided by the
/// window's own autocorrelation, local maxima over lags in
/// [rate/fo_max, rate/fo_min] (clipped to length-1) are refined by parabolic
/// interpolation, and strengths carry the octave-cost bias toward higher
/// frequencies. The unvoiced hypothesis is always present; its strength uses
/// the frame's peak amplitude relative to `global_peak` (pass the waveform
/// peak; 0 means use the frame's own peak). Candidates come back sorted by
/// strength, ties toward higher frequency, truncated to max_candidates.
std::vector<Candidate> autocorr_candidates(std::span<const double> frame,
                                           int rate, const TrackerConfig& cfg,
                                           double global_peak = 0.0);

/// Minimum-cost candidate sequence: path cost is sum of (-strength) plus
/// octave_jump_cost*|log2(f1/f2)| per voiced-voiced transition and
/// voiced_unvoiced_cost per voicing flip. Ties break toward the
/// higher-frequency candidate. Returns one fo per frame (0 = unvoiced).
std::vector<double> viterbi_track(
    const std::vector<std::vector<Candidate>>& per_frame,
    const TrackerConfig& cfg);

/// Frame, pick candidates, decode. postprocess=false zeroes the two
/// transition costs, which reduces the decode to the per-frame strongest
/// candidate. Track times are the frame centers.
EstimateTrack estimate(const Waveform& wave, const FrameSpec& frames,
                       const TrackerConfig& cfg, bool postprocess);

}  // namespace foeval

#endif  // FOEVAL_ACF_HPP
