#ifndef FOEVAL_EVALUATE_HPP
#define FOEVAL_EVALUATE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foeval/profile.hpp"
#include "foeval/synth.hpp"
#include "foeval/track.hpp"
#include "foeval/waveform.hpp"

namespace foeval {

/// One estimator's outcome on one evaluated frame.
struct EstimatorOutcome {
  double fo_hat_hz = 0.0;  // 0 = unvoiced
  QoeLabel label;
  double m_hat = 0.0;              // fo_star/fo_hat; 0 when unvoiced
  std::optional<int> m_rounded;    // integer elongation when within tolerance
};

/// One evaluated 50-ms interval. Truth-unvoiced frames never appear here.
struct FrameRecord {
  std::string recording;
  std::size_t frame_index = 0;
  double time_s = 0.0;
  double fo_star_hz = 0.0;
  std::map<std::string, EstimatorOutcome> outcomes;
  /// SHR of this frame, measured at the baseline estimate, present when the
  /// baseline registered a subharmonic error with a usable integer period.
  std::optional<double> shr_db;
};

struct EvalConfig {
  FrameSpec frames;
  ProfileBounds profile;
  double resolution_hz = 0.5;
  std::string baseline = "acf";
  int m_max_cap = 12;
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// Everything evaluate() needs for one recording.
struct RecordingInput {
  std::string id;
  Waveform wave;
  TruthTrack truth;
  std::vector<EstimateTrack> tracks;
};

struct EvalResult {
  std::vector<FrameRecord> records;
  /// Per-recording diagnostics for inputs that had to be skipped (missing
  /// track coverage, estimator set mismatch); evaluation continues for the
  /// remaining recordings.
  std::vector<std::string> errors;
};

/// Per-frame evaluation over the voiced truth frames of every recording:
/// periodogram, harmonic power profile, fo-intervals around fo_star, one
/// label and elongation per estimator, and the baseline-conditioned SHR.
/// Recordings run in parallel across `workers` threads; output order and
/// content are independent of the scheduling.
EvalResult evaluate(const std::vector<RecordingInput>& recordings,
                    const EvalConfig& cfg);

/// FrameRecord CSV, one row per (frame, estimator):
/// recording,frame_index,time_s,fo_star_hz,estimator,fo_hat_hz,label,m,m_hat,shr_db
/// label is one of correct|subharmonic|other_unvoiced|other_off_interval;
/// m is the subharmonic period (empty unless subharmonic); m_hat is empty for
/// unvoiced estimates; shr_db is empty when not measured.
void write_records(const std::string& path,
                   const std::vector<FrameRecord>& records);
std::vector<FrameRecord> read_records(const std::string& path);

}  // namespace foeval

#endif  // FOEVAL_EVALUATE_HPP
