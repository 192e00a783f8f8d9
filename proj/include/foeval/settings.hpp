#ifndef FOEVAL_SETTINGS_HPP
#define FOEVAL_SETTINGS_HPP

#include <string>

#include "foeval/acf.hpp"
#include "foeval/profile.hpp"
#include "foeval/report.hpp"
#include "foeval/waveform.hpp"

namespace foeval {

/// Toolkit-wide parameters assembled from defaults, an optional key-value
/// config file, and CLI flags (in that order of precedence).
struct Settings {
  FrameSpec frames;
  TrackerConfig tracker;
  ProfileBounds profile;
  HistogramOptions histograms;
  double resolution_hz = 0.5;
  std::string baseline = "acf";
  int m_max_cap = 12;
  unsigned workers = 0;
};

/// Parses `key = value` lines ('#' comments, blank lines ignored) onto
/// `settings`. Unknown keys and unparsable values throw ParseError. Keys:
///   frame.length_s, frame.hop_s,
///   tracker.fo_min, tracker.fo_max, tracker.max_candidates,
///   tracker.voicing_threshold, tracker.silence_threshold,
///   tracker.octave_cost, tracker.octave_jump_cost,
///   tracker.voiced_unvoiced_cost,
///   profile.fo_min_hz, profile.fo_max_hz, profile.m_max_cap,
///   periodogram.resolution_hz,
///   report.baseline, report.shr_lo_db, report.shr_hi_db, report.shr_bin_db,
///   report.mhat_lo, report.mhat_hi, report.mhat_bins_per_octave,
///   workers
void apply_config_file(const std::string& path, Settings& settings);

}  // namespace foeval

#endif  // FOEVAL_SETTINGS_HPP
