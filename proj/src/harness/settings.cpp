#include "foeval/settings.hpp"

#include <fstream>
#include <string>

#include "csv_util.hpp"
#include "foeval/error.hpp"

namespace foeval {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

void apply_config_file(const std::string& path, Settings& settings) {
  std::ifstream file(path);
  if (!file) throw ParseError("config: cannot open " + path);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const std::size_t eq = row.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config: expected key = value at line " +
                       std::to_string(line_no) + " of " + path);
    }
    const std::string key(trim(row.substr(0, eq)));
    const std::string_view value = trim(row.substr(eq + 1));
    const std::string context = path + ":" + std::to_string(line_no);

    const auto num = [&]() { return csv::to_double(value, context); };
    if (key == "frame.length_s") {
      settings.frames.length_s = num();
    } else if (key == "frame.hop_s") {
      settings.frames.hop_s = num();
    } else if (key == "tracker.fo_min") {
      settings.tracker.fo_min = num();
    } else if (key == "tracker.fo_max") {
      settings.tracker.fo_max = num();
    } else if (key == "tracker.max_candidates") {
      settings.tracker.max_candidates =
          static_cast<std::size_t>(csv::to_u64(value, context));
    } else if (key == "tracker.voicing_threshold") {
      settings.tracker.voicing_threshold = num();
    } else if (key == "tracker.silence_threshold") {
      settings.tracker.silence_threshold = num();
    } else if (key == "tracker.octave_cost") {
      settings.tracker.octave_cost = num();
    } else if (key == "tracker.octave_jump_cost") {
      settings.tracker.octave_jump_cost = num();
    } else if (key == "tracker.voiced_unvoiced_cost") {
      settings.tracker.voiced_unvoiced_cost = num();
    } else if (key == "profile.fo_min_hz") {
      settings.profile.fo_min_hz = num();
    } else if (key == "profile.fo_max_hz") {
      settings.profile.fo_max_hz = num();
    } else if (key == "profile.m_max_cap") {
      settings.m_max_cap = static_cast<int>(csv::to_u64(value, context));
    } else if (key == "periodogram.resolution_hz") {
      settings.resolution_hz = num();
    } else if (key == "report.baseline") {
      settings.baseline = std::string(value);
    } else if (key == "report.shr_lo_db") {
      settings.histograms.shr_lo_db = num();
    } else if (key == "report.shr_hi_db") {
      settings.histograms.shr_hi_db = num();
    } else if (key == "report.shr_bin_db") {
      settings.histograms.shr_bin_db = num();
    } else if (key == "report.mhat_lo") {
      settings.histograms.mhat_lo = num();
    } else if (key == "report.mhat_hi") {
      settings.histograms.mhat_hi = num();
    } else if (key == "report.mhat_bins_per_octave") {
      settings.histograms.mhat_bins_per_octave =
          static_cast<int>(csv::to_u64(value, context));
    } else if (key == "workers") {
      settings.workers = static_cast<unsigned>(csv::to_u64(value, context));
    } else {
      throw ParseError("config: unknown key '" + key + "' at line " +
                       std::to_string(line_no) + " of " + path);
    }
  }
}

}  // namespace foeval
