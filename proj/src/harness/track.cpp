#include "foeval/track.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "csv_util.hpp"
#include "foeval/annotations.hpp"
#include "foeval/error.hpp"

namespace foeval {

void validate(const EstimateTrack& track) {
  for (std::size_t i = 0; i < track.size(); ++i) {
    if (track.fo_hz[i] < 0.0) {
      throw InvalidInput("track: negative fo in " + track.estimator);
    }
    if (i > 0 && !(track.times_s[i] > track.times_s[i - 1])) {
      throw InvalidInput("track: times must be strictly increasing in " +
                         track.estimator);
    }
  }
  if (track.times_s.size() != track.fo_hz.size()) {
    throw InvalidInput("track: time/fo length mismatch in " + track.estimator);
  }
}

double pick_at(const EstimateTrack& track, double center_time_s) {
  if (track.size() == 0) throw InvalidInput("track: empty");
  const auto& t = track.times_s;
  const auto it = std::lower_bound(t.begin(), t.end(), center_time_s);
  if (it == t.begin()) return track.fo_hz.front();
  if (it == t.end()) return track.fo_hz.back();
  const std::size_t after = static_cast<std::size_t>(it - t.begin());
  const std::size_t before = after - 1;
  // Earlier sample wins a tie.
  if (center_time_s - t[before] <= t[after] - center_time_s) {
    return track.fo_hz[before];
  }
  return track.fo_hz[after];
}

EstimateTrack read_track(const std::string& path,
                         const std::string& estimator) {
  std::ifstream file(path);
  if (!file) throw ParseError("track: cannot open " + path);

  EstimateTrack track;
  track.estimator = estimator;
  std::string line;
  bool saw_header = false;
  while (std::getline(file, line)) {
    const std::string_view row = csv::strip_cr(line);
    if (row.empty()) continue;
    if (!saw_header) {
      if (row != "time_s,fo_hz") {
        throw ParseError("track: expected header 'time_s,fo_hz' in " + path);
      }
      saw_header = true;
      continue;
    }
    const auto fields = csv::split(row);
    if (fields.size() != 2) {
      throw ParseError("track: expected 2 columns in " + path);
    }
    track.times_s.push_back(csv::to_double(fields[0], path));
    track.fo_hz.push_back(csv::to_double(fields[1], path));
  }
  if (!saw_header || track.size() == 0) {
    throw ParseError("track: no data rows in " + path);
  }
  validate(track);
  return track;
}

void write_track(const std::string& path, const EstimateTrack& track) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw Error("track: cannot write " + path);
  file << "time_s,fo_hz\n";
  char buf[64];
  for (std::size_t i = 0; i < track.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", track.times_s[i],
                  track.fo_hz[i]);
    file << buf << '\n';
  }
}

TruthSet read_annotations(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("annotations: cannot open " + path);

  TruthSet truths;
  std::map<std::string, double> last_time;
  std::map<std::string, std::map<std::size_t, bool>> seen;
  std::string line;
  bool saw_header = false;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string_view row = csv::strip_cr(line);
    if (row.empty()) continue;
    if (!saw_header) {
      if (row != "recording,frame_index,time_s,fo_star_hz,voiced") {
        throw ParseError(
            "annotations: expected header "
            "'recording,frame_index,time_s,fo_star_hz,voiced' in " +
            path);
      }
      saw_header = true;
      continue;
    }
    const auto fields = csv::split(row);
    if (fields.size() != 5) {
      throw ParseError("annotations: expected 5 columns at line " +
                       std::to_string(line_no) + " of " + path);
    }
    const std::string recording(fields[0]);
    if (recording.empty()) {
      throw ParseError("annotations: empty recording id at line " +
                       std::to_string(line_no));
    }
    TruthFrame frame;
    frame.index = csv::to_u64(fields[1], path);
    frame.time_s = csv::to_double(fields[2], path);
    const std::string_view voiced_field = fields[4];
    if (voiced_field == "1") {
      frame.voiced = true;
    } else if (voiced_field == "0") {
      frame.voiced = false;
    } else {
      throw ParseError("annotations: voiced must be 0 or 1 at line " +
                       std::to_string(line_no) + " of " + path);
    }
    if (frame.voiced) {
      if (fields[3].empty()) {
        throw ParseError("annotations: voiced row without fo at line " +
                         std::to_string(line_no) + " of " + path);
      }
      frame.fo_hz = csv::to_double(fields[3], path);
      if (!(frame.fo_hz > 0.0)) {
        throw ParseError("annotations: voiced row needs fo > 0 at line " +
                         std::to_string(line_no) + " of " + path);
      }
    } else {
      frame.fo_hz = fields[3].empty() ? 0.0 : csv::to_double(fields[3], path);
    }

    auto& frame_seen = seen[recording];
    if (!frame_seen.emplace(frame.index, true).second) {
      throw ParseError("annotations: duplicate frame " +
                       std::to_string(frame.index) + " for " + recording);
    }
    const auto prev = last_time.find(recording);
    if (prev != last_time.end() && !(frame.time_s > prev->second)) {
      throw ParseError("annotations: non-monotonic times for " + recording);
    }
    last_time[recording] = frame.time_s;
    truths[recording].frames.push_back(frame);
  }
  if (!saw_header) throw ParseError("annotations: empty file " + path);
  return truths;
}

void write_annotations(std::ostream& out, const std::string& recording,
                       const TruthTrack& truth, bool header) {
  if (header) out << "recording,frame_index,time_s,fo_star_hz,voiced\n";
  char buf[128];
  for (const TruthFrame& frame : truth.frames) {
    if (frame.voiced) {
      std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f,1", recording.c_str(),
                    frame.index, frame.time_s, frame.fo_hz);
    } else {
      std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,,0", recording.c_str(),
                    frame.index, frame.time_s);
    }
    out << buf << '\n';
  }
}

void write_annotations(const std::string& path, const TruthSet& truths) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw Error("annotations: cannot write " + path);
  bool first = true;
  for (const auto& [recording, truth] : truths) {
    write_annotations(file, recording, truth, first);
    first = false;
  }
}

}  // namespace foeval
