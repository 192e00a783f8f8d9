#ifndef FOEVAL_ANNOTATIONS_HPP
#define FOEVAL_ANNOTATIONS_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "foeval/synth.hpp"
#include "foeval/track.hpp"

namespace foeval {

using TruthSet = std::map<std::string, TruthTrack>;

/// Truth CSV schema: `recording,frame_index,time_s,fo_star_hz,voiced` with
/// fo_star_hz empty on unvoiced rows. Throws ParseError on duplicate
/// (recording, frame_index), non-monotonic times within a recording, or a
/// voiced row with an empty fo.
TruthSet read_annotations(const std::string& path);

void write_annotations(std::ostream& out,
                       const std::string& recording,
                       const TruthTrack& truth,
                       bool header = true);
void write_annotations(const std::string& path, const TruthSet& truths);

/// Track CSV schema: `time_s,fo_hz` (fo_hz = 0 for unvoiced). The estimator
/// name comes from the caller, not the file. Throws ParseError on an empty
/// file or malformed rows.
EstimateTrack read_track(const std::string& path, const std::string& estimator);

void write_track(const std::string& path, const EstimateTrack& track);

}  // namespace foeval

#endif  // FOEVAL_ANNOTATIONS_HPP
