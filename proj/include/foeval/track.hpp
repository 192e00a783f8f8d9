#ifndef FOEVAL_TRACK_HPP
#define FOEVAL_TRACK_HPP

#include <string>
#include <vector>

namespace foeval {

/// One estimator's output for one recording: time-ordered (time_s, fo_hz)
/// pairs, fo_hz = 0 meaning unvoiced. Times must be strictly increasing.
struct EstimateTrack {
  std::string estimator;
  std::vector<double> times_s;
  std::vector<double> fo_hz;

  std::size_t size() const { return times_s.size(); }
};

/// Throws InvalidInput on non-monotonic times or negative fo.
void validate(const EstimateTrack& track);

/// Estimate whose time is nearest to `center_time_s`; ties go to the earlier
/// sample. The track must be non-empty.
double pick_at(const EstimateTrack& track, double center_time_s);

}  // namespace foeval

#endif  // FOEVAL_TRACK_HPP
