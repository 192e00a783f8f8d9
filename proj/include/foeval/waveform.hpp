#ifndef FOEVAL_WAVEFORM_HPP
#define FOEVAL_WAVEFORM_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace foeval {

/// Uniformly sampled mono audio. Samples are dimensionless amplitudes with a
/// nominal range of [-1, 1]; values are immutable after construction and safe
/// to share across threads.
struct Waveform {
  std::vector<double> samples;
  int rate = 0;  // samples per second

  double duration_s() const {
    return static_cast<double>(samples.size()) / rate;
  }
};

/// Throws InvalidInput unless rate > 0, length >= 1 and all samples finite.
void validate(const Waveform& wave);

/// Fixed-grid analysis framing. The default is the 50-ms interval used
/// throughout: non-overlapping frames whose center time identifies them.
struct FrameSpec {
  double length_s = 0.050;
  double hop_s = 0.050;

  int frame_length(int rate) const;
  int hop_length(int rate) const;

  /// Number of complete frames in a waveform of n samples.
  std::size_t frame_count(std::size_t n, int rate) const;

  /// Center time of frame `index`: index*hop + length/2.
  double center_time(std::size_t index) const {
    return static_cast<double>(index) * hop_s + 0.5 * length_s;
  }
};

/// Throws InvalidInput unless 0 < length_s and 0 < hop_s <= length_s.
void validate(const FrameSpec& spec);

/// View of frame `index`: exactly frame_length samples starting at
/// index*hop_length. Throws RangeError if the full frame does not fit.
std::span<const double> frame_slice(const Waveform& wave,
                                    const FrameSpec& spec, std::size_t index);

/// w[k] = 0.54 - 0.46*cos(2*pi*k/(n-1)); n == 1 yields {1.0}.
std::vector<double> hamming_window(std::size_t n);

/// w[k] = 0.5 - 0.5*cos(2*pi*k/(n-1)); n == 1 yields {1.0}.
std::vector<double> hanning_window(std::size_t n);

}  // namespace foeval

#endif  // FOEVAL_WAVEFORM_HPP
