#ifndef FOEVAL_PERIODOGRAM_HPP
#define FOEVAL_PERIODOGRAM_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace foeval {

/// One-sided power spectrum on a uniform frequency grid covering [0, rate/2].
/// Values are raw |DFT|^2 of the Hamming-windowed, zero-padded frame -- no
/// 1/N scaling, since every downstream use is a ratio or an argmax.
struct SpectralDensity {
  std::vector<double> values;
  double resolution_hz = 0.5;
  int rate = 0;

  std::size_t size() const { return values.size(); }

  /// Index of the grid bin nearest to `hz` (round-half-up).
  std::size_t nearest_bin(double hz) const;

  /// Value at the bin nearest to `hz`; throws RangeError outside [0, rate/2].
  double value_at(double hz) const;
};

/// Dense periodogram of one analysis frame. The frame is Hamming-windowed and
/// zero-padded to rate/resolution_hz points (16000 for 8000 S/s at 0.5 Hz),
/// so the grid spacing is exactly resolution_hz. Throws ConfigError when the
/// resolution does not divide the rate into an even transform length at least
/// as long as the frame, InvalidInput on an empty frame.
SpectralDensity periodogram(std::span<const double> frame, int rate,
                            double resolution_hz = 0.5);

}  // namespace foeval

#endif  // FOEVAL_PERIODOGRAM_HPP
