#ifndef FOEVAL_SHR_HPP
#define FOEVAL_SHR_HPP

#include <optional>

#include "foeval/periodogram.hpp"

namespace foeval {

/// Subharmonics-to-harmonics power ratio of one frame, measured at the
/// estimator's fo_hat with subharmonic period m.
struct ShrMeasurement {
  double ratio = 0.0;  // >= 0; may be +inf when the harmonic sum is zero
  double db = 0.0;     // 10*log10(ratio); -inf allowed for ratio 0
  int m = 0;
  double fo_hat = 0.0;
};

/// Period elongation factor m_hat = fo_star/fo_hat, and its integer rounding
/// when within 0.15 of an integer >= 1.
struct Elongation {
  double m_hat = 0.0;
  std::optional<int> m;
};

/// Throws InvalidInput unless both frequencies are positive.
Elongation elongation_factor(double fo_star, double fo_hat);

/// SHR = sum_{k in Ks} S(k*fo_hat) / sum_{k in Kh} S(k*fo_hat), where
/// Kh = {p*m : p = 1..floor(K/m)} collects the harmonic multipliers and
/// Ks = {1..K} \ Kh the subharmonic ones, with K = max observable harmonics
/// of fo_hat. Periodogram values enter unsquared; lookups are nearest-bin.
/// A zero harmonic sum with nonzero subharmonic sum reports +inf dB.
ShrMeasurement measure_shr(const SpectralDensity& sd, double fo_hat, int m);

/// dB floor applied by report code so histograms stay finite.
inline constexpr double kShrReportFloorDb = -80.0;

}  // namespace foeval

#endif  // FOEVAL_SHR_HPP
