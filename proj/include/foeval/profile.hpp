#ifndef FOEVAL_PROFILE_HPP
#define FOEVAL_PROFILE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "foeval/periodogram.hpp"

namespace foeval {

/// Maximum observable harmonic count of a fundamental at `fo`:
/// floor(rate / (2*fo)). Throws InvalidInput unless fo > 0 and at least two
/// harmonics fit below Nyquist (fo <= rate/4).
int max_harmonics(int rate, double fo);

/// Candidate-fundamental grid bounds for the harmonic power profile. The
/// lower bound sits below the tracker's 60-Hz floor so that deep-subharmonic
/// targets (periods up to 11 and beyond) stay representable.
struct ProfileBounds {
  double fo_min_hz = 30.0;
  double fo_max_hz = 1000.0;
};

/// Harmonic power profile P(fo) = sum_{k=1..K(fo)} S(k*fo)^2 sampled on the
/// density's own grid between the bounds, with located local minima.
struct HarmonicProfile {
  double fo_start_hz = 0.0;    // first grid value
  double resolution_hz = 0.5;  // grid spacing (same as the density's)
  std::vector<double> p_values;
  /// Indices of interior local minima (plateau rule: a maximal run of equal
  /// values lower than both neighbors contributes its midpoint index).
  std::vector<std::size_t> local_minima;

  double fo_at(std::size_t i) const { return fo_start_hz + resolution_hz * i; }
  std::size_t size() const { return p_values.size(); }
};

/// Profile of one spectral density. S(k*fo) uses nearest-bin lookup, which is
/// exact here because the profile grid shares the density's spacing. Bounds
/// are snapped to the grid and must satisfy 0 < fo and fo <= rate/4.
HarmonicProfile harmonic_power_profile(const SpectralDensity& sd,
                                       const ProfileBounds& bounds = {});

/// Frequency interval assigned to the period-m target fo_star/m, bounded by
/// the neighboring local minima of P (grid edges count as minima; intervals
/// of consecutive m that no minimum separates are split at the geometric
/// mean of their targets). Bounds are exclusive.
struct FoInterval {
  int m = 1;
  double lo_hz = 0.0;
  double hi_hz = 0.0;
  double target_hz = 0.0;

  bool contains(double hz) const { return lo_hz < hz && hz < hi_hz; }
};

/// Intervals for m = 1..m_max whose target fo_star/m lies inside the profile
/// grid. Throws InvalidInput when fo_star itself is outside the grid.
std::vector<FoInterval> fo_intervals(const HarmonicProfile& profile,
                                     double fo_star, int m_max);

/// Default period search depth: floor(fo_star / grid minimum), capped at 12.
int default_m_max(double fo_star, const ProfileBounds& bounds = {});

/// Per-frame quality-of-estimate outcome.
enum class LabelKind { correct, subharmonic_error, other_error };
enum class OtherKind { none, unvoiced, off_interval };

struct QoeLabel {
  LabelKind kind = LabelKind::other_error;
  int m = 0;  // subharmonic period, >= 2 iff kind == subharmonic_error
  OtherKind other = OtherKind::off_interval;

  static QoeLabel correct() { return {LabelKind::correct, 1, OtherKind::none}; }
  static QoeLabel subharmonic(int m) {
    return {LabelKind::subharmonic_error, m, OtherKind::none};
  }
  static QoeLabel unvoiced() {
    return {LabelKind::other_error, 0, OtherKind::unvoiced};
  }
  static QoeLabel off_interval() {
    return {LabelKind::other_error, 0, OtherKind::off_interval};
  }

  bool operator==(const QoeLabel&) const = default;
};

/// Classify an estimate against the intervals: unvoiced (fo_hat <= 0) is
/// OtherError(unvoiced); strictly inside the m = 1 interval is Correct;
/// strictly inside an m >= 2 interval is SubharmonicError(m); anything else,
/// including exactly on a boundary, is OtherError(off-interval).
QoeLabel classify(double fo_hat, const std::vector<FoInterval>& intervals);

/// Grid argmax of P within +-5% of `initial`; ties resolve to the grid point
/// nearest to `initial`. Plumbing stand-in for model-based refinement.
double refine_fo(const HarmonicProfile& profile, double initial);

}  // namespace foeval

#endif  // FOEVAL_PROFILE_HPP
