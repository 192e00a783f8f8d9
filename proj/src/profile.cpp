#include "foeval/profile.hpp"

#include <algorithm>
#include <cmath>

#include "foeval/error.hpp"
#include "foeval/kernels.hpp"

namespace foeval {

int max_harmonics(int rate, double fo) {
  // Below-Nyquist harmonic count; a usable fundamental must keep at least
  // two harmonics observable, i.e. fo <= rate/4.
  if (rate <= 0) throw InvalidInput("max_harmonics: rate must be positive");
  if (!(fo > 0.0) || fo > 0.25 * rate) {
    throw InvalidInput("max_harmonics: fo out of range (0, rate/4]");
  }
  return static_cast<int>(std::floor(rate / (2.0 * fo)));
}

HarmonicProfile harmonic_power_profile(const SpectralDensity& sd,
                                       const ProfileBounds& bounds) {
  if (sd.values.empty()) throw InvalidInput("profile: empty density");
  const double res = sd.resolution_hz;
  if (!(bounds.fo_min_hz > 0.0 && bounds.fo_min_hz < bounds.fo_max_hz)) {
    throw InvalidInput("profile: need 0 < fo_min < fo_max");
  }
  if (bounds.fo_max_hz > 0.25 * sd.rate) {
    throw InvalidInput("profile: fo_max must be <= rate/4");
  }

  // Snap the bounds to the density's grid; the grids then share their bins
  // and the nearest bin to k*fo is exactly bin k*i.
  const std::size_t i_lo =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(
                                   bounds.fo_min_hz / res - 1e-9)));
  const std::size_t i_hi = static_cast<std::size_t>(
      std::floor(bounds.fo_max_hz / res + 1e-9));
  if (i_lo > i_hi) throw InvalidInput("profile: empty fo grid");

  HarmonicProfile profile;
  profile.fo_start_hz = static_cast<double>(i_lo) * res;
  profile.resolution_hz = res;
  profile.p_values.resize(i_hi - i_lo + 1);
  for (std::size_t i = i_lo; i <= i_hi; ++i) {
    const double fo = static_cast<double>(i) * res;
    const std::size_t k_count =
        static_cast<std::size_t>(std::floor(sd.rate / (2.0 * fo)));
    profile.p_values[i - i_lo] =
        kernels::strided_sum_squares(sd.values.data(), i, k_count);
  }

  // Interior local minima with the plateau rule: a maximal run of equal
  // values lower than both neighbors contributes its midpoint index.
  const auto& p = profile.p_values;
  std::size_t run_start = 0;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    if (i < p.size() && p[i] == p[run_start]) continue;
    const std::size_t run_end = i - 1;
    const bool falls_left = run_start > 0 && p[run_start - 1] > p[run_start];
    const bool rises_right = i < p.size() && p[i] > p[run_end];
    if (falls_left && rises_right) {
      profile.local_minima.push_back((run_start + run_end) / 2);
    }
    run_start = i;
  }
  return profile;
}

int default_m_max(double fo_star, const ProfileBounds& bounds) {
  if (!(fo_star > 0.0)) throw InvalidInput("m_max: fo_star must be positive");
  const int m = static_cast<int>(std::floor(fo_star / bounds.fo_min_hz));
  return std::clamp(m, 1, 12);
}

std::vector<FoInterval> fo_intervals(const HarmonicProfile& profile,
                                     double fo_star, int m_max) {
  if (profile.size() < 2) throw InvalidInput("intervals: profile too small");
  if (m_max < 1) throw InvalidInput("intervals: m_max must be >= 1");
  const double grid_lo = profile.fo_at(0);
  const double grid_hi = profile.fo_at(profile.size() - 1);
  if (!(fo_star >= grid_lo && fo_star <= grid_hi)) {
    throw InvalidInput("intervals: fo_star outside the profile grid");
  }

  // Bounding positions: interior minima plus the grid edges.
  std::vector<double> bound_hz;
  bound_hz.reserve(profile.local_minima.size() + 2);
  bound_hz.push_back(grid_lo);
  for (std::size_t idx : profile.local_minima) {
    bound_hz.push_back(profile.fo_at(idx));
  }
  bound_hz.push_back(grid_hi);

  std::vector<FoInterval> intervals;
  for (int m = 1; m <= m_max; ++m) {
    const double target = fo_star / m;
    if (target < grid_lo) break;

    // Nearest bounding minima strictly below and above the target.
    auto above = std::upper_bound(bound_hz.begin(), bound_hz.end(), target);
    if (above == bound_hz.end()) continue;  // target at the top edge
    auto below = std::lower_bound(bound_hz.begin(), bound_hz.end(), target);
    if (below == bound_hz.begin()) continue;  // target at the bottom edge
    --below;

    intervals.push_back({m, *below, *above, target});
  }

  // Targets that no minimum separates share a span; split it at the
  // geometric mean so the intervals stay disjoint.
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
    FoInterval& hi_m = intervals[i];      // larger target
    FoInterval& lo_m = intervals[i + 1];  // smaller target
    if (lo_m.hi_hz > hi_m.lo_hz) {
      const double split = std::sqrt(hi_m.target_hz * lo_m.target_hz);
      hi_m.lo_hz = std::max(hi_m.lo_hz, split);
      lo_m.hi_hz = std::min(lo_m.hi_hz, split);
    }
  }
  return intervals;
}

QoeLabel classify(double fo_hat, const std::vector<FoInterval>& intervals) {
  if (!(fo_hat > 0.0)) return QoeLabel::unvoiced();
  for (const FoInterval& interval : intervals) {
    if (interval.contains(fo_hat)) {
      return interval.m == 1 ? QoeLabel::correct()
                             : QoeLabel::subharmonic(interval.m);
    }
  }
  return QoeLabel::off_interval();
}

double refine_fo(const HarmonicProfile& profile, double initial) {
  const double grid_lo = profile.fo_at(0);
  const double grid_hi = profile.fo_at(profile.size() - 1);
  if (!(initial >= grid_lo && initial <= grid_hi)) {
    throw InvalidInput("refine_fo: initial outside the profile grid");
  }
  const double res = profile.resolution_hz;
  const auto to_index = [&](double hz) {
    const double clamped = std::clamp(hz, grid_lo, grid_hi);
    return static_cast<std::size_t>(std::lround((clamped - grid_lo) / res));
  };
  const std::size_t lo = to_index(0.95 * initial);
  const std::size_t hi = to_index(1.05 * initial);

  // A flat window has no argmax to prefer; keep the caller's value.
  bool flat = true;
  for (std::size_t i = lo + 1; i <= hi && flat; ++i) {
    flat = profile.p_values[i] == profile.p_values[lo];
  }
  if (flat) return initial;

  std::size_t best = to_index(initial);
  for (std::size_t i = lo; i <= hi; ++i) {
    const double v = profile.p_values[i];
    if (v > profile.p_values[best]) {
      best = i;
    } else if (v == profile.p_values[best] && i != best) {
      if (std::abs(profile.fo_at(i) - initial) <
          std::abs(profile.fo_at(best) - initial)) {
        best = i;
      }
    }
  }
  return profile.fo_at(best);
}

}  // namespace foeval
