#include "foeval/shr.hpp"

#include <cmath>
#include <limits>

#include "foeval/error.hpp"

namespace foeval {

Elongation elongation_factor(double fo_star, double fo_hat) {
  if (!(fo_star > 0.0 && fo_hat > 0.0)) {
    throw InvalidInput("elongation: frequencies must be positive");
  }
  Elongation e;
  e.m_hat = fo_star / fo_hat;
  const long rounded = std::lround(e.m_hat);
  if (rounded >= 1 && std::abs(e.m_hat - static_cast<double>(rounded)) <= 0.15) {
    e.m = static_cast<int>(rounded);
  }
  return e;
}

ShrMeasurement measure_shr(const SpectralDensity& sd, double fo_hat, int m) {
  if (m < 2) throw InvalidInput("shr: subharmonic period must be >= 2");
  if (!(fo_hat > 0.0 && fo_hat < 0.5 * sd.rate)) {
    throw InvalidInput("shr: fo_hat must lie in (0, rate/2)");
  }

  const int k_count = static_cast<int>(std::floor(sd.rate / (2.0 * fo_hat)));
  double harmonic = 0.0;
  double subharmonic = 0.0;
  for (int k = 1; k <= k_count; ++k) {
    const double value = sd.value_at(k * fo_hat);
    if (k % m == 0) {
      harmonic += value;
    } else {
      subharmonic += value;
    }
  }

  ShrMeasurement out;
  out.m = m;
  out.fo_hat = fo_hat;
  if (harmonic > 0.0) {
    out.ratio = subharmonic / harmonic;
  } else {
    out.ratio = subharmonic > 0.0 ? std::numeric_limits<double>::infinity()
                                  : 0.0;
  }
  out.db = 10.0 * std::log10(out.ratio);
  return out;
}

}  // namespace foeval
