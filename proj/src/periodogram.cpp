#include "foeval/periodogram.hpp"

#include <cmath>
#include <complex>

#include "foeval/error.hpp"
#include "foeval/fft.hpp"
#include "foeval/kernels.hpp"
#include "foeval/waveform.hpp"

namespace foeval {

std::size_t SpectralDensity::nearest_bin(double hz) const {
  const long idx = std::lround(hz / resolution_hz);
  if (idx < 0 || static_cast<std::size_t>(idx) >= values.size()) {
    throw RangeError("frequency outside [0, rate/2]");
  }
  return static_cast<std::size_t>(idx);
}

double SpectralDensity::value_at(double hz) const {
  return values[nearest_bin(hz)];
}

SpectralDensity periodogram(std::span<const double> frame, int rate,
                            double resolution_hz) {
  if (frame.empty()) throw InvalidInput("periodogram: empty frame");
  if (rate <= 0) throw InvalidInput("periodogram: rate must be positive");
  if (!(resolution_hz > 0.0)) {
    throw ConfigError("periodogram: resolution must be positive");
  }
  const double n_exact = rate / resolution_hz;
  const std::size_t n = static_cast<std::size_t>(std::lround(n_exact));
  if (std::abs(n_exact - static_cast<double>(n)) > 1e-9 || n % 2 != 0) {
    throw ConfigError(
        "periodogram: resolution must divide the rate into an even transform "
        "length");
  }
  if (n < frame.size()) {
    throw ConfigError("periodogram: transform shorter than the frame");
  }

  const std::vector<double> window = hamming_window(frame.size());
  std::vector<double> tapered(frame.size());
  kernels::multiply(tapered.data(), frame.data(), window.data(),
                    tapered.size());

  std::vector<std::complex<double>> spectrum(n, {0.0, 0.0});
  for (std::size_t i = 0; i < tapered.size(); ++i) spectrum[i] = tapered[i];
  fft::forward(spectrum);

  SpectralDensity sd;
  sd.resolution_hz = resolution_hz;
  sd.rate = rate;
  sd.values.resize(n / 2 + 1);
  kernels::power_from_complex(
      sd.values.data(), reinterpret_cast<const double*>(spectrum.data()),
      sd.values.size());
  return sd;
}

}  // namespace foeval
