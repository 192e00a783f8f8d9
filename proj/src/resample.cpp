#include "foeval/resample.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "foeval/error.hpp"
#include "foeval/kernels.hpp"

namespace foeval {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Modified Bessel function of the first kind, order zero (power series).
double bessel_i0(double x) {
  double term = 1.0;
  double sum = 1.0;
  const double q = 0.25 * x * x;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Kaiser-windowed sinc lowpass at virtual rate `rate_up`, odd length,
// passband gain `gain`. Cutoff sits mid-transition; the window is sized for
// ~70 dB rejection across [pass_hz, stop_hz].
std::vector<double> design_lowpass(double pass_hz, double stop_hz,
                                   double rate_up, double gain) {
  const double attenuation_db = 70.0;
  const double beta = 0.1102 * (attenuation_db - 8.7);
  const double delta_omega = 2.0 * kPi * (stop_hz - pass_hz) / rate_up;
  std::size_t n =
      static_cast<std::size_t>(
          std::ceil((attenuation_db - 7.95) / (2.285 * delta_omega))) +
      1;
  if (n % 2 == 0) ++n;

  const double cutoff = 0.5 * (pass_hz + stop_hz) / rate_up;  // cycles/sample
  const double center = 0.5 * static_cast<double>(n - 1);
  const double i0_beta = bessel_i0(beta);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) - center;
    const double x = 2.0 * cutoff * t;
    const double sinc = (t == 0.0) ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double frac = t / center;
    const double window = bessel_i0(beta * std::sqrt(1.0 - frac * frac)) / i0_beta;
    h[i] = gain * 2.0 * cutoff * sinc * window;
  }
  return h;
}

}  // namespace

Waveform resample(const Waveform& wave, int target_rate) {
  validate(wave);
  if (target_rate <= 0) {
    throw InvalidInput("resample: target rate must be positive");
  }
  if (target_rate == wave.rate) return wave;

  const int g = std::gcd(wave.rate, target_rate);
  const std::size_t up = static_cast<std::size_t>(target_rate / g);
  const std::size_t down = static_cast<std::size_t>(wave.rate / g);
  const double rate_virtual = static_cast<double>(wave.rate) * up;
  const double min_rate = std::min(wave.rate, target_rate);

  // Preserve everything below 0.45*min_rate, reject at and above the lower
  // Nyquist; the gain `up` compensates the zero insertion.
  const std::vector<double> h = design_lowpass(
      0.45 * min_rate, 0.50 * min_rate, rate_virtual, static_cast<double>(up));
  const std::size_t center = (h.size() - 1) / 2;

  // Polyphase branches, taps reversed so each output is a forward dot
  // product with a contiguous input slice.
  const std::size_t branch_len = (h.size() + up - 1) / up;
  std::vector<std::vector<double>> branch(up);
  for (std::size_t p = 0; p < up; ++p) {
    branch[p].assign(branch_len, 0.0);
    for (std::size_t t = 0; t < branch_len; ++t) {
      const std::size_t tap = p + t * up;
      if (tap < h.size()) branch[p][branch_len - 1 - t] = h[tap];
    }
  }

  const std::vector<double>& x = wave.samples;
  const std::size_t n_in = x.size();
  const std::size_t n_out = (n_in * up + down - 1) / down;

  Waveform out;
  out.rate = target_rate;
  out.samples.resize(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    const std::size_t m = j * down + center;  // virtual-rate tap position
    const std::size_t p = m % up;
    const long long last = static_cast<long long>(m / up);
    const long long first = last - static_cast<long long>(branch_len) + 1;
    const std::vector<double>& taps = branch[p];
    if (first >= 0 && last < static_cast<long long>(n_in)) {
      out.samples[j] = kernels::dot(taps.data(), x.data() + first, branch_len);
    } else {
      double acc = 0.0;
      for (long long i = std::max(first, 0LL);
           i <= std::min(last, static_cast<long long>(n_in) - 1); ++i) {
        acc += taps[static_cast<std::size_t>(i - first)] *
               x[static_cast<std::size_t>(i)];
      }
      out.samples[j] = acc;
    }
  }
  return out;
}

}  // namespace foeval
