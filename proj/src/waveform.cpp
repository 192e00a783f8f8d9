#include "foeval/waveform.hpp"

#include <cmath>

#include "foeval/error.hpp"

namespace foeval {

void validate(const Waveform& wave) {
  if (wave.rate <= 0) throw InvalidInput("waveform: rate must be positive");
  if (wave.samples.empty()) throw InvalidInput("waveform: no samples");
  for (double s : wave.samples) {
    if (!std::isfinite(s)) throw InvalidInput("waveform: non-finite sample");
  }
}

int FrameSpec::frame_length(int rate) const {
  return static_cast<int>(std::lround(length_s * rate));
}

int FrameSpec::hop_length(int rate) const {
  return static_cast<int>(std::lround(hop_s * rate));
}

std::size_t FrameSpec::frame_count(std::size_t n, int rate) const {
  const std::size_t len = static_cast<std::size_t>(frame_length(rate));
  const std::size_t hop = static_cast<std::size_t>(hop_length(rate));
  if (n < len || len == 0 || hop == 0) return 0;
  return (n - len) / hop + 1;
}

void validate(const FrameSpec& spec) {
  if (!(spec.length_s > 0.0)) {
    throw InvalidInput("frame spec: length must be positive");
  }
  if (!(spec.hop_s > 0.0 && spec.hop_s <= spec.length_s)) {
    throw InvalidInput("frame spec: need 0 < hop <= length");
  }
}

std::span<const double> frame_slice(const Waveform& wave,
                                    const FrameSpec& spec, std::size_t index) {
  const std::size_t len = static_cast<std::size_t>(spec.frame_length(wave.rate));
  const std::size_t hop = static_cast<std::size_t>(spec.hop_length(wave.rate));
  const std::size_t start = index * hop;
  if (len == 0 || start + len > wave.samples.size()) {
    throw RangeError("frame " + std::to_string(index) +
                     " does not fit in the waveform");
  }
  return {wave.samples.data() + start, len};
}

namespace {

std::vector<double> cosine_window(std::size_t n, double a0, double a1) {
  if (n == 0) throw InvalidInput("window: length must be >= 1");
  std::vector<double> w(n, 1.0);
  if (n == 1) return w;
  const double step = 6.283185307179586476925286766559 / (n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = a0 - a1 * std::cos(step * k);
  }
  return w;
}

}  // namespace

std::vector<double> hamming_window(std::size_t n) {
  return cosine_window(n, 0.54, 0.46);
}

std::vector<double> hanning_window(std::size_t n) {
  return cosine_window(n, 0.5, 0.5);
}

}  // namespace foeval
