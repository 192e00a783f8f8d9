#ifndef FOEVAL_RESAMPLE_HPP
#define FOEVAL_RESAMPLE_HPP

#include "foeval/waveform.hpp"

namespace foeval {

/// Rational-ratio sample rate conversion with a polyphase Kaiser-windowed
/// sinc filter. Band content below 0.45 * min(rate, target_rate) is preserved
/// within 0.1 dB; rejection above the lower Nyquist exceeds 60 dB. The
/// identity conversion returns the input samples unchanged.
Waveform resample(const Waveform& wave, int target_rate);

}  // namespace foeval

#endif  // FOEVAL_RESAMPLE_HPP
