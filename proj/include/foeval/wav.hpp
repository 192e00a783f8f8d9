#ifndef FOEVAL_WAV_HPP
#define FOEVAL_WAV_HPP

#include <string>

#include "foeval/waveform.hpp"

namespace foeval {

enum class WavFormat { pcm16, float32 };

/// Reads a mono RIFF/WAVE file, PCM 16-bit or IEEE float 32-bit. Integer
/// samples are normalized by 1/32768 (so -32768 maps to -1.0). Throws
/// ParseError naming the offending chunk on malformed or truncated files,
/// multichannel audio, or unsupported encodings.
Waveform read_wav(const std::string& path);

/// Writes mono WAV. float32 round-trips samples exactly through read_wav up
/// to float precision; pcm16 quantizes with clamping.
void write_wav(const std::string& path, const Waveform& wave,
               WavFormat format = WavFormat::float32);

}  // namespace foeval

#endif  // FOEVAL_WAV_HPP
