#include "foeval/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "foeval/error.hpp"

namespace foeval {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("wav: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)),
                                   std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0) {
    throw ParseError("wav: missing RIFF header in " + path);
  }
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ParseError("wav: missing WAVE form type in " + path);
  }

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* tag = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      throw ParseError(std::string("wav: truncated '") + std::string(tag, 4) +
                       "' chunk in " + path);
    }
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw ParseError("wav: short fmt chunk in " + path);
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size % 2);  // chunks are word-aligned
  }

  if (!have_fmt) throw ParseError("wav: missing fmt chunk in " + path);
  if (data == nullptr) throw ParseError("wav: missing data chunk in " + path);
  if (channels != 1) {
    throw ParseError("wav: only mono is supported, got " +
                     std::to_string(channels) + " channels in " + path);
  }
  if (rate == 0) throw ParseError("wav: zero sample rate in " + path);

  Waveform wave;
  wave.rate = static_cast<int>(rate);
  if (format == 1 && bits == 16) {
    const std::size_t n = data_size / 2;
    wave.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int16_t raw =
          static_cast<std::int16_t>(read_u16(data + 2 * i));
      wave.samples[i] = static_cast<double>(raw) / 32768.0;
    }
  } else if (format == 3 && bits == 32) {
    const std::size_t n = data_size / 4;
    wave.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t raw = read_u32(data + 4 * i);
      float f;
      std::memcpy(&f, &raw, sizeof f);
      wave.samples[i] = static_cast<double>(f);
    }
  } else {
    throw ParseError("wav: unsupported encoding (format " +
                     std::to_string(format) + ", " + std::to_string(bits) +
                     " bits) in " + path);
  }
  if (wave.samples.empty()) {
    throw ParseError("wav: empty data chunk in " + path);
  }
  return wave;
}

void write_wav(const std::string& path, const Waveform& wave,
               WavFormat format) {
  validate(wave);
  const bool pcm = format == WavFormat::pcm16;
  const std::uint16_t bytes_per_sample = pcm ? 2 : 4;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(wave.samples.size()) * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm ? 1 : 3);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(wave.rate));
  put_u32(out, static_cast<std::uint32_t>(wave.rate) * bytes_per_sample);
  put_u16(out, bytes_per_sample);
  put_u16(out, pcm ? 16 : 32);
  put_tag(out, "data");
  put_u32(out, data_size);

  if (pcm) {
    for (double s : wave.samples) {
      const long q = std::lround(s * 32768.0);
      const std::int16_t v =
          static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
      put_u16(out, static_cast<std::uint16_t>(v));
    }
  } else {
    for (double s : wave.samples) {
      const float f = static_cast<float>(s);
      std::uint32_t raw;
      std::memcpy(&raw, &f, sizeof raw);
      put_u32(out, raw);
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("wav: cannot write " + path);
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw Error("wav: write failed for " + path);
}

}  // namespace foeval
