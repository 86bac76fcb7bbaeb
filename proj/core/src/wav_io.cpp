#include "specgeo/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t read_u32(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void write_u32(std::ofstream& out, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF),
                          static_cast<unsigned char>((v >> 16) & 0xFF),
                          static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u16(std::ofstream& out, uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 2);
}

void write_header(std::ofstream& out, uint16_t format, uint16_t bits, int sample_rate,
                  uint32_t data_bytes) {
    const uint16_t channels = 1;
    const uint32_t byte_rate = static_cast<uint32_t>(sample_rate) * channels * bits / 8;
    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, format);
    write_u16(out, channels);
    write_u32(out, static_cast<uint32_t>(sample_rate));
    write_u32(out, byte_rate);
    write_u16(out, channels * bits / 8);
    write_u16(out, bits);
    out.write("data", 4);
    write_u32(out, data_bytes);
}

}  // namespace

WavData read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::io, "cannot open WAV file '" + path + "'");

    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        raise(ErrorCode::data, "'" + path + "' is not a RIFF/WAVE file");
    }

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t sample_rate = 0;
    std::size_t data_offset = 0, data_size = 0;
    bool have_fmt = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* chunk = bytes.data() + pos;
        uint32_t chunk_size = read_u32(chunk + 4);
        std::size_t body = pos + 8;
        if (std::memcmp(chunk, "fmt ", 4) == 0 && chunk_size >= 16 &&
            body + chunk_size <= bytes.size()) {
            format = read_u16(chunk + 8);
            channels = read_u16(chunk + 10);
            sample_rate = read_u32(chunk + 12);
            bits = read_u16(chunk + 22);
            if (format == kFormatExtensible && chunk_size >= 40) {
                format = read_u16(chunk + 8 + 24);  // sub-format GUID leading word
            }
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            data_offset = body;
            data_size = std::min<std::size_t>(chunk_size, bytes.size() - body);
        }
        pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
    }

    if (!have_fmt || data_offset == 0) raise(ErrorCode::data, "WAV missing fmt/data chunk: " + path);
    if (channels < 1 || channels > 2) {
        raise(ErrorCode::data, "unsupported channel count " + std::to_string(channels));
    }
    if (sample_rate == 0) raise(ErrorCode::data, "WAV sample rate is zero: " + path);

    const bool pcm16 = format == kFormatPcm && bits == 16;
    const bool f32 = format == kFormatIeeeFloat && bits == 32;
    if (!pcm16 && !f32) {
        raise(ErrorCode::data, "unsupported WAV encoding (format " + std::to_string(format) +
                                   ", " + std::to_string(bits) + " bits) in " + path);
    }

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * channels;
    const std::size_t n_frames = data_size / frame_bytes;
    if (n_frames == 0) raise(ErrorCode::input_size, "WAV contains no samples: " + path);

    WavData wav;
    wav.sample_rate = static_cast<double>(sample_rate);
    wav.samples.resize(n_frames);
    const unsigned char* data = bytes.data() + data_offset;
    for (std::size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (uint16_t c = 0; c < channels; ++c) {
            const unsigned char* s = data + i * frame_bytes + c * bytes_per_sample;
            if (pcm16) {
                int16_t v = static_cast<int16_t>(s[0] | (s[1] << 8));
                acc += static_cast<double>(v) / 32768.0;
            } else {
                float v;
                std::memcpy(&v, s, 4);
                acc += static_cast<double>(v);
            }
        }
        wav.samples[i] = acc / channels;
    }
    for (double s : wav.samples) {
        if (!std::isfinite(s)) raise(ErrorCode::data, "WAV contains non-finite samples: " + path);
    }
    return wav;
}

void write_wav_pcm16(const std::string& path, const std::vector<double>& samples,
                     int sample_rate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::io, "cannot write WAV file '" + path + "'");
    write_header(out, kFormatPcm, 16, sample_rate, static_cast<uint32_t>(samples.size() * 2));
    for (double s : samples) {
        double clipped = std::clamp(s, -1.0, 1.0);
        auto v = static_cast<int16_t>(std::lround(clipped * 32767.0));
        write_u16(out, static_cast<uint16_t>(v));
    }
    if (!out) raise(ErrorCode::io, "short write to '" + path + "'");
}

void write_wav_float32(const std::string& path, const std::vector<double>& samples,
                       int sample_rate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::io, "cannot write WAV file '" + path + "'");
    write_header(out, kFormatIeeeFloat, 32, sample_rate, static_cast<uint32_t>(samples.size() * 4));
    for (double s : samples) {
        float v = static_cast<float>(s);
        uint32_t raw;
        std::memcpy(&raw, &v, 4);
        write_u32(out, raw);
    }
    if (!out) raise(ErrorCode::io, "short write to '" + path + "'");
}

}  // namespace specgeo
