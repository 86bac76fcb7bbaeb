#pragma once

#include <string>
#include <vector>

namespace specgeo {

struct WavData {
    std::vector<double> samples;  // mono; stereo input is averaged
    double sample_rate = 0.0;
};

/// Reads a RIFF/WAVE file. Accepts PCM 16-bit and IEEE float 32-bit,
/// mono or stereo (averaged to mono), any sample rate.
WavData read_wav(const std::string& path);

/// Writes mono PCM 16-bit, clipping samples to [-1, 1].
void write_wav_pcm16(const std::string& path, const std::vector<double>& samples,
                     int sample_rate);

/// Writes mono IEEE float 32-bit.
void write_wav_float32(const std::string& path, const std::vector<double>& samples,
                       int sample_rate);

}  // namespace specgeo
