#pragma once

#include <array>
#include <vector>

#include "specgeo/audio.hpp"
#include "specgeo/feature_vector.hpp"
#include "specgeo/stft.hpp"

namespace specgeo {

inline constexpr int kNumMfccCoefficients = 12;

struct MfccOptions {
    int n_mels = 26;
    int window_len = 256;
    int hop = 128;
    WindowType window = WindowType::hann;
};

/// One 12-coefficient cepstral vector per analysis frame. Coefficient 0 (the
/// overall log energy) is dropped; entries are DCT-II coefficients 1..12 of
/// the log mel filterbank energies.
struct MfccFrames {
    std::vector<std::array<double, kNumMfccCoefficients>> frames;
};

MfccFrames compute_mfcc(const AudioRecording& recording, const MfccOptions& options = {});

/// Per-coefficient statistics in the fixed order (mean, std, min, max, mean
/// of |first difference|, std of |first difference|), coefficient-major:
/// 12 x 6 = 72 named features. Standard deviations are population ones.
FeatureVector mfcc_statistics(const MfccFrames& frames);

/// Triangular mel filterbank weights: n_mels rows of window_len/2+1 bin
/// weights for the given sample rate. Exposed for reuse and inspection.
std::vector<std::vector<double>> mel_filterbank(int n_mels, int window_len, double sample_rate);

}  // namespace specgeo
