#include "specgeo/mfcc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "specgeo/error.hpp"
#include "specgeo/spectrogram.hpp"

namespace specgeo {
namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

std::vector<std::vector<double>> mel_filterbank(int n_mels, int window_len, double sample_rate) {
    if (n_mels < 1) raise(ErrorCode::parameter, "n_mels must be >= 1");
    const int n_bins = window_len / 2 + 1;
    const double nyquist = sample_rate / 2.0;

    // n_mels + 2 mel-spaced anchor frequencies from 0 to Nyquist.
    std::vector<double> anchors(static_cast<std::size_t>(n_mels) + 2);
    const double mel_max = hz_to_mel(nyquist);
    for (int i = 0; i < n_mels + 2; ++i) {
        anchors[static_cast<std::size_t>(i)] = mel_to_hz(mel_max * i / (n_mels + 1));
    }

    std::vector<std::vector<double>> bank(static_cast<std::size_t>(n_mels),
                                          std::vector<double>(static_cast<std::size_t>(n_bins), 0.0));
    for (int m = 0; m < n_mels; ++m) {
        const double lo = anchors[static_cast<std::size_t>(m)];
        const double mid = anchors[static_cast<std::size_t>(m) + 1];
        const double hi = anchors[static_cast<std::size_t>(m) + 2];
        for (int k = 0; k < n_bins; ++k) {
            const double f = sample_rate * k / window_len;
            double w = 0.0;
            if (f > lo && f < mid) {
                w = (f - lo) / (mid - lo);
            } else if (f >= mid && f < hi) {
                w = (hi - f) / (hi - mid);
            }
            bank[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = w;
        }
    }
    return bank;
}

MfccFrames compute_mfcc(const AudioRecording& recording, const MfccOptions& options) {
    recording.validate();
    if (options.n_mels < kNumMfccCoefficients + 1) {
        raise(ErrorCode::parameter, "n_mels must be at least " +
                                        std::to_string(kNumMfccCoefficients + 1));
    }

    const auto frames =
        stft_power(recording.samples, options.window_len, options.hop, options.window);
    const auto bank = mel_filterbank(options.n_mels, options.window_len, recording.sample_rate);
    const int n_mels = options.n_mels;

    MfccFrames out;
    out.frames.reserve(frames.size());
    std::vector<double> log_energy(static_cast<std::size_t>(n_mels));
    for (const auto& spectrum : frames) {
        for (int m = 0; m < n_mels; ++m) {
            double e = 0.0;
            const auto& row = bank[static_cast<std::size_t>(m)];
            for (std::size_t k = 0; k < row.size(); ++k) e += row[k] * spectrum[k];
            log_energy[static_cast<std::size_t>(m)] = std::log(std::max(e, kLogPowerFloor));
        }
        // Plain (unnormalized) DCT-II; coefficient 0 is dropped.
        std::array<double, kNumMfccCoefficients> coeffs{};
        for (int c = 1; c <= kNumMfccCoefficients; ++c) {
            double acc = 0.0;
            for (int m = 0; m < n_mels; ++m) {
                acc += log_energy[static_cast<std::size_t>(m)] *
                       std::cos(std::numbers::pi * c * (m + 0.5) / n_mels);
            }
            coeffs[static_cast<std::size_t>(c - 1)] = acc;
        }
        out.frames.push_back(coeffs);
    }
    return out;
}

FeatureVector mfcc_statistics(const MfccFrames& frames) {
    const std::size_t n = frames.frames.size();
    if (n < 2) {
        raise(ErrorCode::input_size, "need at least 2 frames for difference statistics");
    }

    FeatureVector features;
    char name[32];
    for (int c = 0; c < kNumMfccCoefficients; ++c) {
        double sum = 0.0, sum_sq = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        double dsum = 0.0, dsum_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = frames.frames[i][static_cast<std::size_t>(c)];
            sum += v;
            sum_sq += v * v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (i > 0) {
                const double d = std::abs(v - frames.frames[i - 1][static_cast<std::size_t>(c)]);
                dsum += d;
                dsum_sq += d * d;
            }
        }
        const double mean = sum / static_cast<double>(n);
        const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
        const double dmean = dsum / static_cast<double>(n - 1);
        const double dvar = std::max(0.0, dsum_sq / static_cast<double>(n - 1) - dmean * dmean);

        const double stats[6] = {mean, std::sqrt(var), lo, hi, dmean, std::sqrt(dvar)};
        static const char* kStatNames[6] = {"mean", "std", "min", "max", "dmean", "dstd"};
        for (int s = 0; s < 6; ++s) {
            std::snprintf(name, sizeof(name), "mfcc%02d_%s", c + 1, kStatNames[s]);
            features.push_back(name, stats[s]);
        }
    }
    features.validate();
    return features;
}

}  // namespace specgeo
