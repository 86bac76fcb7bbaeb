#pragma once

#include <vector>

#include "specgeo/audio.hpp"
#include "specgeo/stft.hpp"

namespace specgeo {

/// Floor used whenever a power value is fed to a logarithm.
inline constexpr double kLogPowerFloor = 1e-10;

enum class PowerScale { decibel, linear };

struct SpectrogramOptions {
    int window_len = 256;
    int hop = 128;  // 50% overlap at the default window
    WindowType window = WindowType::hann;
    double db_floor = -80.0;
    PowerScale scale = PowerScale::decibel;
};

/// The spectrogram as a height field z(x, y) on the unit square: x is
/// normalized time, y normalized frequency (fraction of Nyquist), z the
/// rescaled power in [0, 1].
struct SpectrogramSurface {
    std::vector<double> time_axis;  // strictly increasing, spans [0, 1]
    std::vector<double> freq_axis;  // strictly increasing, spans [0, 1]
    std::vector<double> power;      // row-major [time][freq], values in [0, 1]

    int n_time() const { return static_cast<int>(time_axis.size()); }
    int n_freq() const { return static_cast<int>(freq_axis.size()); }
    double at(int t, int f) const {
        return power[static_cast<std::size_t>(t) * freq_axis.size() + static_cast<std::size_t>(f)];
    }
    double& at(int t, int f) {
        return power[static_cast<std::size_t>(t) * freq_axis.size() + static_cast<std::size_t>(f)];
    }

    /// Bilinear interpolation of z at (x, y) in [0, 1]^2.
    double sample(double x, double y) const;

    /// Checks grid shape, axis monotonicity and the [0, 1] value range.
    void validate() const;
};

/// Builds the spectrogram surface of a recording. In decibel mode each value
/// is 10*log10(|X|^2 + floor) clamped to [db_floor, 0] and mapped affinely to
/// [0, 1]; in linear mode power is normalized by the global maximum.
SpectrogramSurface compute_spectrogram(const AudioRecording& recording,
                                       const SpectrogramOptions& options = {});

/// Constructs a surface from an explicit power grid (values in [0, 1]),
/// placing uniform axes over the unit square.
SpectrogramSurface make_surface(int n_time, int n_freq, std::vector<double> power);

}  // namespace specgeo
