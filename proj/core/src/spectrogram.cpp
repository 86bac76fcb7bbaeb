#include "specgeo/spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

std::vector<double> uniform_axis(int n) {
    std::vector<double> axis(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        axis[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    }
    return axis;
}

}  // namespace

double SpectrogramSurface::sample(double x, double y) const {
    auto locate = [](const std::vector<double>& axis, double v, int& i0, double& frac) {
        const int n = static_cast<int>(axis.size());
        if (v <= axis.front()) {
            i0 = 0;
            frac = 0.0;
            return;
        }
        if (v >= axis.back()) {
            i0 = n - 2;
            frac = 1.0;
            return;
        }
        int lo = static_cast<int>(std::upper_bound(axis.begin(), axis.end(), v) - axis.begin()) - 1;
        i0 = std::min(lo, n - 2);
        frac = (v - axis[static_cast<std::size_t>(i0)]) /
               (axis[static_cast<std::size_t>(i0) + 1] - axis[static_cast<std::size_t>(i0)]);
    };
    int ti, fi;
    double tx, fy;
    locate(time_axis, x, ti, tx);
    locate(freq_axis, y, fi, fy);
    const double z00 = at(ti, fi), z01 = at(ti, fi + 1);
    const double z10 = at(ti + 1, fi), z11 = at(ti + 1, fi + 1);
    return (1 - tx) * ((1 - fy) * z00 + fy * z01) + tx * ((1 - fy) * z10 + fy * z11);
}

void SpectrogramSurface::validate() const {
    if (n_time() < 2 || n_freq() < 2) {
        raise(ErrorCode::input_size, "spectrogram grid must be at least 2x2");
    }
    if (power.size() != time_axis.size() * freq_axis.size()) {
        raise(ErrorCode::data, "power grid size does not match axes");
    }
    for (const auto* axis : {&time_axis, &freq_axis}) {
        for (std::size_t i = 1; i < axis->size(); ++i) {
            if (!((*axis)[i] > (*axis)[i - 1])) {
                raise(ErrorCode::data, "spectrogram axis not strictly increasing");
            }
        }
    }
    for (double v : power) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            raise(ErrorCode::data, "spectrogram power outside [0, 1]");
        }
    }
}

SpectrogramSurface compute_spectrogram(const AudioRecording& recording,
                                       const SpectrogramOptions& options) {
    recording.validate();
    if (!(options.db_floor < 0)) raise(ErrorCode::parameter, "db_floor must be negative");

    const auto frames =
        stft_power(recording.samples, options.window_len, options.hop, options.window);
    const int nt = static_cast<int>(frames.size());
    const int nf = static_cast<int>(frames.front().size());
    if (nt < 2) {
        raise(ErrorCode::input_size,
              "recording yields only " + std::to_string(nt) + " frame(s); need at least 2");
    }

    SpectrogramSurface surface;
    surface.time_axis = uniform_axis(nt);
    surface.freq_axis = uniform_axis(nf);
    surface.power.resize(static_cast<std::size_t>(nt) * static_cast<std::size_t>(nf));

    if (options.scale == PowerScale::decibel) {
        for (int t = 0; t < nt; ++t) {
            for (int f = 0; f < nf; ++f) {
                const double db =
                    10.0 * std::log10(frames[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] +
                                      kLogPowerFloor);
                const double clamped = std::clamp(db, options.db_floor, 0.0);
                surface.at(t, f) = (clamped - options.db_floor) / (0.0 - options.db_floor);
            }
        }
    } else {
        double max_power = 0.0;
        for (const auto& row : frames) {
            for (double v : row) max_power = std::max(max_power, v);
        }
        const double denom = std::max(max_power, kLogPowerFloor);
        for (int t = 0; t < nt; ++t) {
            for (int f = 0; f < nf; ++f) {
                surface.at(t, f) =
                    frames[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] / denom;
            }
        }
    }
    surface.validate();
    return surface;
}

SpectrogramSurface make_surface(int n_time, int n_freq, std::vector<double> power) {
    SpectrogramSurface surface;
    surface.time_axis = uniform_axis(n_time);
    surface.freq_axis = uniform_axis(n_freq);
    surface.power = std::move(power);
    surface.validate();
    return surface;
}

}  // namespace specgeo
