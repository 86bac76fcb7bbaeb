#include "specgeo/stft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place.
void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

std::vector<double> make_window(WindowType type, int length) {
    if (length < 1) raise(ErrorCode::parameter, "window length must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(length), 1.0);
    if (type == WindowType::hann) {
        for (int i = 0; i < length; ++i) {
            w[static_cast<std::size_t>(i)] =
                0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / length));
        }
    }
    return w;
}

std::vector<double> power_spectrum(const std::vector<double>& frame) {
    const std::size_t n = frame.size();
    if (n == 0) raise(ErrorCode::input_size, "empty frame");
    const std::size_t bins = n / 2 + 1;
    std::vector<double> power(bins);

    if (is_pow2(n)) {
        std::vector<std::complex<double>> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = frame[i];
        fft_pow2(a);
        for (std::size_t k = 0; k < bins; ++k) power[k] = std::norm(a[k]);
        return power;
    }

    // Direct transform for odd sizes; windows are short so O(n^2) is fine here.
    for (std::size_t k = 0; k < bins; ++k) {
        double re = 0.0, im = 0.0;
        const double step = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ang = step * static_cast<double>(i);
            re += frame[i] * std::cos(ang);
            im += frame[i] * std::sin(ang);
        }
        power[k] = re * re + im * im;
    }
    return power;
}

std::vector<std::vector<double>> stft_power(const std::vector<double>& signal, int window_len,
                                            int hop, WindowType window) {
    if (window_len < 2) raise(ErrorCode::parameter, "window_len must be >= 2");
    if (hop < 1) raise(ErrorCode::parameter, "hop must be >= 1");
    const auto n = static_cast<int>(signal.size());
    if (n < window_len) {
        raise(ErrorCode::input_size, "signal length " + std::to_string(n) +
                                         " shorter than one window of " +
                                         std::to_string(window_len));
    }

    const std::vector<double> w = make_window(window, window_len);
    const int n_frames = (n - window_len) / hop + 1;

    std::vector<std::vector<double>> frames;
    frames.reserve(static_cast<std::size_t>(n_frames));
    std::vector<double> buf(static_cast<std::size_t>(window_len));
    for (int f = 0; f < n_frames; ++f) {
        const int start = f * hop;
        for (int i = 0; i < window_len; ++i) {
            buf[static_cast<std::size_t>(i)] =
                signal[static_cast<std::size_t>(start + i)] * w[static_cast<std::size_t>(i)];
        }
        frames.push_back(power_spectrum(buf));
    }
    return frames;
}

}  // namespace specgeo
