#pragma once

#include <vector>

namespace specgeo {

enum class WindowType { hann, rectangular };

/// Window function samples (periodic Hann convention).
std::vector<double> make_window(WindowType type, int length);

/// Short-time power spectra: one row per frame advanced by `hop`, each row
/// holding |X_k|^2 for k = 0..window_len/2. Frames start at 0 and stop when
/// a full window no longer fits; no padding.
std::vector<std::vector<double>> stft_power(const std::vector<double>& signal, int window_len,
                                            int hop, WindowType window = WindowType::hann);

/// Power spectrum |X_k|^2, k = 0..N/2, of one real frame (any length; uses a
/// radix-2 FFT for powers of two and a direct transform otherwise).
std::vector<double> power_spectrum(const std::vector<double>& frame);

}  // namespace specgeo
