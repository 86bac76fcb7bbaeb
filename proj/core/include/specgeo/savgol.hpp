#pragma once

#include <vector>

namespace specgeo {

/// Savitzky-Golay smoothing: each sample is replaced by the value of the
/// least-squares polynomial of `degree` fitted over its centered window of
/// 2*half_width+1 samples. The leading/trailing half_width samples are taken
/// from the first/last window's polynomial evaluated off-center, so the
/// output has the same length as the input.
std::vector<double> savgol_filter(const std::vector<double>& signal, int half_width = 11,
                                  int degree = 3);

}  // namespace specgeo
