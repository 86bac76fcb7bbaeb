#include "specgeo/savgol.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "specgeo/error.hpp"

namespace specgeo {

std::vector<double> savgol_filter(const std::vector<double>& signal, int half_width,
                                  int degree) {
    const int m = half_width;
    const int w = 2 * m + 1;
    if (m < 1) raise(ErrorCode::parameter, "half_width must be >= 1");
    if (degree < 0 || degree >= w) {
        raise(ErrorCode::parameter, "degree must be in [0, 2*half_width]");
    }
    const auto n = static_cast<int>(signal.size());
    if (n < w) {
        raise(ErrorCode::input_size, "signal length " + std::to_string(n) +
                                         " is shorter than window " + std::to_string(w));
    }
    for (double v : signal) {
        if (!std::isfinite(v)) raise(ErrorCode::data, "signal contains non-finite samples");
    }

    // Least-squares projector for one window: value at offset e is
    // (1, e, ..., e^degree) * (A^T A)^{-1} A^T  applied to the window samples.
    Eigen::MatrixXd vander(w, degree + 1);
    for (int r = 0; r < w; ++r) {
        double t = r - m;
        double p = 1.0;
        for (int c = 0; c <= degree; ++c) {
            vander(r, c) = p;
            p *= t;
        }
    }
    Eigen::MatrixXd projector =
        (vander.transpose() * vander).ldlt().solve(vander.transpose());

    auto eval_row = [&](int offset) {
        Eigen::VectorXd powers(degree + 1);
        double p = 1.0;
        for (int c = 0; c <= degree; ++c) {
            powers(c) = p;
            p *= offset;
        }
        return Eigen::VectorXd(projector.transpose() * powers);
    };

    const Eigen::VectorXd center = eval_row(0);

    std::vector<double> out(signal.size());
    for (int i = m; i < n - m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < w; ++j) acc += center(j) * signal[i - m + j];
        out[i] = acc;
    }
    // Edge samples: evaluate the first/last window's fit at off-center offsets.
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd row = eval_row(i - m);
        double head = 0.0, tail = 0.0;
        for (int j = 0; j < w; ++j) {
            head += row(j) * signal[j];
            tail += row(j) * signal[n - 1 - j];  // mirrored window, mirrored offset
        }
        out[i] = head;
        out[n - 1 - i] = tail;
    }
    return out;
}

}  // namespace specgeo
