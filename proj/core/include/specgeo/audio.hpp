#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "specgeo/error.hpp"

namespace specgeo {

/// A mono recording with the metadata needed downstream. Samples are
/// dimensionless amplitudes, nominally in [-1, 1].
struct AudioRecording {
    std::vector<double> samples;
    double sample_rate = 0.0;
    std::string patient_id;
    std::string label;

    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }

    void validate() const {
        if (samples.empty()) raise(ErrorCode::input_size, "recording has no samples");
        if (!(sample_rate > 0)) raise(ErrorCode::parameter, "sample rate must be positive");
        for (double s : samples) {
            if (!std::isfinite(s)) raise(ErrorCode::data, "recording contains non-finite samples");
        }
    }
};

}  // namespace specgeo
