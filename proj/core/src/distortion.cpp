#include "specgeo/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "specgeo/error.hpp"

namespace specgeo {

const char* measure_name(DistortionMeasure measure) {
    switch (measure) {
        case DistortionMeasure::arap: return "arap";
        case DistortionMeasure::sd: return "sd";
        case DistortionMeasure::qi: return "qi";
        case DistortionMeasure::qc: return "qc";
        case DistortionMeasure::mips: return "mips";
        case DistortionMeasure::ad: return "ad";
        case DistortionMeasure::dirichlet: return "dirichlet";
        case DistortionMeasure::cf: return "cf";
    }
    return "?";
}

DistortionMeasure parse_measure(const char* name) {
    for (DistortionMeasure m : all_distortion_measures()) {
        if (std::strcmp(name, measure_name(m)) == 0) return m;
    }
    raise(ErrorCode::parameter, std::string("unknown distortion measure '") + name + "'");
}

double local_distortion(DistortionMeasure measure, double sigma1, double sigma2) {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
        raise(ErrorCode::domain, "singular values must be positive");
    }
    const double s1 = sigma1, s2 = sigma2;
    switch (measure) {
        case DistortionMeasure::arap: {
            const double a = s1 * s1 - 1.0, b = s2 * s2 - 1.0;
            return a * a + b * b;
        }
        case DistortionMeasure::sd:
            return 0.25 * (s1 * s1 + 1.0 / (s1 * s1) + s2 * s2 + 1.0 / (s2 * s2));
        case DistortionMeasure::qi:
            return std::max(s1, 1.0 / s2);
        case DistortionMeasure::qc:
            return std::max(s1 / s2, s2 / s1);
        case DistortionMeasure::mips:
            return (s1 * s1 + s2 * s2) / (s1 * s2);
        case DistortionMeasure::ad: {
            const double det = s1 * s2;
            return std::max(det, 1.0 / det);
        }
        case DistortionMeasure::dirichlet:
            return 0.5 * (s1 * s1 + s2 * s2);
        case DistortionMeasure::cf:
            return 0.5 * (s1 + s2);
    }
    raise(ErrorCode::parameter, "invalid distortion measure");
}

}  // namespace specgeo
