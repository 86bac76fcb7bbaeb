#pragma once

#include <array>

namespace specgeo {

/// The eight local distortion measures, in the frozen feature order.
enum class DistortionMeasure : int {
    arap = 0,   // (s1^2-1)^2 + (s2^2-1)^2
    sd,         // (s1^2 + s1^-2 + s2^2 + s2^-2) / 4
    qi,         // max{s1, 1/s2}
    qc,         // max{s1/s2, s2/s1}
    mips,       // (s1^2 + s2^2) / (s1*s2)
    ad,         // max{s1*s2, 1/(s1*s2)}
    dirichlet,  // (s1^2 + s2^2) / 2
    cf,         // (s1 + s2) / 2
};

inline constexpr int kDistortionMeasureCount = 8;

constexpr std::array<DistortionMeasure, kDistortionMeasureCount> all_distortion_measures() {
    return {DistortionMeasure::arap, DistortionMeasure::sd,   DistortionMeasure::qi,
            DistortionMeasure::qc,   DistortionMeasure::mips, DistortionMeasure::ad,
            DistortionMeasure::dirichlet, DistortionMeasure::cf};
}

const char* measure_name(DistortionMeasure measure);

/// Parses a measure name ("arap", "sd", ...); throws a parameter error on
/// unknown names.
DistortionMeasure parse_measure(const char* name);

/// Evaluates a local distortion at singular values sigma1, sigma2 (both must
/// be positive; the order does not have to be sorted).
double local_distortion(DistortionMeasure measure, double sigma1, double sigma2);

}  // namespace specgeo
