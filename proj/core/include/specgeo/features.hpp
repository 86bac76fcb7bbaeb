#pragma once

#include <utility>
#include <vector>

#include "specgeo/audio.hpp"
#include "specgeo/feature_vector.hpp"
#include "specgeo/flatten.hpp"
#include "specgeo/mesh.hpp"
#include "specgeo/mfcc.hpp"
#include "specgeo/savgol.hpp"
#include "specgeo/spectrogram.hpp"

namespace specgeo {

/// Splits triangle indices by the median centroid frequency (even count:
/// mean of the middle two). Ties go to the low subset, so the result is a
/// partition: low = {t : freq(t) <= median}, high = {t : freq(t) > median}.
std::pair<std::vector<int>, std::vector<int>> frequency_median_split(const TriangleMesh& mesh);

/// Area-weighted mean of the local distortion over a triangle subset; areas
/// are those of the 3D source triangles.
double global_distortion(const TriangleMesh& mesh, const PlanarEmbedding& embedding,
                         DistortionMeasure measure, const std::vector<int>& subset);

/// The 16 distortion features of a flattened mesh: for each measure in enum
/// order, the low-band then high-band global distortion. Requires all
/// determinants positive.
FeatureVector distortion_features(const TriangleMesh& mesh, const PlanarEmbedding& embedding);

/// Everything between a recording and its features, bundled.
struct ExtractOptions {
    int savgol_half_width = 11;
    int savgol_degree = 3;
    SpectrogramOptions spectrogram;
    MfccOptions mfcc;
    int mesh_n = 150;
    SolveOptions solver;
};

/// Geometric half of the pipeline: sample, triangulate, flatten (convex
/// combination init, then distortion minimization) and measure. 16 features.
FeatureVector extract_distortion_features(const SpectrogramSurface& surface,
                                          const ExtractOptions& options);

/// Full pipeline from audio: denoise, spectrogram, then the geometric half.
FeatureVector extract_distortion_features(const AudioRecording& recording,
                                          const ExtractOptions& options);

/// 16 distortion + 72 MFCC statistics features, in the frozen column order.
FeatureVector extract_combined_features(const AudioRecording& recording,
                                        const ExtractOptions& options);

}  // namespace specgeo
