#include "specgeo/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specgeo/error.hpp"

namespace specgeo {

std::pair<std::vector<int>, std::vector<int>> frequency_median_split(const TriangleMesh& mesh) {
    const int nt = mesh.n_triangles();
    if (nt == 0) raise(ErrorCode::input_size, "mesh has no triangles");

    std::vector<double> freqs(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) freqs[static_cast<std::size_t>(t)] = triangle_frequency(mesh, t);

    std::vector<double> sorted = freqs;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t half = sorted.size() / 2;
    const double median = (sorted.size() % 2 == 1)
                              ? sorted[half]
                              : 0.5 * (sorted[half - 1] + sorted[half]);

    std::pair<std::vector<int>, std::vector<int>> split;
    for (int t = 0; t < nt; ++t) {
        if (freqs[static_cast<std::size_t>(t)] <= median) {
            split.first.push_back(t);
        } else {
            split.second.push_back(t);
        }
    }
    return split;
}

double global_distortion(const TriangleMesh& mesh, const PlanarEmbedding& embedding,
                         DistortionMeasure measure, const std::vector<int>& subset) {
    if (subset.empty()) raise(ErrorCode::parameter, "empty triangle subset");
    double acc = 0.0, total_area = 0.0;
    for (int t : subset) {
        if (t < 0 || t >= mesh.n_triangles()) {
            raise(ErrorCode::parameter, "triangle index out of range");
        }
        const TriangleJacobian jac = local_jacobian(mesh, embedding, t);
        if (!(jac.det > 0.0)) {
            raise(ErrorCode::precondition, "non-positive determinant in subset");
        }
        const double area = triangle_area(mesh, t);
        acc += local_distortion(measure, jac.sigma1, jac.sigma2) * area;
        total_area += area;
    }
    if (!(total_area > 0.0)) raise(ErrorCode::geometry, "subset has zero total area");
    return acc / total_area;
}

FeatureVector distortion_features(const TriangleMesh& mesh, const PlanarEmbedding& embedding) {
    const auto [low, high] = frequency_median_split(mesh);
    FeatureVector features;
    for (DistortionMeasure m : all_distortion_measures()) {
        const std::string base = measure_name(m);
        features.push_back(base + "_low", global_distortion(mesh, embedding, m, low));
        features.push_back(base + "_high", global_distortion(mesh, embedding, m, high));
    }
    features.validate();
    return features;
}

FeatureVector extract_distortion_features(const SpectrogramSurface& surface,
                                          const ExtractOptions& options) {
    const VertexGrid grid = sample_surface(surface, options.mesh_n);
    const TriangleMesh mesh = triangulate(grid);
    const PlanarEmbedding init = tutte_embed(mesh);
    const SolveResult solved = minimize_distortion(mesh, init, options.solver);
    return distortion_features(mesh, solved.embedding);
}

FeatureVector extract_distortion_features(const AudioRecording& recording,
                                          const ExtractOptions& options) {
    AudioRecording denoised = recording;
    denoised.samples =
        savgol_filter(recording.samples, options.savgol_half_width, options.savgol_degree);
    const SpectrogramSurface surface = compute_spectrogram(denoised, options.spectrogram);
    return extract_distortion_features(surface, options);
}

FeatureVector extract_combined_features(const AudioRecording& recording,
                                        const ExtractOptions& options) {
    AudioRecording denoised = recording;
    denoised.samples =
        savgol_filter(recording.samples, options.savgol_half_width, options.savgol_degree);
    const SpectrogramSurface surface = compute_spectrogram(denoised, options.spectrogram);
    FeatureVector features = extract_distortion_features(surface, options);
    features.append(mfcc_statistics(compute_mfcc(denoised, options.mfcc)));
    features.validate();
    return features;
}

}  // namespace specgeo
