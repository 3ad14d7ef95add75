#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sct/reassign.hpp"
#include "sct/volume.hpp"

namespace sct {

struct CloudPoint {
    int frame = 0;
    int freq_bin = 0;
    int chirp_bin = 0;
    double t_s = 0.0;
    double freq_hz = 0.0;
    double chirp_hzps = 0.0;
    double weight = 0.0;  // |S|
    /// Reassigned coordinates that landed in this bin (bin centers if unknown).
    double omega_hz = 0.0;
    double mu_hzps = 0.0;
};

/// Per-axis affine map (t, freq, chirp) -> [0, 1]; degenerate axes map to 0.
struct AxisNormalization {
    std::array<double, 3> lo{};
    std::array<double, 3> span{};
};

struct TfcPointCloud {
    std::vector<CloudPoint> points;
    AxisNormalization normalization;
    double threshold = 0.0;

    /// Normalized coordinates, one row per point.
    [[nodiscard]] Eigen::MatrixXd normalized() const;
};

/// Type-7 sample quantile (linear interpolation between order statistics).
double quantile(std::vector<double> values, double q);

/// Entries with |S| strictly above the q-quantile of all |S|.
/// Throws EmptyCloudError if nothing survives, ParameterError unless 0 <= q < 1.
TfcPointCloud select_high_energy(const TfcTensor& S, double q);
/// Same, with reassigned centroids attached to every point.
TfcPointCloud select_high_energy(const SqueezeResult& squeeze, double q);
/// Two-dimensional cloud from a time-frequency array (chirp coordinate 0).
TfcPointCloud select_high_energy(const TfMatrix& S, double q);

/// Repeatedly drops points whose affinity to the rest of the cloud,
/// sum_{j != i} W_ij, is below `ratio` times the median of that sum, then
/// renormalizes the axes. Such points form their own near-disconnected graph
/// components and would otherwise claim a leading eigenvector. ratio = 0
/// disables pruning.
TfcPointCloud prune_isolated_points(const TfcPointCloud& cloud, double sigma_pct, double ratio);

/// sigma_pct percentile of the pairwise distances of the normalized cloud.
double distance_percentile(const Eigen::MatrixXd& x, double pct);

/// Gaussian affinity exp(-|xi - xj|^2 / (2 sigma^2)).
Eigen::MatrixXd affinity_matrix(const Eigen::MatrixXd& x, double sigma);

struct SpectralEmbedding {
    Eigen::MatrixXd coords;       // n x (2K-3): top 2(K-1) right eigenvectors of D^{-1} W minus the constant one
    Eigen::VectorXd eigenvalues;  // all eigenvalues of D^{-1} W, descending
    double sigma = 0.0;
};

/// Throws DegenerateCloudError if sigma is zero, ParameterError if K < 2 or
/// the cloud has fewer than 2(K-1)+1 points.
SpectralEmbedding spectral_embed(const TfcPointCloud& cloud, double sigma_pct, int K);

/// k-means++ seeded from `seed`, `restarts` runs of Lloyd iterations, best inertia kept.
std::vector<int> kmeans_cluster(const Eigen::MatrixXd& x, int K, std::uint64_t seed, int restarts = 50);
double kmeans_inertia(const Eigen::MatrixXd& x, std::span<const int> labels, int K);

struct RidgeSample {
    double omega_hz = 0.0;
    double mu_hzps = 0.0;
    bool valid = false;     // finite value available (observed or filled)
    bool observed = false;  // cluster present at this frame
};

struct RidgeSet {
    int K = 0;
    std::vector<double> times_s;
    std::vector<std::vector<RidgeSample>> curves;  // K x n_time
};

/// Per frame and cluster, the weight-averaged (omega, mu) of the cluster's
/// points; gaps are filled by linear interpolation and held constant past the
/// ends. Clusters are ordered by ascending mean chirp rate. With `use_refined`
/// the reassigned coordinates are averaged instead of bin centers.
/// Throws ExtractionError if a cluster has no points.
RidgeSet ridges_from_clusters(const TfcPointCloud& cloud, std::span<const int> labels, int K, const TfcGrid& grid,
                              bool use_refined = true);

struct RidgeParams {
    int K = 2;
    double q = 0.9995;
    double sigma_pct = 15.0;
    std::uint64_t seed = 1;
    int restarts = 50;
    bool use_refined = true;
    double isolation_ratio = 0.01;  // see prune_isolated_points
};

/// Clusters a prepared cloud (K = 1 keeps every point in one cluster).
RidgeSet extract_ridges(const TfcPointCloud& cloud, const TfcGrid& grid, const RidgeParams& params);
RidgeSet extract_ridges(const SqueezeResult& squeeze, const RidgeParams& params);
RidgeSet extract_ridges(const TfcTensor& S, const RidgeParams& params);

}  // namespace sct
