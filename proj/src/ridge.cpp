#include "sct/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sct/error.hpp"

namespace sct {

namespace {

// Largest cloud accepted by the dense eigensolver.
constexpr std::size_t kMaxCloud = 20000;

void check_q(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw ParameterError("quantile level q must lie in [0, 1)");
}

void finish_cloud(TfcPointCloud& cloud) {
    if (cloud.points.empty()) throw EmptyCloudError("no entries above the energy quantile");
    for (int a = 0; a < 3; ++a) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& p : cloud.points) {
            const double v = a == 0 ? p.t_s : a == 1 ? p.freq_hz : p.chirp_hzps;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        cloud.normalization.lo[a] = lo;
        cloud.normalization.span[a] = hi - lo;
    }
}

template <class Get>
std::vector<double> magnitudes(std::size_t n, Get get) {
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = std::abs(get(i));
    return m;
}

TfcPointCloud select_impl(const TfcTensor& S, double q, const SqueezeResult* sq) {
    check_q(q);
    const auto& v = S.values.data();
    const auto mags = magnitudes(v.size(), [&](std::size_t i) { return v[i]; });
    TfcPointCloud cloud;
    cloud.threshold = quantile(mags, q);
    const TfcGrid& g = S.grid;
    for (int n = 0; n < g.n_time; ++n) {
        for (int c = 0; c < g.n_chirp(); ++c) {
            for (int j = 0; j < g.n_freq(); ++j) {
                const std::size_t i = S.values.index(c, j, n);
                if (!(mags[i] > cloud.threshold)) continue;
                CloudPoint p;
                p.frame = n;
                p.freq_bin = j;
                p.chirp_bin = c;
                p.t_s = g.time_s(n);
                p.freq_hz = g.freq_hz(j);
                p.chirp_hzps = g.chirp_hzps(c);
                p.weight = mags[i];
                p.omega_hz = p.freq_hz;
                p.mu_hzps = p.chirp_hzps;
                if (sq != nullptr) {
                    const double om = sq->omega_centroid.data()[i];
                    const double mu = sq->mu_centroid.data()[i];
                    if (std::isfinite(om) && std::isfinite(mu)) {
                        p.omega_hz = om;
                        p.mu_hzps = mu;
                    }
                }
                cloud.points.push_back(p);
            }
        }
    }
    finish_cloud(cloud);
    return cloud;
}

double sq_dist(const Eigen::MatrixXd& x, Eigen::Index i, Eigen::Index j) {
    return (x.row(i) - x.row(j)).squaredNorm();
}

struct KmeansRun {
    std::vector<int> labels;
    double inertia = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_once(const Eigen::MatrixXd& x, int K, std::mt19937_64& rng) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd centers(K, x.cols());
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    centers.row(0) = x.row(pick(rng));
    std::vector<double> d2(n);
    for (int k = 1; k < K; ++k) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) best = std::min(best, (x.row(i) - centers.row(c)).squaredNorm());
            d2[i] = best;
            total += best;
        }
        Eigen::Index chosen = pick(rng);
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double r = u(rng);
            chosen = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                r -= d2[i];
                if (r <= 0.0) {
                    chosen = i;
                    break;
                }
            }
        }
        centers.row(k) = x.row(chosen);
    }
    KmeansRun run;
    run.labels.assign(n, -1);
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best_c = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < K; ++c) {
                const double d = (x.row(i) - centers.row(c)).squaredNorm();
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            if (run.labels[i] != best_c) {
                run.labels[i] = best_c;
                changed = true;
            }
        }
        if (!changed) break;
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, x.cols());
        std::vector<int> counts(K, 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(run.labels[i]) += x.row(i);
            ++counts[run.labels[i]];
        }
        for (int c = 0; c < K; ++c) {
            // An emptied cluster keeps its previous center.
            if (counts[c] > 0) centers.row(c) = sums.row(c) / counts[c];
        }
    }
    run.inertia = kmeans_inertia(x, run.labels, K);
    return run;
}

}  // namespace

Eigen::MatrixXd TfcPointCloud::normalized() const {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(points.size()), 3);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double v[3] = {points[i].t_s, points[i].freq_hz, points[i].chirp_hzps};
        for (int a = 0; a < 3; ++a) {
            const double s = normalization.span[a];
            x(static_cast<Eigen::Index>(i), a) = s > 0.0 ? (v[a] - normalization.lo[a]) / s : 0.0;
        }
    }
    return x;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ParameterError("quantile of an empty set");
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

TfcPointCloud select_high_energy(const TfcTensor& S, double q) { return select_impl(S, q, nullptr); }

TfcPointCloud select_high_energy(const SqueezeResult& squeeze, double q) {
    return select_impl(squeeze.S, q, &squeeze);
}

TfcPointCloud select_high_energy(const TfMatrix& S, double q) {
    check_q(q);
    const auto mags = magnitudes(S.values.size(), [&](std::size_t i) { return S.values[i]; });
    TfcPointCloud cloud;
    cloud.threshold = quantile(mags, q);
    for (int n = 0; n < S.n_time; ++n) {
        for (int j = 0; j < S.n_freq; ++j) {
            const double m = std::abs(S(j, n));
            if (!(m > cloud.threshold)) continue;
            CloudPoint p;
            p.frame = n;
            p.freq_bin = j;
            p.chirp_bin = S.grid.chirp_bin_of_level(0);
            p.t_s = S.grid.time_s(n);
            p.freq_hz = S.grid.freq_hz(j);
            p.omega_hz = p.freq_hz;
            p.weight = m;
            cloud.points.push_back(p);
        }
    }
    finish_cloud(cloud);
    return cloud;
}

double distance_percentile(const Eigen::MatrixXd& x, double pct) {
    if (!(pct > 0.0 && pct <= 100.0)) throw ParameterError("sigma percentile must lie in (0, 100]");
    const Eigen::Index n = x.rows();
    if (n < 2) throw DegenerateCloudError("need at least two points for pairwise distances");
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) d.push_back(std::sqrt(sq_dist(x, i, j)));
    }
    return quantile(std::move(d), pct / 100.0);
}

Eigen::MatrixXd affinity_matrix(const Eigen::MatrixXd& x, double sigma) {
    if (!(sigma > 0.0)) throw DegenerateCloudError("affinity bandwidth is zero");
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd W(n, n);
    const double inv = 1.0 / (2.0 * sigma * sigma);
#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index i = 0; i < n; ++i) {
        W(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double w = std::exp(-sq_dist(x, i, j) * inv);
            W(i, j) = w;
            W(j, i) = w;
        }
    }
    return W;
}

SpectralEmbedding spectral_embed(const TfcPointCloud& cloud, double sigma_pct, int K) {
    if (K < 2) throw ParameterError("spectral embedding needs K >= 2");
    const auto n = static_cast<Eigen::Index>(cloud.points.size());
    const Eigen::Index dim = 2 * (K - 1);
    if (n < dim + 1) throw ParameterError("cloud has too few points for the requested K");
    if (cloud.points.size() > kMaxCloud) throw ParameterError("cloud too large for dense eigendecomposition; raise q");
    const Eigen::MatrixXd x = cloud.normalized();
    SpectralEmbedding e;
    e.sigma = distance_percentile(x, sigma_pct);
    if (!(e.sigma > 0.0)) throw DegenerateCloudError("all pairwise distances at the percentile are zero");
    Eigen::MatrixXd W = affinity_matrix(x, e.sigma);
    const Eigen::VectorXd d_inv_sqrt = W.rowwise().sum().array().rsqrt();
    W = d_inv_sqrt.asDiagonal() * W * d_inv_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(W);
    if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    // Ascending order: the last column is the trivial eigenvector. It counts
    // toward the top 2(K-1) but is constant after back-scaling, so it is left
    // out of the coordinates; k-means is unaffected by a constant column.
    e.eigenvalues = solver.eigenvalues().reverse();
    e.coords.resize(n, dim - 1);
    for (Eigen::Index k = 0; k < dim - 1; ++k) {
        e.coords.col(k) = d_inv_sqrt.cwiseProduct(solver.eigenvectors().col(n - 2 - k));
    }
    return e;
}

TfcPointCloud prune_isolated_points(const TfcPointCloud& cloud, double sigma_pct, double ratio) {
    if (!(ratio >= 0.0)) throw ParameterError("isolation ratio must be >= 0");
    TfcPointCloud out = cloud;
    if (ratio == 0.0) return out;
    for (int round = 0; round < 16 && out.points.size() > 2; ++round) {
        const Eigen::MatrixXd x = out.normalized();
        const double sigma = distance_percentile(x, sigma_pct);
        if (!(sigma > 0.0)) break;
        const Eigen::VectorXd off = affinity_matrix(x, sigma).rowwise().sum().array() - 1.0;
        std::vector<double> sorted(off.data(), off.data() + off.size());
        const double cut = ratio * quantile(std::move(sorted), 0.5);
        std::vector<CloudPoint> kept;
        kept.reserve(out.points.size());
        for (std::size_t i = 0; i < out.points.size(); ++i) {
            if (off(static_cast<Eigen::Index>(i)) >= cut) kept.push_back(out.points[i]);
        }
        if (kept.size() == out.points.size()) break;
        out.points = std::move(kept);
        finish_cloud(out);
    }
    return out;
}

double kmeans_inertia(const Eigen::MatrixXd& x, std::span<const int> labels, int K) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, x.cols());
    std::vector<int> counts(K, 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        sums.row(labels[i]) += x.row(i);
        ++counts[labels[i]];
    }
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const int c = labels[i];
        inertia += (x.row(i) - sums.row(c) / counts[c]).squaredNorm();
    }
    return inertia;
}

std::vector<int> kmeans_cluster(const Eigen::MatrixXd& x, int K, std::uint64_t seed, int restarts) {
    if (K < 1) throw ParameterError("K must be >= 1");
    if (x.rows() < K) throw ParameterError("fewer points than clusters");
    if (K == 1) return std::vector<int>(x.rows(), 0);
    std::mt19937_64 rng(seed);
    KmeansRun best;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        KmeansRun run = kmeans_once(x, K, rng);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best.labels;
}

RidgeSet ridges_from_clusters(const TfcPointCloud& cloud, std::span<const int> labels, int K, const TfcGrid& grid,
                              bool use_refined) {
    if (labels.size() != cloud.points.size()) throw ShapeError("labels do not cover the cloud");
    const int N = grid.n_time;
    std::vector<std::vector<double>> w(K, std::vector<double>(N, 0.0));
    std::vector<std::vector<double>> wo(K, std::vector<double>(N, 0.0));
    std::vector<std::vector<double>> wm(K, std::vector<double>(N, 0.0));
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        const int k = labels[i];
        if (k < 0 || k >= K) throw ParameterError("label outside [0, K)");
        const double om = use_refined ? p.omega_hz : p.freq_hz;
        const double mu = use_refined ? p.mu_hzps : p.chirp_hzps;
        w[k][p.frame] += p.weight;
        wo[k][p.frame] += p.weight * om;
        wm[k][p.frame] += p.weight * mu;
    }
    std::vector<std::vector<RidgeSample>> curves(K, std::vector<RidgeSample>(N));
    std::vector<double> mean_mu(K, 0.0);
    for (int k = 0; k < K; ++k) {
        std::vector<int> obs;
        for (int n = 0; n < N; ++n) {
            if (w[k][n] > 0.0) {
                curves[k][n] = {wo[k][n] / w[k][n], wm[k][n] / w[k][n], true, true};
                obs.push_back(n);
            }
        }
        if (obs.empty()) throw ExtractionError("a cluster has no points at any frame");
        for (int n : obs) mean_mu[k] += curves[k][n].mu_hzps;
        mean_mu[k] /= static_cast<double>(obs.size());
        // Fill the gaps.
        for (int n = 0; n < N; ++n) {
            if (curves[k][n].observed) continue;
            const auto it = std::lower_bound(obs.begin(), obs.end(), n);
            RidgeSample s;
            if (it == obs.begin()) {
                s = curves[k][obs.front()];
            } else if (it == obs.end()) {
                s = curves[k][obs.back()];
            } else {
                const int a = *(it - 1);
                const int b = *it;
                const double f = static_cast<double>(n - a) / (b - a);
                s.omega_hz = curves[k][a].omega_hz + f * (curves[k][b].omega_hz - curves[k][a].omega_hz);
                s.mu_hzps = curves[k][a].mu_hzps + f * (curves[k][b].mu_hzps - curves[k][a].mu_hzps);
            }
            s.valid = true;
            s.observed = false;
            curves[k][n] = s;
        }
    }
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mean_mu[a] < mean_mu[b]; });
    RidgeSet r;
    r.K = K;
    r.times_s.resize(N);
    for (int n = 0; n < N; ++n) r.times_s[n] = grid.time_s(n);
    for (int k : order) r.curves.push_back(std::move(curves[k]));
    return r;
}

RidgeSet extract_ridges(const TfcPointCloud& cloud, const TfcGrid& grid, const RidgeParams& params) {
    if (params.K < 1) throw ParameterError("K must be >= 1");
    std::vector<int> labels;
    if (params.K == 1) {
        labels.assign(cloud.points.size(), 0);
        return ridges_from_clusters(cloud, labels, params.K, grid, params.use_refined);
    }
    const TfcPointCloud pruned = prune_isolated_points(cloud, params.sigma_pct, params.isolation_ratio);
    const SpectralEmbedding e = spectral_embed(pruned, params.sigma_pct, params.K);
    labels = kmeans_cluster(e.coords, params.K, params.seed, params.restarts);
    return ridges_from_clusters(pruned, labels, params.K, grid, params.use_refined);
}

RidgeSet extract_ridges(const SqueezeResult& squeeze, const RidgeParams& params) {
    return extract_ridges(select_high_energy(squeeze, params.q), squeeze.S.grid, params);
}

RidgeSet extract_ridges(const TfcTensor& S, const RidgeParams& params) {
    return extract_ridges(select_high_energy(S, params.q), S.grid, params);
}

}  // namespace sct
