#include "sct/kernels.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "sct/error.hpp"

namespace sct {

namespace {

using RowMatC = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void validate(const KernelRequest& req) {
    if (req.M < 1) throw ParameterError("M must be >= 1");
    if (req.half_len < 0) throw ParameterError("window half length must be >= 0");
    if (req.levels.empty()) throw ParameterError("at least one chirp level is required");
    if (req.windows.empty()) throw ParameterError("at least one window is required");
    const std::size_t len = 2 * static_cast<std::size_t>(req.half_len) + 1;
    for (const auto& w : req.windows) {
        if (w.size() != len) throw ShapeError("window length does not match 2 * half_len + 1");
    }
}

}  // namespace

cdouble modulation_phase(long long p, int M) {
    return std::exp(cdouble(0.0, -kTwoPi * static_cast<double>(p) / (2.0 * M)));
}

cdouble chirp_phase(long long p, int M) {
    return std::exp(cdouble(0.0, -kPi * static_cast<double>(p) / (4.0 * M * static_cast<double>(M))));
}

CtPlan::CtPlan(int M, int half_len, std::vector<int> levels, PhaseConvention convention, double dt_s)
    : M_(M), half_len_(half_len), levels_(std::move(levels)), convention_(convention), dt_s_(dt_s) {
    const int L = 2 * half_len_ + 1;
    const long long two_m = 2LL * M_;
    const long long eight_m2 = 8LL * M_ * M_;
    bucket_.resize(L);
    chirp_.resize(static_cast<std::size_t>(levels_.size()) * L);
    for (int k = 0; k < L; ++k) {
        const long long u = tap_offset(k, half_len_, convention_);
        bucket_[k] = static_cast<int>(positive_mod(u, two_m));
        const long long u2 = positive_mod(u * u, eight_m2);
        for (std::size_t c = 0; c < levels_.size(); ++c) {
            chirp_[c * L + k] = chirp_phase(positive_mod(levels_[c] * u2, eight_m2), M_);
        }
    }
    fourier_.resize(static_cast<std::size_t>(two_m) * (M_ + 1));
    for (long long b = 0; b < two_m; ++b) {
        for (int j = 0; j <= M_; ++j) fourier_[b * (M_ + 1) + j] = modulation_phase((b * j) % two_m, M_);
    }
}

void CtPlan::evaluate_frame(std::span<const cdouble> x, const std::vector<std::span<const double>>& windows, int n,
                            std::span<cdouble> out, Workspace& ws) const {
    const int L = 2 * half_len_ + 1;
    const int W = static_cast<int>(windows.size());
    const int nl = n_levels();
    const int two_m = 2 * M_;
    const long long N = static_cast<long long>(x.size());
    const int k_lo = static_cast<int>(std::max<long long>(0, half_len_ - n));
    const int k_hi = static_cast<int>(std::min<long long>(L, N - n + half_len_));  // exclusive

    ws.taps.assign(static_cast<std::size_t>(W) * L, cdouble{});
    ws.folded.assign(static_cast<std::size_t>(W) * nl * two_m, cdouble{});
    for (int w = 0; w < W; ++w) {
        const double* h = windows[w].data();
        cdouble* z = ws.taps.data() + static_cast<std::size_t>(w) * L;
        for (int k = k_lo; k < k_hi; ++k) z[k] = x[n + k - half_len_] * h[k];
    }
    if (k_lo < k_hi) {
        for (int c = 0; c < nl; ++c) {
            const cdouble* e = chirp_.data() + static_cast<std::size_t>(c) * L;
            for (int w = 0; w < W; ++w) {
                const cdouble* z = ws.taps.data() + static_cast<std::size_t>(w) * L;
                cdouble* y = ws.folded.data() + (static_cast<std::size_t>(w) * nl + c) * two_m;
                // Runs of taps whose residue increases by one map onto contiguous bins.
                int k = k_lo;
                while (k < k_hi) {
                    const int b0 = bucket_[k];
                    const int run = std::min(k_hi - k, two_m - b0);
                    cdouble* yb = y + b0;
                    for (int r = 0; r < run; ++r) yb[r] += z[k + r] * e[k + r];
                    k += run;
                }
            }
        }
    }
    Eigen::Map<const RowMatC> Y(ws.folded.data(), static_cast<Eigen::Index>(W) * nl, two_m);
    Eigen::Map<const RowMatC> F(fourier_.data(), two_m, M_ + 1);
    Eigen::Map<RowMatC> T(out.data(), static_cast<Eigen::Index>(W) * nl, M_ + 1);
    T.noalias() = Y * F;
    T *= dt_s_;
}

std::vector<Volume<cdouble>> ct_kernel_reference(const KernelRequest& req) {
    validate(req);
    const int M = req.M;
    const int K = req.half_len;
    const int L = 2 * K + 1;
    const int nl = static_cast<int>(req.levels.size());
    const long long N = static_cast<long long>(req.samples.size());
    const long long two_m = 2LL * M;
    const long long eight_m2 = 8LL * M * M;
    std::vector<Volume<cdouble>> out;
    for (std::size_t w = 0; w < req.windows.size(); ++w) out.emplace_back(nl, M + 1, static_cast<int>(N));
    for (std::size_t w = 0; w < req.windows.size(); ++w) {
        const auto h = req.windows[w];
        for (long long n = 0; n < N; ++n) {
            for (int c = 0; c < nl; ++c) {
                const long long l = req.levels[c];
                for (int j = 0; j <= M; ++j) {
                    cdouble acc{};
                    for (int k = 0; k < L; ++k) {
                        const long long idx = n + k - K;
                        if (idx < 0 || idx >= N) continue;
                        const long long u = tap_offset(k, K, req.convention);
                        const long long pf = positive_mod(u * j, two_m);
                        const long long pc = positive_mod(l * positive_mod(u * u, eight_m2), eight_m2);
                        acc += req.samples[idx] * h[k] * modulation_phase(pf, M) * chirp_phase(pc, M);
                    }
                    out[w](c, j, static_cast<int>(n)) = acc * req.dt_s;
                }
            }
        }
    }
    return out;
}

std::vector<Volume<cdouble>> ct_kernel_parallel(const KernelRequest& req) {
    validate(req);
    const int N = static_cast<int>(req.samples.size());
    const int nl = static_cast<int>(req.levels.size());
    const int W = static_cast<int>(req.windows.size());
    const int nf = req.M + 1;
    const CtPlan plan(req.M, req.half_len, req.levels, req.convention, req.dt_s);
    std::vector<Volume<cdouble>> out;
    for (int w = 0; w < W; ++w) out.emplace_back(nl, nf, N);
#pragma omp parallel
    {
        CtPlan::Workspace ws;
        std::vector<cdouble> block(static_cast<std::size_t>(W) * nl * nf);
#pragma omp for schedule(dynamic, 4)
        for (int n = 0; n < N; ++n) {
            plan.evaluate_frame(req.samples, req.windows, n, block, ws);
            for (int w = 0; w < W; ++w) {
                std::copy_n(block.data() + static_cast<std::size_t>(w) * nl * nf, static_cast<std::size_t>(nl) * nf,
                            out[w].frame(n));
            }
        }
    }
    return out;
}

}  // namespace sct
