#include "sct/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sct/analytic.hpp"
#include "sct/error.hpp"

namespace sct {

cdouble ct_at(const Signal& signal, const WindowBank& bank, int n, double xi_hz, double lambda_hzps) {
    const int K = bank.half_len;
    const long long N = static_cast<long long>(signal.size());
    const double dt = signal.dt_s();
    cdouble acc{};
    for (int k = 0; k < 2 * K + 1; ++k) {
        const long long idx = static_cast<long long>(n) + k - K;
        if (idx < 0 || idx >= N) continue;
        const double y = (k - K) * dt;
        const double phase = -kTwoPi * xi_hz * y - kPi * lambda_hzps * y * y;
        acc += signal[static_cast<std::size_t>(idx)] * bank.h[k] * std::exp(cdouble(0.0, phase));
    }
    return acc * dt;
}

MixingSystem build_mixing_system(const Signal& signal, const WindowBank& bank, int n,
                                 std::span<const double> omega_hz, std::span<const double> mu_hzps) {
    const auto K = static_cast<Eigen::Index>(omega_hz.size());
    if (K < 1 || mu_hzps.size() != omega_hz.size()) throw ShapeError("ridge value arrays must be non-empty and equal");
    MixingSystem m;
    m.A.resize(K, K);
    m.X_hat.resize(K);
    for (Eigen::Index i = 0; i < K; ++i) {
        for (Eigen::Index j = 0; j < K; ++j) {
            m.A(i, j) = g_check(bank.family, omega_hz[i] - omega_hz[j], mu_hzps[i] - mu_hzps[j]);
        }
        m.X_hat(i) = ct_at(signal, bank, n, omega_hz[i], mu_hzps[i]);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.A);
    const auto& s = svd.singularValues();
    const double smin = s(K - 1);
    m.condition = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
    return m;
}

bool ridge_values_at(const RidgeSet& ridges, double t_s, std::vector<double>& omega_hz,
                     std::vector<double>& mu_hzps) {
    omega_hz.assign(ridges.K, 0.0);
    mu_hzps.assign(ridges.K, 0.0);
    const auto& ts = ridges.times_s;
    if (ts.empty()) return false;
    std::size_t a = 0;
    std::size_t b = 0;
    double f = 0.0;
    if (t_s <= ts.front()) {
        a = b = 0;
    } else if (t_s >= ts.back()) {
        a = b = ts.size() - 1;
    } else {
        b = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t_s) - ts.begin());
        a = b - 1;
        f = (t_s - ts[a]) / (ts[b] - ts[a]);
    }
    for (int k = 0; k < ridges.K; ++k) {
        const auto& ca = ridges.curves[k][a];
        const auto& cb = ridges.curves[k][b];
        if (!ca.valid || !cb.valid) return false;
        omega_hz[k] = ca.omega_hz + f * (cb.omega_hz - ca.omega_hz);
        mu_hzps[k] = ca.mu_hzps + f * (cb.mu_hzps - ca.mu_hzps);
    }
    return true;
}

ReconstructedModes reconstruct_modes(const Signal& signal, const RidgeSet& ridges, const WindowBank& bank) {
    if (ridges.K < 1 || static_cast<int>(ridges.curves.size()) != ridges.K) throw ShapeError("malformed ridge set");
    if (std::abs(bank.dt_s - signal.dt_s()) > 1e-12 * signal.dt_s()) {
        throw ShapeError("window bank spacing differs from the signal sample spacing");
    }
    const int N = static_cast<int>(signal.size());
    const int K = ridges.K;
    ReconstructedModes out;
    out.modes.assign(K, std::vector<cdouble>(N));
    out.valid.assign(N, 0);
    out.degraded.assign(N, 0);
    out.sample_rate_hz = signal.sample_rate_hz();
    out.t0_s = signal.t0_s();
    int usable = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : usable)
    for (int n = 0; n < N; ++n) {
        std::vector<double> om;
        std::vector<double> mu;
        if (!ridge_values_at(ridges, signal.time_at(n), om, mu)) continue;
        const MixingSystem m = build_mixing_system(signal, bank, n, om, mu);
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXcd x = svd.solve(m.X_hat);
        for (int k = 0; k < K; ++k) out.modes[k][n] = x(k);
        out.valid[n] = 1;
        if (!(m.condition <= kConditionLimit)) {
            out.degraded[n] = 1;
        } else {
            ++usable;
        }
    }
    if (usable == 0) throw ReconstructionError("every frame is degraded or lacks valid ridges");
    return out;
}

std::vector<cdouble> sst_band_reconstruct(const TfMatrix& S, std::span<const double> ridge_hz, double delta_hz,
                                          const WindowFamily& family) {
    const double g0 = family.value(0.0);
    if (g0 == 0.0) throw UnsupportedWindowError("band reconstruction needs g(0) != 0");
    if (static_cast<int>(ridge_hz.size()) != S.n_time) throw ShapeError("ridge length differs from frame count");
    if (!(delta_hz >= 0.0)) throw ParameterError("band half width must be >= 0");
    const double dxi = S.grid.freq_step_hz();
    std::vector<cdouble> out(S.n_time);
    for (int n = 0; n < S.n_time; ++n) {
        cdouble acc{};
        for (int j = 0; j < S.n_freq; ++j) {
            if (std::abs(S.grid.freq_hz(j) - ridge_hz[n]) <= delta_hz) acc += S(j, n);
        }
        out[n] = acc * dxi / g0;
    }
    return out;
}

}  // namespace sct
