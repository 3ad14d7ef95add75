#include "sct/reassign.hpp"

#include <cmath>

#include "sct/error.hpp"

namespace sct {

namespace {

constexpr cdouble kTwoPiI{0.0, kTwoPi};

// M1 / M2 of the chirp-rate estimate; returns false when M2 is too small.
bool chirp_ratio(const std::array<cdouble, 6>& v, double lambda_hzps, double& mu) noexcept {
    const cdouble th = v[0], thp = v[1], thpp = v[2], tth = v[3], tthp = v[4], tt2h = v[5];
    const cdouble a = kTwoPiI * lambda_hzps;
    const cdouble m1 = th * thpp - 2.0 * a * th * tthp - a * th * th + a * a * th * tt2h - thp * thp - a * a * tth * tth +
                       2.0 * a * thp * tth;
    const cdouble m2 = kTwoPiI * (-th * tthp + a * th * tt2h + tth * thp - a * tth * tth);
    const double am2 = std::abs(m2);
    if (!(am2 > 0.0) || am2 < 1e-12 * std::abs(m1)) return false;
    mu = (m1 / m2).real();
    return std::isfinite(mu);
}

void check_same_grid(const std::array<TfcTensor, 6>& banks) {
    for (const auto& b : banks) {
        if (!b.grid.same_shape(banks[0].grid) || !b.values.same_shape(banks[0].values)) {
            throw ShapeError("companion transforms do not share a grid");
        }
    }
}

}  // namespace

double NuPolicy::resolve(double max_abs) const {
    if (!(value > 0.0) || !std::isfinite(value)) throw ParameterError("nu must be positive");
    if (mode == Mode::absolute) return value;
    // A zero signal gets a positive threshold so that nothing is reassigned.
    return max_abs > 0.0 ? value * max_abs : std::numeric_limits<double>::min();
}

PointEstimate reassign_point(const std::array<cdouble, 6>& v, double xi_hz, double lambda_hzps) noexcept {
    PointEstimate p;
    if (v[0] == cdouble{}) return p;
    double mu = 0.0;
    if (!chirp_ratio(v, lambda_hzps, mu)) return p;
    const cdouble r = (-v[1] + kTwoPiI * (lambda_hzps - mu) * v[3]) / (kTwoPiI * v[0]);
    const double omega = xi_hz + r.real();
    if (!std::isfinite(omega)) return p;
    p.omega = omega;
    p.mu = mu;
    p.defined = true;
    return p;
}

SstEstimate sst_point(const std::array<cdouble, 6>& v, double xi_hz) noexcept {
    SstEstimate s;
    if (v[0] == cdouble{}) return s;
    const double w1 = xi_hz + (-v[1] / (kTwoPiI * v[0])).real();
    if (!std::isfinite(w1)) return s;
    s.omega1 = w1;
    s.defined1 = true;
    double q = 0.0;
    if (chirp_ratio(v, 0.0, q)) {
        const double w2 = w1 - q * (v[3] / v[0]).real();
        if (std::isfinite(w2)) {
            s.omega2 = w2;
            s.defined2 = true;
            return s;
        }
    }
    s.omega2 = w1;
    s.defined2 = true;
    return s;
}

ReassignmentField reassignment_field(const std::array<TfcTensor, 6>& banks, double nu) {
    check_same_grid(banks);
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be positive");
    const TfcGrid& g = banks[0].grid;
    ReassignmentField f;
    f.grid = g;
    f.nu = nu;
    f.omega = Volume<double>(g.n_chirp(), g.n_freq(), g.n_time, kUndefined);
    f.mu = Volume<double>(g.n_chirp(), g.n_freq(), g.n_time, kUndefined);
    f.defined = Volume<std::uint8_t>(g.n_chirp(), g.n_freq(), g.n_time, 0);
#pragma omp parallel for schedule(static)
    for (int n = 0; n < g.n_time; ++n) {
        for (int c = 0; c < g.n_chirp(); ++c) {
            const double lambda = g.chirp_hzps(c);
            for (int j = 0; j < g.n_freq(); ++j) {
                const std::size_t i = banks[0].values.index(c, j, n);
                if (!(std::abs(banks[0].values.data()[i]) > nu)) continue;
                std::array<cdouble, 6> v;
                for (int w = 0; w < 6; ++w) v[w] = banks[w].values.data()[i];
                const PointEstimate p = reassign_point(v, g.freq_hz(j), lambda);
                if (!p.defined) continue;
                f.omega.data()[i] = p.omega;
                f.mu.data()[i] = p.mu;
                f.defined.data()[i] = 1;
            }
        }
    }
    return f;
}

ReassignmentField reassignment_field(const std::array<TfcTensor, 6>& banks, NuPolicy policy) {
    return reassignment_field(banks, policy.resolve(banks[0].max_abs()));
}

SqueezeResult synchrosqueeze(const TfcTensor& T, const ReassignmentField& field) {
    const TfcGrid& g = T.grid;
    if (!g.same_shape(field.grid) || !T.values.same_shape(field.omega)) {
        throw ShapeError("reassignment field does not match the transform grid");
    }
    SqueezeResult r;
    r.S = TfcTensor(g);
    r.contributed.assign(g.n_time, cdouble{});
    r.squeezed.assign(g.n_time, cdouble{});
    r.omega_centroid = Volume<double>(g.n_chirp(), g.n_freq(), g.n_time, std::nan(""));
    r.mu_centroid = Volume<double>(g.n_chirp(), g.n_freq(), g.n_time, std::nan(""));
    const std::size_t fs = T.values.frame_size();
#pragma omp parallel
    {
        std::vector<double> wsum(fs), wom(fs), wmu(fs);
#pragma omp for schedule(static)
        for (int n = 0; n < g.n_time; ++n) {
            std::fill(wsum.begin(), wsum.end(), 0.0);
            std::fill(wom.begin(), wom.end(), 0.0);
            std::fill(wmu.begin(), wmu.end(), 0.0);
            cdouble* S = r.S.values.frame(n);
            const cdouble* Tf = T.values.frame(n);
            const double* om = field.omega.frame(n);
            const double* mu = field.mu.frame(n);
            const std::uint8_t* def = field.defined.frame(n);
            cdouble contributed{};
            for (std::size_t i = 0; i < fs; ++i) {
                if (!def[i]) continue;
                const int j = nearest_freq_bin(g, om[i]);
                const int c = nearest_chirp_bin(g, mu[i]);
                if (j < 0 || c < 0) continue;
                const std::size_t o = static_cast<std::size_t>(c) * g.n_freq() + j;
                S[o] += Tf[i];
                contributed += Tf[i];
                const double w = std::abs(Tf[i]);
                wsum[o] += w;
                wom[o] += w * om[i];
                wmu[o] += w * mu[i];
            }
            cdouble squeezed{};
            double* oc = r.omega_centroid.frame(n);
            double* mc = r.mu_centroid.frame(n);
            for (std::size_t o = 0; o < fs; ++o) {
                squeezed += S[o];
                if (wsum[o] > 0.0) {
                    oc[o] = wom[o] / wsum[o];
                    mc[o] = wmu[o] / wsum[o];
                }
            }
            r.contributed[n] = contributed;
            r.squeezed[n] = squeezed;
        }
    }
    return r;
}

SctResult synchrosqueezed_chirplet_transform(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                                             NuPolicy policy, PhaseConvention convention) {
    check_grid_matches(signal, grid);
    const int N = grid.n_time;
    const int nl = grid.n_chirp();
    const int nf = grid.n_freq();
    std::vector<int> levels(nl);
    for (int c = 0; c < nl; ++c) levels[c] = grid.chirp_level(c);
    const CtPlan plan(grid.M, bank.half_len, levels, convention, signal.dt_s());
    std::vector<std::span<const double>> windows;
    for (Companion c : kAllCompanions) windows.push_back(bank.get(c));

    SctResult out;
    out.T = TfcTensor(grid);
    ReassignmentField& f = out.field;
    f.grid = grid;
    f.omega = Volume<double>(nl, nf, N, kUndefined);
    f.mu = Volume<double>(nl, nf, N, kUndefined);
    f.defined = Volume<std::uint8_t>(nl, nf, N, 0);
    const std::size_t fsz = out.T.values.frame_size();
#pragma omp parallel
    {
        CtPlan::Workspace ws;
        std::vector<cdouble> block(6 * fsz);
#pragma omp for schedule(dynamic, 4)
        for (int n = 0; n < N; ++n) {
            plan.evaluate_frame(signal.samples(), windows, n, block, ws);
            std::copy_n(block.data(), fsz, out.T.values.frame(n));
            double* om = f.omega.frame(n);
            double* mu = f.mu.frame(n);
            std::uint8_t* def = f.defined.frame(n);
            for (int c = 0; c < nl; ++c) {
                const double lambda = grid.chirp_hzps(c);
                for (int j = 0; j < nf; ++j) {
                    const std::size_t i = static_cast<std::size_t>(c) * nf + j;
                    std::array<cdouble, 6> v;
                    for (int w = 0; w < 6; ++w) v[w] = block[w * fsz + i];
                    const PointEstimate p = reassign_point(v, grid.freq_hz(j), lambda);
                    if (!p.defined) continue;
                    om[i] = p.omega;
                    mu[i] = p.mu;
                    def[i] = 1;
                }
            }
        }
    }
    f.nu = policy.resolve(out.T.max_abs());
    auto& Tv = out.T.values.data();
    for (std::size_t i = 0; i < Tv.size(); ++i) {
        if (f.defined.data()[i] && !(std::abs(Tv[i]) > f.nu)) {
            f.defined.data()[i] = 0;
            f.omega.data()[i] = kUndefined;
            f.mu.data()[i] = kUndefined;
        }
    }
    out.squeeze = synchrosqueeze(out.T, f);
    return out;
}

std::vector<NeighborEntry> inverse_sct_neighborhood(const ReassignmentField& field, const TfcTensor& T, int n,
                                                    double xi_hz, double lambda_hzps, double eps1_hz,
                                                    double eps2_hzps) {
    if (!(eps1_hz > 0.0) || !(eps2_hzps > 0.0)) throw ParameterError("neighborhood radii must be positive");
    const TfcGrid& g = field.grid;
    if (n < 0 || n >= g.n_time) throw RangeError("frame index outside the grid");
    if (!T.values.same_shape(field.omega)) throw ShapeError("transform does not match the reassignment field");
    std::vector<NeighborEntry> out;
    for (int c = 0; c < g.n_chirp(); ++c) {
        for (int j = 0; j < g.n_freq(); ++j) {
            if (!field.defined(c, j, n)) continue;
            if (std::abs(field.omega(c, j, n) - xi_hz) < eps1_hz && std::abs(field.mu(c, j, n) - lambda_hzps) < eps2_hzps) {
                out.push_back({j, c, std::abs(T.values(c, j, n))});
            }
        }
    }
    return out;
}

}  // namespace sct
