#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sct/analytic.hpp"
#include "sct/chirplet.hpp"
#include "sct/error.hpp"
#include "sct/io.hpp"
#include "sct/metrics.hpp"
#include "sct/reconstruct.hpp"
#include "sct/ridge.hpp"
#include "sct/sst.hpp"
#include "sct/synth.hpp"

using namespace sct;

namespace {

Signal tone(double fs, int n, double xi0) {
    std::vector<cdouble> x(n);
    for (int k = 0; k < n; ++k) x[k] = std::polar(1.0, 2 * kPi * xi0 * k / fs);
    return Signal(x, fs);
}

Signal zeros(double fs, int n) { return Signal(std::vector<cdouble>(n), fs); }

}  // namespace

TEST_CASE("window samples at unit spacing") {
    const WindowBank b = make_window_bank(gaussian_window(0, 1.0), 1, 1.0);
    CHECK(b.h[0] == doctest::Approx(std::exp(-kPi)));
    CHECK(b.h[1] == 1.0);
    CHECK(b.h[2] == doctest::Approx(std::exp(-kPi)));
    CHECK(make_window_bank(gaussian_window(2, 1.0), 6, 0.1).h[6] == 0.0);
    const WindowBank c = make_window_bank(gaussian_window(0, 1.0), 4, 0.5);
    for (int k = 0; k < 9; ++k) {
        const double x = (k - 4) * 0.5;
        const double fd = (c.family.value(x + 1e-6) - c.family.value(x - 1e-6)) / 2e-6;
        CHECK(c.h_prime[k] == doctest::Approx(fd).epsilon(1e-6).scale(1e-6));
    }
}

TEST_CASE("grid mapping arithmetic") {
    const TfcGrid one = grid_from_resolution(0.5, 4, 100.0);
    CHECK(one.M == 1);
    CHECK(one.n_freq() == 2);
    CHECK(one.n_chirp() == 2);
    const TfcGrid g = grid_from_resolution(0.01, 10, 100.0);
    CHECK(g.M == 50);
    CHECK(g.freq_hz(24) == doctest::Approx(24.0));
    CHECK(g.chirp_hzps(g.chirp_bin_of_level(8)) == doctest::Approx(8.0));
    CHECK(physical_to_bin(g, 0.0, 0.0) == BinIndex{0, g.chirp_bin_of_level(0)});
    for (int j = 0; j < g.n_freq(); ++j) {
        for (int c = 0; c < g.n_chirp(); ++c) {
            const auto [f, l] = bin_to_physical(g, {j, c});
            REQUIRE(physical_to_bin(g, f, l) == BinIndex{j, c});
        }
    }
}

TEST_CASE("linearity: a zero signal gives zeros everywhere") {
    const Signal z = zeros(20.0, 40);
    const TfcGrid g = grid_from_resolution(0.1, 40, 20.0);
    const WindowBank b = make_window_bank(gaussian_window(2, 1.0), z.dt_s());
    CHECK(chirplet_transform(z, b.h, g).max_abs() == 0.0);
    const TfMatrix W = stft(z, b.h, g);
    for (const auto& v : W.values) CHECK(v == cdouble{});
    const SctResult r = synchrosqueezed_chirplet_transform(z, b, g);
    CHECK(r.squeeze.S.max_abs() == 0.0);
    const SstResult s = synchrosqueezed_stft(z, b, g);
    for (const auto& v : s.S2.values) CHECK(v == cdouble{});
    RidgeSet ridges;
    ridges.K = 2;
    for (int n = 0; n < 40; ++n) ridges.times_s.push_back(n / 20.0);
    ridges.curves = {std::vector<RidgeSample>(40, {2.0, 1.0, true, true}),
                     std::vector<RidgeSample>(40, {7.0, -1.0, true, true})};
    const ReconstructedModes m = reconstruct_modes(z, ridges, make_window_bank(gaussian_window(0, 1.0), z.dt_s()));
    for (const auto& mode : m.modes)
        for (const auto& v : mode) CHECK(v == cdouble{});
    const std::vector<double> ifs(40, 3.0);
    for (const auto& v : sst_band_reconstruct(s.S2, ifs, 1.0, gaussian_window(0, 1.0))) CHECK(v == cdouble{});
}

TEST_CASE("projection of a single entry") {
    const TfcGrid g = grid_from_resolution(0.1, 3, 10.0);
    TfcTensor T(g);
    CHECK(project_tfc_to_tf(T).values == std::vector<double>(g.n_freq() * 3, 0.0));
    T.values(2, 1, 1) = cdouble(3.0, 4.0);
    CHECK(project_tfc_to_tf(T)(1, 1) == doctest::Approx(5.0 * g.chirp_step_hzps()));
}

TEST_CASE("pure tone: STFT peak and squeezed mass on the tone bin") {
    const double fs = 40.0;
    const TfcGrid g = grid_from_resolution(0.01, 400, fs);  // 0.4 Hz bins
    const Signal s = tone(fs, 400, g.freq_hz(20));
    const WindowBank b = make_window_bank(gaussian_window(0, 4.0), s.dt_s());
    const SstResult r = synchrosqueezed_stft(s, b, g);
    for (int n = b.half_len; n < 400 - b.half_len; ++n) {
        int arg = 0;
        for (int j = 1; j < g.n_freq(); ++j) if (std::abs(r.W(j, n)) > std::abs(r.W(arg, n))) arg = j;
        CHECK(arg == 20);
        double total = 0.0;
        for (int j = 0; j < g.n_freq(); ++j) total += std::abs(r.S2(j, n));
        CHECK(std::abs(r.S2(20, n)) >= (1 - 1e-9) * total);
        for (int j = 0; j < g.n_freq(); ++j) CHECK(std::abs(r.S2(j, n) - r.S1(j, n)) <= 1e-9);
    }
    std::vector<double> ifs(400, g.freq_hz(20));
    const auto est = sst_band_reconstruct(r.S2, ifs, g.freq_step_hz(), b.family);
    std::vector<cdouble> x(s.samples().begin(), s.samples().end());
    const auto mask = interval_mask(400, fs, 0.0, b.half_len / fs, (399 - b.half_len) / fs);
    CHECK(rel_error(est, x, mask, false) <= 1e-2);
}

TEST_CASE("closed forms at simple points") {
    CHECK(std::abs(analytic_ct_linear_chirp(5.0, 3.0, 1.0, 0.4, 5.0 + 1.2, 3.0)) == doctest::Approx(1.0));
    CHECK(std::abs(g_check(gaussian_window(0, 1.0), 0.0, 0.0) - 1.0) <= 1e-15);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const WindowFamily w = gaussian_window(1, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double xi = U(rng), lam = 3 * U(rng);
        const auto ref = oracle::integrate(
            [&](double x) { return w.value(x) * std::polar(1.0, -2 * oracle::pi * xi * x - oracle::pi * lam * x * x); },
            -7.0, 7.0, 1e-13, 512);
        CHECK(std::abs(g_check(w, xi, lam) - ref) <= 1e-6 * std::max(std::abs(ref), 1e-3));
    }
    CHECK(chirp_transform_1d([](double) { return 0.0; }, -1.0, 1.0, 4.0) == cdouble{});
}

TEST_CASE("squeeze neighborhood queries") {
    const double fs = 30.0;
    const Signal s = tone(fs, 90, 6.0);
    const TfcGrid g = grid_from_resolution(0.05, 90, fs);
    const WindowBank b = make_window_bank(gaussian_window(0, 1.0), s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, b, g);
    const double inf = std::numeric_limits<double>::infinity();
    int defined = 0;
    for (int c = 0; c < g.n_chirp(); ++c)
        for (int j = 0; j < g.n_freq(); ++j) defined += r.field.defined(c, j, 45);
    CHECK(static_cast<int>(inverse_sct_neighborhood(r.field, r.T, 45, 0.0, 0.0, inf, inf).size()) == defined);
    CHECK(inverse_sct_neighborhood(r.field, r.T, 45, 1000.0, 0.0, 1.0, 1.0).empty());
}

TEST_CASE("second-order SST follows the IF of a linear chirp; the crossing degrades it") {
    const SyntheticScene sc = crossing_chirp_pair();
    const Signal f1(sc.components[0].values, sc.sample_rate_hz, sc.t0_s);
    const TfcGrid g = grid_from_resolution(0.01, static_cast<int>(f1.size()), f1.sample_rate_hz(), f1.t0_s());
    const WindowBank b = make_window_bank(gaussian_window(0, 1.0), f1.dt_s());
    const TfMatrix S = sst2(f1, b, g);
    for (int n = 100; n <= 300; n += 10) {
        int arg = 0;
        for (int j = 1; j < g.n_freq(); ++j) if (std::abs(S(j, n)) > std::abs(S(arg, n))) arg = j;
        CHECK(std::abs(g.freq_hz(arg) - 8.0 * g.time_s(n)) <= g.freq_step_hz());
    }
    // Fraction of |S2| within 1 Hz of the two IF curves, at t = 3 and t = 2.
    const TfMatrix S2 = sst2(sc.signal(), b, g);
    auto band_fraction = [&](int n) {
        double in = 0.0, all = 0.0;
        for (int j = 0; j < g.n_freq(); ++j) {
            const double a = std::abs(S2(j, n));
            all += a;
            const double f = g.freq_hz(j);
            if (std::abs(f - sc.components[0].if_hz[n]) <= 1.0 || std::abs(f - sc.components[1].if_hz[n]) <= 1.0) in += a;
        }
        return in / all;
    };
    CHECK(band_fraction(200) < band_fraction(100));
}

TEST_CASE("high-energy cloud of the crossing pair lies on two chirp-rate sheets") {
    const SyntheticScene sc = crossing_chirp_pair();
    const Signal s = sc.signal();
    const TfcGrid g = grid_from_resolution(0.005, static_cast<int>(s.size()), s.sample_rate_hz(), s.t0_s());
    const WindowBank b = make_window_bank(gaussian_window(2, 8.0), s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, b, g);
    // About 400 points on this grid.
    const TfcPointCloud c = select_high_energy(r.squeeze, 0.99995);
    int near = 0;
    for (const auto& p : c.points) {
        const double d1 = std::abs(p.chirp_hzps - 8.0) + std::abs(p.freq_hz - 8.0 * p.t_s) / 4.0;
        const double d2 = std::abs(p.chirp_hzps + 2 * kPi) + std::abs(p.freq_hz - (-2 * kPi * p.t_s + 24 + 6 * kPi)) / 4.0;
        near += std::min(d1, d2) <= 2.0 * g.chirp_step_hzps() + g.freq_step_hz();
    }
    CHECK(near >= 0.9 * static_cast<double>(c.points.size()));

    RidgeParams p;
    p.q = 0.99995;
    const RidgeSet ridges = extract_ridges(r.squeeze, p);
    REQUIRE(ridges.K == 2);
    double m0 = 0.0, m1 = 0.0;
    for (int n = 0; n < g.n_time; ++n) {
        m0 += ridges.curves[0][n].mu_hzps;
        m1 += ridges.curves[1][n].mu_hzps;
    }
    CHECK(std::abs(m0 / g.n_time + 2 * kPi) <= g.chirp_step_hzps());
    CHECK(std::abs(m1 / g.n_time - 8.0) <= g.chirp_step_hzps());
}

TEST_CASE("single linear chirp: K = 1 ridge and near-exact reconstruction") {
    const double fs = 50.0, xi0 = 4.0, l0 = 2.0;
    const int N = 400;
    std::vector<cdouble> x(N);
    for (int n = 0; n < N; ++n) x[n] = std::polar(1.0, 2 * kPi * xi0 * n / fs + kPi * l0 * (n / fs) * (n / fs));
    const Signal s(x, fs);
    const TfcGrid g = grid_from_resolution(0.02, N, fs);
    const WindowBank b = make_window_bank(gaussian_window(0, 2.0), s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, b, g);
    RidgeParams p;
    p.K = 1;
    p.q = 0.999;
    const RidgeSet ridges = extract_ridges(r.squeeze, p);
    for (int n = b.half_len; n < N - b.half_len; ++n) {
        CHECK(std::abs(ridges.curves[0][n].omega_hz - (xi0 + l0 * n / fs)) <= g.freq_step_hz());
        CHECK(std::abs(ridges.curves[0][n].mu_hzps - l0) <= g.chirp_step_hzps());
    }
    RidgeSet exact = ridges;
    for (int n = 0; n < N; ++n) exact.curves[0][n] = {xi0 + l0 * n / fs, l0, true, true};
    const ReconstructedModes m = reconstruct_modes(s, exact, b);
    const auto mask = interval_mask(N, fs, 0.0, b.half_len / fs, (N - 1 - b.half_len) / fs);
    CHECK(rel_error(m.modes[0], x, mask, false) <= 1e-2);
    const MixingSystem one = build_mixing_system(s, b, 100, std::vector<double>{8.0}, std::vector<double>{3.0});
    CHECK(std::abs(one.A(0, 0) - 1.0 / std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("smoothing and process limits") {
    const auto flat = smoothed_brownian(5000.0, 1.0, 0.01, 8);
    auto rng = substream(8, 0);
    const auto raw = brownian_path(101, 0.01, rng);
    double m = 0.0, ss = 0.0;
    for (double v : raw) m += v;
    m /= raw.size();
    for (double v : raw) ss += (v - m) * (v - m);
    const auto [lo, hi] = std::minmax_element(flat.begin(), flat.end());
    CHECK(*hi - *lo < 0.05 * std::sqrt(ss / raw.size()));

    RandomProcessSpec spec;
    spec.zeta = {2, 0, 0, 1, 200, 0, 0};
    spec.T_s = 1.0;
    spec.dt_s = 1e-3;
    spec.seed = 3;
    const auto a = random_process(spec);
    const auto [alo, ahi] = std::minmax_element(a.value.begin(), a.value.end());
    CHECK(*alo >= 2.0 - 1e-9);
    CHECK(*ahi <= 3.0 + 1e-9);
    CHECK(*alo == doctest::Approx(2.0));
    CHECK(*ahi == doctest::Approx(3.0));
    spec.zeta = {1.0, -2.0, 0.5, 0, 0, 0, 0};
    const auto poly = random_process(spec);
    for (std::size_t i = 0; i < poly.value.size(); i += 100) {
        const double u = i * 1e-3;
        CHECK(poly.value[i] == doctest::Approx(1.0 - 2.0 * u + 0.5 * u * u));
    }
}

TEST_CASE("metric identities") {
    std::vector<cdouble> t{{1, 1}, {-2, 0.5}, {0.3, 0}};
    std::vector<cdouble> z(3), t11(3);
    for (int i = 0; i < 3; ++i) t11[i] = t[i] * 1.1;
    CHECK(rel_error(t, t) == 0.0);
    CHECK(rel_error(z, t) == doctest::Approx(1.0));
    CHECK(rel_error(t11, t) == doctest::Approx(0.1));
    const std::vector<double> p{0.0, 1.0, 4.0}, w{1.0, 2.0, 3.0}, one{1.0};
    CHECK(wasserstein1_1d(p, w, p, w) == 0.0);
    CHECK(wasserstein1_1d(std::vector<double>{0.0}, one, std::vector<double>{3.5}, one) == doctest::Approx(3.5));
    const std::vector<double> truth{1.0, 2.0, 3.0}, off{1.7, 2.7, 3.7};
    CHECK(ot_if_metric(truth, truth) == 0.0);
    CHECK(ot_if_metric(off, truth) == doctest::Approx(0.7));
}

TEST_CASE("one-sample tensor file length") {
    const TfcGrid g = grid_from_resolution(0.25, 1, 10.0);  // M = 2
    const TfcTensor T(g);
    CHECK(encode_tensor(T).size() == TensorFileHeader::kBytes + 4 * 3 * 1 * 16);
}
