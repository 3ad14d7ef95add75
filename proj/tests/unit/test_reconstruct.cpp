#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sct/analytic.hpp"
#include "sct/error.hpp"
#include "sct/reconstruct.hpp"
#include "sct/sst.hpp"

using namespace sct;

namespace {

struct Chirp {
    double xi0, l0;
    cdouble at(double t) const { return std::polar(1.0, 2 * kPi * xi0 * t + kPi * l0 * t * t); }
    double if_hz(double t) const { return xi0 + l0 * t; }
};

RidgeSet exact_ridges(const std::vector<Chirp>& cs, int N, double fs) {
    RidgeSet r;
    r.K = static_cast<int>(cs.size());
    for (int n = 0; n < N; ++n) r.times_s.push_back(n / fs);
    for (const auto& c : cs) {
        std::vector<RidgeSample> curve;
        for (int n = 0; n < N; ++n) curve.push_back({c.if_hz(n / fs), c.l0, true, true});
        r.curves.push_back(curve);
    }
    return r;
}

}  // namespace

TEST_CASE("CT at an arbitrary point matches the direct sum") {
    std::vector<cdouble> x(50);
    for (int n = 0; n < 50; ++n) x[n] = cdouble(std::sin(0.3 * n), std::cos(0.11 * n * n));
    const Signal s(x, 25.0);
    const WindowBank b = make_window_bank(gaussian_window(0, 2.0), 9, s.dt_s());
    for (int n : {0, 20, 49}) {
        const cdouble o = oracle::direct_ct(x, [&](double y) { return b.family.value(y); }, 9, s.dt_s(), n, 3.3, -4.1);
        CHECK(std::abs(ct_at(s, b, n, 3.3, -4.1) - o) <= 1e-13);
    }
}

TEST_CASE("mixing matrix entries are window transforms at ridge differences") {
    std::vector<cdouble> x(100, cdouble{1.0, 0.0});
    const Signal s(x, 50.0);
    const WindowBank b = make_window_bank(gaussian_window(0, 4.0), s.dt_s());
    const std::vector<double> om{5.0, 9.0}, mu{1.0, -3.0};
    const MixingSystem m = build_mixing_system(s, b, 50, om, mu);
    CHECK(std::abs(m.A(0, 0) - 0.5) <= 1e-14);  // 1 / sqrt(alpha_w)
    CHECK(std::abs(m.A(0, 1) - g_check(b.family, -4.0, 4.0)) <= 1e-14);
    CHECK(m.condition >= 1.0);
    const std::vector<double> om2{5.0, 5.0}, mu2{1.0, 1.0};
    CHECK_FALSE(build_mixing_system(s, b, 50, om2, mu2).condition <= kConditionLimit);
}

TEST_CASE("exact ridges reconstruct two crossing linear chirps") {
    const double fs = 100.0;
    const int N = 500;
    const std::vector<Chirp> cs{{10.0, 6.0}, {30.0, -4.0}};  // IFs cross at t = 2
    std::vector<cdouble> x(N);
    for (int n = 0; n < N; ++n) x[n] = cs[0].at(n / fs) + cs[1].at(n / fs);
    const Signal s(x, fs);
    const WindowBank b = make_window_bank(gaussian_window(0, 4.0), s.dt_s());
    const ReconstructedModes r = reconstruct_modes(s, exact_ridges(cs, N, fs), b);
    for (int n = b.half_len; n < N - b.half_len; ++n) {
        for (int k = 0; k < 2; ++k) CHECK(std::abs(r.modes[k][n] - cs[k].at(n / fs)) <= 1e-6);
        CHECK_FALSE(r.degraded[n]);
    }
}

TEST_CASE("ridge interpolation between frames") {
    RidgeSet r;
    r.K = 1;
    r.times_s = {0.0, 1.0};
    r.curves = {{{2.0, 1.0, true, true}, {4.0, 3.0, true, true}}};
    std::vector<double> om, mu;
    REQUIRE(ridge_values_at(r, 0.25, om, mu));
    CHECK(om[0] == doctest::Approx(2.5));
    CHECK(mu[0] == doctest::Approx(1.5));
    REQUIRE(ridge_values_at(r, 3.0, om, mu));
    CHECK(om[0] == doctest::Approx(4.0));
    r.curves[0][1].valid = false;
    CHECK_FALSE(ridge_values_at(r, 0.5, om, mu));
}

TEST_CASE("reconstruction fails loudly when no frame is usable") {
    const double fs = 50.0;
    std::vector<cdouble> x(100, cdouble{1.0, 0.0});
    const Signal s(x, fs);
    const WindowBank b = make_window_bank(gaussian_window(0, 4.0), s.dt_s());
    CHECK_THROWS_AS(reconstruct_modes(s, exact_ridges({{5.0, 0.0}, {5.0, 0.0}}, 100, fs), b), ReconstructionError);
    const WindowBank other = make_window_bank(gaussian_window(0, 4.0), 0.5 / fs);
    CHECK_THROWS_AS(reconstruct_modes(s, exact_ridges({{5.0, 0.0}}, 100, fs), other), ShapeError);
}

TEST_CASE("SST2 band integration recovers a linear chirp") {
    const double fs = 100.0;
    const int N = 700;
    const Chirp c{12.0, 2.0};
    std::vector<cdouble> x(N);
    std::vector<double> ifs(N);
    for (int n = 0; n < N; ++n) {
        x[n] = c.at(n / fs);
        ifs[n] = c.if_hz(n / fs);
    }
    const Signal s(x, fs);
    const TfcGrid g = grid_from_resolution(0.005, N, fs);
    const WindowBank b = make_window_bank(gaussian_window(0, 4.0), s.dt_s());
    const SstResult r = synchrosqueezed_stft(s, b, g);
    const auto est = sst_band_reconstruct(r.S2, ifs, 0.5, b.family);
    for (int n = b.half_len; n < N - b.half_len; n += 7) CHECK(std::abs(est[n] - x[n]) <= 0.02);
    const auto first = sst_band_reconstruct(r.S1, ifs, 0.5, b.family);
    double e1 = 0.0, e2 = 0.0;
    for (int n = b.half_len; n < N - b.half_len; ++n) {
        e1 += std::norm(first[n] - x[n]);
        e2 += std::norm(est[n] - x[n]);
    }
    CHECK(e2 < e1);
    CHECK_THROWS_AS(sst_band_reconstruct(r.S2, ifs, 2.0, gaussian_window(1, 4.0)), UnsupportedWindowError);
}
