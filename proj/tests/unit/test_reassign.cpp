#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sct/chirplet.hpp"
#include "sct/error.hpp"
#include "sct/reassign.hpp"
#include "sct/window.hpp"

using namespace sct;

namespace {

// Six companion values of the continuous transform of a linear chirp at
// (t, xi, lambda), by quadrature.
std::array<cdouble, 6> companions_by_quadrature(const WindowFamily& w, double xi0, double l0, double t, double xi,
                                                double lam) {
    const double L = 7.0 / std::sqrt(w.alpha_w);
    auto ct = [&](auto win) {
        return oracle::integrate(
            [&](double x) {
                const double s = x + t;
                const cdouble f = std::polar(1.0, 2 * oracle::pi * xi0 * s + oracle::pi * l0 * s * s);
                return f * win(x) * std::polar(1.0, -2 * oracle::pi * xi * x - oracle::pi * lam * x * x);
            },
            -L, L, 1e-13, 512);
    };
    return {ct([&](double x) { return w.value(x); }), ct([&](double x) { return w.first_derivative(x); }),
            ct([&](double x) { return w.second_derivative(x); }), ct([&](double x) { return x * w.value(x); }),
            ct([&](double x) { return x * w.first_derivative(x); }), ct([&](double x) { return x * x * w.value(x); })};
}

Signal linear_chirp(double fs, int n, double xi0, double l0) {
    std::vector<cdouble> x(n);
    for (int k = 0; k < n; ++k) {
        const double t = k / fs;
        x[k] = std::polar(1.0, 2 * kPi * xi0 * t + kPi * l0 * t * t);
    }
    return Signal(x, fs);
}

}  // namespace

TEST_CASE("point estimates are exact on a continuous linear chirp") {
    const double xi0 = 3.0, l0 = 5.0, t = 0.7;
    for (int n : {0, 2}) {
        const WindowFamily w = gaussian_window(n, 1.5);
        for (auto [xi, lam] : {std::pair{7.0, 4.0}, {6.1, 6.5}, {5.0, 0.0}}) {
            const auto v = companions_by_quadrature(w, xi0, l0, t, xi, lam);
            const PointEstimate p = reassign_point(v, xi, lam);
            REQUIRE(p.defined);
            CHECK(p.mu == doctest::Approx(l0).epsilon(1e-7));
            CHECK(p.omega == doctest::Approx(xi0 + l0 * t).epsilon(1e-7));
        }
    }
}

TEST_CASE("second-order SST estimate is exact on a linear chirp, first-order is not") {
    const double xi0 = 3.0, l0 = 5.0, t = 0.7;
    const auto v = companions_by_quadrature(gaussian_window(0, 1.5), xi0, l0, t, 7.5, 0.0);
    const SstEstimate s = sst_point(v, 7.5);
    REQUIRE(s.defined2);
    CHECK(s.omega2 == doctest::Approx(xi0 + l0 * t).epsilon(1e-7));
    CHECK(std::abs(s.omega1 - (xi0 + l0 * t)) > 0.1);
}

TEST_CASE("undefined estimates on a vanishing transform") {
    const std::array<cdouble, 6> zero{};
    CHECK_FALSE(reassign_point(zero, 1.0, 1.0).defined);
    CHECK_FALSE(sst_point(zero, 1.0).defined1);
}

TEST_CASE("nu policy") {
    CHECK(NuPolicy::relative(1e-3).resolve(50.0) == doctest::Approx(0.05));
    CHECK(NuPolicy::absolute(0.2).resolve(50.0) == doctest::Approx(0.2));
    CHECK(NuPolicy::relative(1e-3).resolve(0.0) > 0.0);
    CHECK_THROWS_AS(static_cast<void>(NuPolicy::relative(0.0).resolve(1.0)), ParameterError);
}

TEST_CASE("fused SCT agrees with the companion-transform path") {
    const Signal s = linear_chirp(40.0, 120, 4.0, 3.0);
    const TfcGrid g = grid_from_resolution(0.05, 120, 40.0);
    const WindowBank bank = make_window_bank(gaussian_window(2, 2.0), s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, bank, g, NuPolicy::relative(1e-3));
    const auto comp = companion_transforms(s, bank, g);
    const ReassignmentField f = reassignment_field(comp, NuPolicy::relative(1e-3));
    CHECK(f.nu == doctest::Approx(r.field.nu));
    REQUIRE(f.defined.size() == r.field.defined.size());
    for (std::size_t i = 0; i < f.defined.size(); ++i) {
        REQUIRE(f.defined.data()[i] == r.field.defined.data()[i]);
        if (f.defined.data()[i]) {
            CHECK(f.omega.data()[i] == doctest::Approx(r.field.omega.data()[i]).epsilon(1e-9));
            CHECK(f.mu.data()[i] == doctest::Approx(r.field.mu.data()[i]).epsilon(1e-9).scale(1.0));
        }
    }
    const SqueezeResult q = synchrosqueeze(comp[0], f);
    for (std::size_t i = 0; i < q.S.values.size(); ++i) {
        CHECK(std::abs(q.S.values.data()[i] - r.squeeze.S.values.data()[i]) <= 1e-9 * r.T.max_abs());
    }
}

TEST_CASE("squeeze conserves the per-frame complex sum") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N;
    std::vector<cdouble> x(90);
    for (auto& v : x) v = cdouble(N(rng), N(rng));
    const Signal s(x, 30.0);
    const TfcGrid g = grid_from_resolution(0.05, 90, 30.0);
    const WindowBank bank = make_window_bank(gaussian_window(2, 1.0), s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, bank, g);
    for (int n = 0; n < g.n_time; ++n) {
        const double scale = std::max(1.0, std::abs(r.squeeze.contributed[n]));
        CHECK(std::abs(r.squeeze.contributed[n] - r.squeeze.squeezed[n]) <= 1e-12 * scale);
    }
}

TEST_CASE("squeezed energy of a linear chirp concentrates at its IF and chirp rate") {
    const double fs = 50.0, xi0 = 5.0, l0 = 2.5;
    const Signal s = linear_chirp(fs, 300, xi0, l0);
    const TfcGrid g = grid_from_resolution(0.02, 300, fs);
    const WindowBank bank = make_window_bank(gaussian_window(0, 2.0), s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, bank, g);
    const int n = 150;
    const double tn = n / fs;
    double best = 0.0;
    int bj = 0, bc = 0;
    for (int c = 0; c < g.n_chirp(); ++c) {
        for (int j = 0; j < g.n_freq(); ++j) {
            const double a = std::abs(r.squeeze.S.values(c, j, n));
            if (a > best) {
                best = a;
                bj = j;
                bc = c;
            }
        }
    }
    CHECK(std::abs(g.freq_hz(bj) - (xi0 + l0 * tn)) <= g.freq_step_hz());
    CHECK(std::abs(g.chirp_hzps(bc) - l0) <= g.chirp_step_hzps());

    const auto nb = inverse_sct_neighborhood(r.field, r.T, n, xi0 + l0 * tn, l0, g.freq_step_hz(), g.chirp_step_hzps());
    CHECK_FALSE(nb.empty());
    for (const auto& e : nb) {
        CHECK(std::abs(r.field.omega(e.chirp_bin, e.freq_bin, n) - (xi0 + l0 * tn)) < g.freq_step_hz());
    }
    CHECK_THROWS_AS(inverse_sct_neighborhood(r.field, r.T, n, 1.0, 1.0, 0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(inverse_sct_neighborhood(r.field, r.T, -1, 1.0, 1.0, 1.0, 1.0), RangeError);
}
