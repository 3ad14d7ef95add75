#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sct/analytic.hpp"
#include "sct/error.hpp"
#include "sct/signal.hpp"
#include "sct/window.hpp"

using namespace sct;

TEST_CASE("window derivatives agree with central differences") {
    for (int n : {0, 1, 2, 3}) {
        const WindowFamily w = gaussian_window(n, 2.5);
        for (double x : {-0.9, -0.31, 0.0, 0.2, 0.77}) {
            const double h = 1e-5;
            const double d1 = (w.value(x + h) - w.value(x - h)) / (2 * h);
            const double d2 = (w.value(x + h) - 2 * w.value(x) + w.value(x - h)) / (h * h);
            CHECK(w.first_derivative(x) == doctest::Approx(d1).epsilon(1e-6).scale(1.0));
            CHECK(w.second_derivative(x) == doctest::Approx(d2).epsilon(1e-4).scale(1.0));
        }
    }
}

TEST_CASE("window bank companions are sampled on the centered axis") {
    const WindowBank b = make_window_bank(gaussian_window(1, 1.0), 3, 0.1);
    REQUIRE(b.length() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        const double x = (static_cast<double>(k) - 3) * 0.1;
        CHECK(b.h[k] == doctest::Approx(x * std::exp(-kPi * x * x)));
        CHECK(b.th[k] == doctest::Approx(x * b.h[k]));
        CHECK(b.t2h[k] == doctest::Approx(x * x * b.h[k]));
        CHECK(b.th_prime[k] == doctest::Approx(x * b.h_prime[k]));
    }
    CHECK_THROWS_AS(make_window_bank(gaussian_window(0, -1.0), 3, 0.1), ParameterError);
    CHECK_THROWS_AS(make_window_bank(gaussian_window(0, 1.0), 0, 0.1), ParameterError);
}

TEST_CASE("default half length truncates below 1e-8 of the peak") {
    const WindowFamily w = gaussian_window(0, 1.0);
    const int K = default_half_len(w, 0.01);
    CHECK(w.value(K * 0.01) < 1e-8);
    CHECK(K == 430);
}

TEST_CASE("closed-form window transform matches quadrature") {
    for (int n : {0, 1, 2}) {
        for (double alpha : {1.0, 8.0}) {
            const WindowFamily w = gaussian_window(n, alpha);
            const double L = 6.0 / std::sqrt(alpha);
            for (auto [xi, lam] : {std::pair{0.0, 0.0}, {1.3, 0.0}, {0.0, 4.0}, {-2.1, -7.5}, {0.7, 25.0}}) {
                const auto ref = oracle::integrate(
                    [&](double x) {
                        return w.value(x) * std::polar(1.0, -2 * oracle::pi * xi * x - oracle::pi * lam * x * x);
                    },
                    -L, L, 1e-13, 256);
                const cdouble got = g_check(w, xi, lam);
                CHECK(std::abs(got - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
            }
        }
    }
    CHECK_THROWS_AS(g_check(gaussian_window(3, 1.0), 0.0, 0.0), UnsupportedWindowError);
}

TEST_CASE("closed-form chirplet transform of a linear chirp matches quadrature") {
    const double xi0 = 5.0, l0 = 3.0, alpha = 2.0, t = 0.4;
    for (auto [xi, lam] : {std::pair{6.2, 3.0}, {4.0, -1.0}, {7.5, 9.0}}) {
        const auto ref = oracle::integrate(
            [&](double x) {
                const double s = x + t;
                const cdouble f = std::polar(1.0, 2 * oracle::pi * xi0 * s + oracle::pi * l0 * s * s);
                return f * std::exp(-oracle::pi * alpha * x * x) *
                       std::polar(1.0, -2 * oracle::pi * xi * x - oracle::pi * lam * x * x);
            },
            -5.0, 5.0, 1e-13, 512);
        const cdouble got = analytic_ct_linear_chirp(xi0, l0, alpha, t, xi, lam);
        CHECK(std::abs(got - ref) <= 1e-9);
    }
}

TEST_CASE("Fresnel integral matches quadrature and respects the uniform bound") {
    for (double lam : {0.5, 3.0, 40.0}) {
        const auto ref = oracle::integrate(
            [&](double x) { return std::polar(1.0, -oracle::pi * lam * x * x); }, -1.0, 2.0, 1e-13, 2048);
        CHECK(std::abs(fresnel_integral(-1.0, 2.0, lam) - ref) <= 1e-9);
    }
    for (double lam : {10.0, 100.0, 1000.0, 1e4}) {
        for (auto [a, b] : {std::pair{0.0, 1.0}, {-1.0, 1.0}, {0.3, 0.9}}) {
            CHECK(std::abs(fresnel_integral(a, b, lam)) <= kFresnelBoundConstant / std::sqrt(lam));
        }
    }
}
