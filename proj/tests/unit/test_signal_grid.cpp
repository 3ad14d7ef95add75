#include <doctest.h>

#include <cmath>
#include <limits>

#include "sct/error.hpp"
#include "sct/grid.hpp"
#include "sct/signal.hpp"

using namespace sct;

TEST_CASE("signal rejects bad construction") {
    CHECK_THROWS_AS(Signal({}, 100.0), ParameterError);
    CHECK_THROWS_AS(Signal({cdouble{1, 0}}, 0.0), ParameterError);
    CHECK_THROWS_AS(Signal({cdouble{std::numeric_limits<double>::quiet_NaN(), 0}}, 1.0), ParameterError);
    const Signal s({cdouble{1, 0}, cdouble{2, 0}}, 4.0, 1.5);
    CHECK(s.time_at(1) == doctest::Approx(1.75));
    CHECK(s.dt_s() == doctest::Approx(0.25));
}

TEST_CASE("decimate keeps every k-th sample and the time axis") {
    std::vector<cdouble> x(20);
    for (int n = 0; n < 20; ++n) x[n] = cdouble(n, -n);
    const Signal d = decimate(Signal(x, 10.0, 2.0), 4);
    REQUIRE(d.size() == 5);
    CHECK(d[3] == cdouble(12, -12));
    CHECK(d.sample_rate_hz() == doctest::Approx(2.5));
    CHECK(d.t0_s() == doctest::Approx(2.0));
    CHECK_THROWS_AS(decimate(Signal(x, 10.0), 0), ParameterError);
}

TEST_CASE("low-pass decimation suppresses a tone above the new Nyquist rate") {
    const double fs = 100.0;
    std::vector<cdouble> lo(2000), hi(2000);
    for (int n = 0; n < 2000; ++n) {
        lo[n] = std::polar(1.0, 2 * kPi * 3.0 * n / fs);
        hi[n] = std::polar(1.0, 2 * kPi * 40.0 * n / fs);
    }
    const Signal dl = decimate(Signal(lo, fs), 4, true);
    const Signal dh = decimate(Signal(hi, fs), 4, true);
    double el = 0, eh = 0;
    for (std::size_t n = 100; n < dl.size() - 100; ++n) {
        el += std::norm(dl[n]);
        eh += std::norm(dh[n]);
    }
    CHECK(eh < 1e-3 * el);
}

TEST_CASE("grid geometry") {
    const TfcGrid g = grid_from_resolution(0.005, 50, 100.0, 1.0);
    CHECK(g.M == 100);
    CHECK(g.n_freq() == 101);
    CHECK(g.n_chirp() == 200);
    CHECK(g.freq_step_hz() == doctest::Approx(0.5));
    CHECK(g.chirp_step_hzps() == doctest::Approx(0.25));
    CHECK(g.chirp_level(0) == -99);
    CHECK(g.chirp_level(199) == 100);
    CHECK(g.time_s(10) == doctest::Approx(1.1));
    CHECK_THROWS_AS(grid_from_resolution(0.0, 10, 100.0), ParameterError);
    CHECK_THROWS_AS(grid_from_resolution(0.6, 10, 100.0), ParameterError);
    CHECK_THROWS_AS(grid_from_resolution(0.01, 0, 100.0), ParameterError);
}

TEST_CASE("physical and bin coordinates round trip") {
    const TfcGrid g = grid_from_resolution(0.01, 10, 100.0);
    for (int j = 0; j < g.n_freq(); j += 7) {
        for (int c = 0; c < g.n_chirp(); c += 9) {
            const auto [f, l] = bin_to_physical(g, {j, c});
            CHECK(physical_to_bin(g, f + 0.3 * g.freq_step_hz(), l - 0.3 * g.chirp_step_hzps()) == BinIndex{j, c});
        }
    }
    CHECK_THROWS_AS(physical_to_bin(g, 51.0, 0.0), RangeError);
    CHECK_THROWS_AS(physical_to_bin(g, 10.0, -50.0 * g.chirp_step_hzps()), RangeError);
    CHECK_THROWS_AS(bin_to_physical(g, {0, g.n_chirp()}), RangeError);
    CHECK(nearest_freq_bin(g, -1.0) == -1);
    CHECK(nearest_chirp_bin(g, 0.0) == g.chirp_bin_of_level(0));
}
