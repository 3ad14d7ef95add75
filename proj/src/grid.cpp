#include "sct/grid.hpp"

#include <cmath>

#include "sct/error.hpp"

namespace sct {

TfcGrid grid_from_resolution(double alpha_sq, int n_time, double sample_rate_hz, double t0_s) {
    if (!(alpha_sq > 0.0 && alpha_sq <= 0.5)) throw ParameterError("alpha_sq must lie in (0, 0.5]");
    if (n_time < 1) throw ParameterError("grid needs at least one time frame");
    if (!(sample_rate_hz > 0.0)) throw ParameterError("sample rate must be positive");
    TfcGrid g;
    g.alpha_sq = alpha_sq;
    // Guard against 0.5 / 0.01 landing just below an integer.
    g.M = static_cast<int>(std::floor(0.5 / alpha_sq * (1.0 + 1e-12)));
    g.n_time = n_time;
    g.sample_rate_hz = sample_rate_hz;
    g.t0_s = t0_s;
    return g;
}

int nearest_freq_bin(const TfcGrid& grid, double freq_hz) noexcept {
    if (!std::isfinite(freq_hz)) return -1;
    const double j = std::round(freq_hz / grid.freq_step_hz());
    if (j < 0.0 || j > grid.M) return -1;
    return static_cast<int>(j);
}

int nearest_chirp_bin(const TfcGrid& grid, double chirp_hzps) noexcept {
    if (!std::isfinite(chirp_hzps)) return -1;
    const double l = std::round(chirp_hzps / grid.chirp_step_hzps());
    if (l < -(grid.M - 1) || l > grid.M) return -1;
    return grid.chirp_bin_of_level(static_cast<int>(l));
}

BinIndex physical_to_bin(const TfcGrid& grid, double freq_hz, double chirp_hzps) {
    const int j = nearest_freq_bin(grid, freq_hz);
    if (j < 0) throw RangeError("frequency outside the grid");
    const int c = nearest_chirp_bin(grid, chirp_hzps);
    if (c < 0) throw RangeError("chirp rate outside the grid");
    return {j, c};
}

std::pair<double, double> bin_to_physical(const TfcGrid& grid, BinIndex bin) {
    if (bin.freq < 0 || bin.freq > grid.M || bin.chirp < 0 || bin.chirp >= grid.n_chirp()) {
        throw RangeError("bin index outside the grid");
    }
    return {grid.freq_hz(bin.freq), grid.chirp_hzps(bin.chirp)};
}

}  // namespace sct
