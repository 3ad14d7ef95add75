#pragma once

#include <utility>

namespace sct {

/// Discrete time-frequency-chirp grid.
///
/// Storage indices are zero based: frequency bin j in [0, M] sits at
/// j / (2M) * fs Hz, chirp bin c in [0, 2M) carries the signed level
/// l = c - (M - 1) in [-(M - 1), M] and sits at l * fs^2 / (4 M^2) Hz/s.
struct TfcGrid {
    double alpha_sq = 0.0;
    int M = 0;
    int n_time = 0;
    double sample_rate_hz = 1.0;
    double t0_s = 0.0;

    [[nodiscard]] int n_freq() const noexcept { return M + 1; }
    [[nodiscard]] int n_chirp() const noexcept { return 2 * M; }
    [[nodiscard]] int chirp_level(int c) const noexcept { return c - (M - 1); }
    [[nodiscard]] int chirp_bin_of_level(int l) const noexcept { return l + (M - 1); }

    [[nodiscard]] double freq_step_hz() const noexcept { return sample_rate_hz / (2.0 * M); }
    [[nodiscard]] double chirp_step_hzps() const noexcept {
        return sample_rate_hz * sample_rate_hz / (4.0 * M * static_cast<double>(M));
    }
    [[nodiscard]] double freq_hz(int j) const noexcept { return j * freq_step_hz(); }
    [[nodiscard]] double chirp_hzps(int c) const noexcept { return chirp_level(c) * chirp_step_hzps(); }
    [[nodiscard]] double time_s(int n) const noexcept { return t0_s + n / sample_rate_hz; }

    [[nodiscard]] bool same_shape(const TfcGrid& other) const noexcept {
        return M == other.M && n_time == other.n_time && sample_rate_hz == other.sample_rate_hz;
    }
};

/// M = floor(0.5 / alpha_sq). Throws ParameterError unless 0 < alpha_sq <= 0.5.
TfcGrid grid_from_resolution(double alpha_sq, int n_time, double sample_rate_hz, double t0_s = 0.0);

struct BinIndex {
    int freq = 0;
    int chirp = 0;
    bool operator==(const BinIndex&) const = default;
};

/// Nearest bin, rounding half away from zero. Throws RangeError outside the grid.
BinIndex physical_to_bin(const TfcGrid& grid, double freq_hz, double chirp_hzps);

/// Returns (frequency Hz, chirp rate Hz/s) of a bin center.
std::pair<double, double> bin_to_physical(const TfcGrid& grid, BinIndex bin);

/// Nearest frequency bin, or -1 if outside [0, M].
int nearest_freq_bin(const TfcGrid& grid, double freq_hz) noexcept;
/// Nearest chirp bin, or -1 if the level falls outside [-(M-1), M].
int nearest_chirp_bin(const TfcGrid& grid, double chirp_hzps) noexcept;

}  // namespace sct
