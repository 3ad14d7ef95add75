#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "sct/ridge.hpp"
#include "sct/window.hpp"

namespace sct {

/// Chirplet transform of the signal at sample n and an arbitrary (xi, lambda),
/// by a direct centered windowed sum over the bank's window h.
cdouble ct_at(const Signal& signal, const WindowBank& bank, int n, double xi_hz, double lambda_hzps);

struct MixingSystem {
    Eigen::MatrixXcd A;      // a_ij = g_check(omega_i - omega_j, mu_i - mu_j)
    Eigen::VectorXcd X_hat;  // CT at the ridge points
    double condition = 0.0;  // 2-norm condition number, infinite when singular
};

MixingSystem build_mixing_system(const Signal& signal, const WindowBank& bank, int n,
                                 std::span<const double> omega_hz, std::span<const double> mu_hzps);

struct ReconstructedModes {
    std::vector<std::vector<cdouble>> modes;  // K x signal length
    std::vector<std::uint8_t> valid;
    std::vector<std::uint8_t> degraded;
    double sample_rate_hz = 1.0;
    double t0_s = 0.0;
};

/// Frames whose condition number exceeds this use the least-squares solution.
inline constexpr double kConditionLimit = 1e6;

/// Ridge values at a time, interpolated linearly between ridge frames and held
/// constant outside. Returns false if any curve has no valid sample.
bool ridge_values_at(const RidgeSet& ridges, double t_s, std::vector<double>& omega_hz, std::vector<double>& mu_hzps);

/// Solves the K x K mixing system at every signal sample. Ridges may live on a
/// different (for example decimated) time axis. Throws ReconstructionError if
/// every frame is degraded or invalid.
ReconstructedModes reconstruct_modes(const Signal& signal, const RidgeSet& ridges, const WindowBank& bank);

/// (1/g(0)) * sum over |xi_j - ridge| <= delta of S(j, n) * dxi, per frame.
/// Throws UnsupportedWindowError if g(0) = 0.
std::vector<cdouble> sst_band_reconstruct(const TfMatrix& S, std::span<const double> ridge_hz, double delta_hz,
                                          const WindowFamily& family);

}  // namespace sct
