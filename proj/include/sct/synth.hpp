#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "sct/signal.hpp"

namespace sct {

/// Generator for substream `stream` of a master seed. Distinct streams are
/// statistically independent and each is reproducible on its own.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

struct ComponentTruth {
    std::vector<cdouble> values;
    std::vector<double> amplitude;
    std::vector<double> phase;       // cycles
    std::vector<double> if_hz;       // phase'
    std::vector<double> chirp_hzps;  // phase''
};

struct SyntheticScene {
    double sample_rate_hz = 1.0;
    double t0_s = 0.0;
    std::vector<ComponentTruth> components;
    std::vector<cdouble> clean;
    std::vector<double> noise;  // real noise added to the observation
    std::vector<cdouble> mixed;
    double snr_db = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return mixed.size(); }
    [[nodiscard]] double time_at(std::size_t n) const noexcept {
        return t0_s + static_cast<double>(n) / sample_rate_hz;
    }
    [[nodiscard]] Signal signal() const { return Signal(mixed, sample_rate_hz, t0_s); }
    [[nodiscard]] Signal clean_signal() const { return Signal(clean, sample_rate_hz, t0_s); }
};

/// f1 = e^{2 pi i 4 x^2}, f2 = e^{2 pi i (-pi x^2 + (24 + 6 pi) x)} on [t_begin, t_end];
/// the instantaneous frequencies cross at (3 s, 24 Hz).
SyntheticScene crossing_chirp_pair(double fs = 100.0, double t_begin = 1.0, double t_end = 5.0);

/// Cumulative sum of n independent N(0, dt_s) increments, starting at 0.
std::vector<double> brownian_path(std::size_t n, double dt_s, std::mt19937_64& rng);

/// Brownian path on a grid extended by 6B on both sides, smoothed by a
/// normalized Gaussian of standard deviation B and cropped to [0, T_s].
/// Returns round(T_s / dt_s) + 1 samples.
std::vector<double> smoothed_brownian(double B, double T_s, double dt_s, std::mt19937_64& rng);
std::vector<double> smoothed_brownian(double B, double T_s, double dt_s, std::uint64_t seed);

/// zeta1 + zeta2 u + zeta3 u^2 + zeta4 Phi_{zeta5} / sup|Phi| + zeta6 * double integral of Phi_{zeta7} / sup|Phi|
/// on u in [0, T_s] with spacing dt_s.
struct RandomProcessSpec {
    std::array<double, 7> zeta{};
    double T_s = 1.0;
    double dt_s = 1e-3;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

struct ProcessRealization {
    std::vector<double> value;
    std::vector<double> d1;  // first derivative, exact in the polynomial and integral terms
    std::vector<double> d2;
};

ProcessRealization random_process(const RandomProcessSpec& spec);

struct NoiseResult {
    std::vector<double> noise;
    double snr_db = 0.0;  // +infinity when the noise is identically zero
};

/// i.i.d. Student-t(dof) samples times `scale`, and the SNR
/// 20 log10(std(Re clean) / std(noise)). Throws ParameterError unless dof > 2.
NoiseResult student_t_noise(const std::vector<cdouble>& clean, double dof, double scale, std::uint64_t seed,
                            std::uint64_t stream = 0);

/// Options of the two-component scene with random amplitudes and phases.
struct BrownianSceneSpec {
    double T_s = 10.0;
    double fs = 100.0;
    std::array<double, 7> amp{2, 0, 0, 1, 200, 0, 0};
    std::array<double, 7> phase1{0, 1, 4.5, 0, 0, 0.2, 400};
    std::array<double, 7> phase2{0, 12, -4, 0, 0, 0.25, 300};
    double noise_dof = 4.0;
    double noise_scale = 1.0;
};

/// Two-component scene with smoothed-Brownian amplitudes and phases plus
/// Student-t noise. The processes are generated on normalized time
/// u = x / T in [0, 1] with bandwidths zeta5, zeta7 counted in samples, and
/// phi(x) = T * Psi(x / T), so phi'(x) = Psi'(x / T) is in Hz.
SyntheticScene brownian_scene(const BrownianSceneSpec& spec, std::uint64_t seed);

}  // namespace sct
