#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sct/signal.hpp"
#include "sct/volume.hpp"

namespace sct {

/// Where the phase origin of each atom sits. `centered` measures the
/// modulation and chirp phases from the frame time t (u = k - K_w);
/// `left_edge` measures them from the first window tap (u = k).
enum class PhaseConvention { centered, left_edge };

/// One discrete chirplet evaluation problem: every window in `windows` is
/// applied to `samples` at every frame, every frequency bin j in [0, M] and
/// every chirp level in `levels`.
struct KernelRequest {
    std::span<const cdouble> samples;
    std::vector<std::span<const double>> windows;
    int half_len = 0;
    double dt_s = 1.0;
    int M = 1;
    std::vector<int> levels;
    PhaseConvention convention = PhaseConvention::centered;
};

/// Precomputed phase tables for a fixed (M, K_w, levels, convention).
///
/// Each frame is evaluated by folding the chirped, windowed taps into 2M
/// residue classes of u mod 2M (the modulation phase is 2M-periodic in u)
/// and multiplying the folded block by the 2M x (M+1) Fourier matrix.
/// The result is algebraically identical to the direct triple sum.
class CtPlan {
public:
    CtPlan(int M, int half_len, std::vector<int> levels, PhaseConvention convention, double dt_s);

    struct Workspace {
        std::vector<cdouble> taps;    // n_windows x L
        std::vector<cdouble> folded;  // (n_windows * n_levels) x 2M
    };

    [[nodiscard]] int M() const noexcept { return M_; }
    [[nodiscard]] int half_len() const noexcept { return half_len_; }
    [[nodiscard]] int n_levels() const noexcept { return static_cast<int>(levels_.size()); }
    [[nodiscard]] const std::vector<int>& levels() const noexcept { return levels_; }

    /// Writes the frame `n` block to `out`, laid out [window][level][freq].
    void evaluate_frame(std::span<const cdouble> x, const std::vector<std::span<const double>>& windows, int n,
                        std::span<cdouble> out, Workspace& ws) const;

private:
    int M_;
    int half_len_;
    std::vector<int> levels_;
    PhaseConvention convention_;
    double dt_s_;
    std::vector<int> bucket_;          // u mod 2M per tap
    std::vector<cdouble> chirp_;       // n_levels x L
    std::vector<cdouble> fourier_;     // 2M x (M+1), row major
};

/// Modulation phase e^{-2 pi i p / (2M)} for p already reduced mod 2M.
cdouble modulation_phase(long long p, int M);
/// Chirp phase e^{-pi i p / (4M^2)} for p already reduced mod 8M^2.
cdouble chirp_phase(long long p, int M);
/// Offset u of tap k (0-based) under a convention.
inline long long tap_offset(int k, int half_len, PhaseConvention c) noexcept {
    return c == PhaseConvention::centered ? static_cast<long long>(k) - half_len : static_cast<long long>(k);
}
inline long long positive_mod(long long a, long long m) noexcept {
    const long long r = a % m;
    return r < 0 ? r + m : r;
}

/// Serial direct summation, one accumulator per output entry. Kept as the
/// reference the parallel kernel is tested against.
std::vector<Volume<cdouble>> ct_kernel_reference(const KernelRequest& req);

/// Frame-parallel (OpenMP) evaluation through CtPlan.
std::vector<Volume<cdouble>> ct_kernel_parallel(const KernelRequest& req);

}  // namespace sct
