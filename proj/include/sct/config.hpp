#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sct/kernels.hpp"
#include "sct/reassign.hpp"
#include "sct/ridge.hpp"
#include "sct/window.hpp"

namespace sct {

/// Run parameters shared by the CLI commands. Text form is one `key = value`
/// per line, `#` starts a comment. Recognized keys:
///   window_n, alpha_w, half_len (integer or "auto"), alpha_sq,
///   nu_mode (relative | absolute), nu, q, sigma_pct, K, seed, restarts,
///   convention (centered | left_edge), recon_alpha_w
struct RunConfig {
    WindowFamily window = gaussian_window(2, 8.0);
    int half_len = 0;  // 0 = default_half_len
    double alpha_sq = 0.005;
    NuPolicy nu = NuPolicy::relative(1e-4);
    double q = 0.99995;
    double sigma_pct = 15.0;
    int K = 2;
    std::uint64_t seed = 1;
    int restarts = 50;
    PhaseConvention convention = PhaseConvention::centered;
    double recon_alpha_w = 8.0;  // window g0 used for reconstruction

    /// Throws ParameterError on any out-of-range value.
    void validate() const;

    [[nodiscard]] WindowBank window_bank(double dt_s) const;
    [[nodiscard]] WindowBank recon_bank(double dt_s) const;
    [[nodiscard]] RidgeParams ridge_params() const;
    [[nodiscard]] std::string to_text() const;
};

/// Applies `key = value` lines on top of `base`. Throws ParameterError on an
/// unknown key or a malformed value (the message names the line).
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
/// Applies a single assignment.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace sct
