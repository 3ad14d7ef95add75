#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sct/config.hpp"
#include "sct/reconstruct.hpp"
#include "sct/synth.hpp"

namespace sct {

/// Everything a ridge-and-reconstruct run needs besides the signal.
struct ExperimentSetup {
    double alpha_sq = 0.005;
    WindowFamily ridge_window = gaussian_window(2, 8.0);
    double recon_alpha_w = 8.0;
    NuPolicy nu = NuPolicy::relative(1e-4);
    RidgeParams ridge{2, 0.99995, 15.0, 1, 50, true, 0.01};
    PhaseConvention convention = PhaseConvention::centered;
    /// Half-width of the SST2 integration band; 0 picks sqrt(2 alpha_w / pi),
    /// where the window spectrum has fallen to e^{-2}.
    double sst_delta_hz = 0.0;

    [[nodiscard]] double resolved_sst_delta() const;
};

ExperimentSetup setup_from_config(const RunConfig& cfg);

/// Settings for the smoothed-Brownian study: the components drift by only a
/// few Hz/s, so the ridge window is wider in time than for the crossing pair.
ExperimentSetup brownian_study_setup();

/// perm[c] = index of the ridge assigned to truth component c, chosen to
/// minimise the summed mean |omega - IF| over all assignments.
std::vector<int> match_ridges(const RidgeSet& ridges, const std::vector<ComponentTruth>& truth,
                              std::span<const std::uint8_t> frame_mask = {});

struct CrossingReport {
    SyntheticScene scene;
    RidgeSet ridges;
    std::vector<int> ridge_of_component;
    ReconstructedModes sct;
    std::vector<std::vector<cdouble>> sst2;  // per component, band around the true IF
    double sst_delta_hz = 0.0;
    // Per component in scene order (f1 then f2); real parts.
    std::vector<double> sct_I1, sct_I2, sst_I1, sst_I2;
};

/// Two crossing linear chirps: ridges from the SCT with the ridge window,
/// reconstruction with g0, and the SST2 band baseline around the true IFs.
/// I1 = [2.5, 3.5], I2 = the rest of [1, 5].
CrossingReport run_crossing_experiment(const ExperimentSetup& setup);

struct RealizationReport {
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    std::vector<double> rel_err_sct;  // per component, from SCT ridges
    std::vector<double> rel_err_ct;   // per component, from CT ridges
    std::vector<double> rel_err_sst;  // per component, SST2 band around the true IF
    std::vector<double> ot_sct;
    std::vector<double> ot_ct;
    std::vector<double> ot_sst;       // SST2 per-frame distribution within the band
};

/// One realization of the two-component smoothed-Brownian scene. Errors and
/// OT distances are evaluated on [eval_begin, eval_end].
RealizationReport run_brownian_realization(const BrownianSceneSpec& spec, std::uint64_t seed,
                                           const ExperimentSetup& setup, double eval_begin = 1.0,
                                           double eval_end = 9.0);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};
MeanSd mean_sd(std::span<const double> x);

/// Mean +- SD table over realizations, one row per method.
std::string compare_table_csv(const std::vector<RealizationReport>& reports);

}  // namespace sct
