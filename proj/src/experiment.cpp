#include "sct/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sct/chirplet.hpp"
#include "sct/error.hpp"
#include "sct/io.hpp"
#include "sct/metrics.hpp"
#include "sct/reassign.hpp"
#include "sct/sst.hpp"

namespace sct {

double ExperimentSetup::resolved_sst_delta() const {
    return sst_delta_hz > 0.0 ? sst_delta_hz : std::sqrt(2.0 * recon_alpha_w / kPi);
}

ExperimentSetup setup_from_config(const RunConfig& cfg) {
    cfg.validate();
    ExperimentSetup s;
    s.alpha_sq = cfg.alpha_sq;
    s.ridge_window = cfg.window;
    s.recon_alpha_w = cfg.recon_alpha_w;
    s.nu = cfg.nu;
    s.ridge = cfg.ridge_params();
    s.convention = cfg.convention;
    return s;
}

ExperimentSetup brownian_study_setup() {
    ExperimentSetup s;
    s.ridge_window = gaussian_window(2, 1.0);
    s.recon_alpha_w = 2.0;
    return s;
}

std::vector<int> match_ridges(const RidgeSet& ridges, const std::vector<ComponentTruth>& truth,
                              std::span<const std::uint8_t> frame_mask) {
    const int K = ridges.K;
    if (static_cast<int>(truth.size()) != K) throw ShapeError("ridge count differs from the number of components");
    if (K > 8) throw ParameterError("ridge matching enumerates permutations; K must be <= 8");
    const std::size_t N = ridges.times_s.size();
    // cost(k, c): mean |omega_k - IF_c| over masked frames.
    std::vector<double> cost(static_cast<std::size_t>(K) * K, 0.0);
    for (int k = 0; k < K; ++k) {
        for (int c = 0; c < K; ++c) {
            if (truth[c].if_hz.size() != N) throw ShapeError("truth and ridges cover different frames");
            double s = 0.0;
            std::size_t m = 0;
            for (std::size_t n = 0; n < N; ++n) {
                if (!frame_mask.empty() && !frame_mask[n]) continue;
                if (!ridges.curves[k][n].valid) continue;
                s += std::abs(ridges.curves[k][n].omega_hz - truth[c].if_hz[n]);
                ++m;
            }
            cost[static_cast<std::size_t>(k) * K + c] = m ? s / static_cast<double>(m) : 0.0;
        }
    }
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (int c = 0; c < K; ++c) s += cost[static_cast<std::size_t>(perm[c]) * K + c];
        if (s < best_cost) {
            best_cost = s;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

std::vector<cdouble> values_of(const ComponentTruth& c) { return c.values; }

std::vector<std::uint8_t> complement(std::vector<std::uint8_t> m, const std::vector<std::uint8_t>& within) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint8_t>(within[i] && !m[i]);
    return m;
}

/// Per-frame |S|-weighted frequency distribution of an SST inside the band
/// around a curve.
std::vector<FrameDistribution> band_distribution(const TfMatrix& S, std::span<const double> curve_hz, double delta) {
    std::vector<FrameDistribution> out(S.n_time);
    for (int n = 0; n < S.n_time; ++n) {
        for (int j = 0; j < S.n_freq; ++j) {
            const double xi = S.grid.freq_hz(j);
            const double w = std::abs(S(j, n));
            if (std::abs(xi - curve_hz[n]) <= delta && w > 0.0) {
                out[n].positions.push_back(xi);
                out[n].weights.push_back(w);
            }
        }
    }
    return out;
}

std::vector<double> ridge_omega(const RidgeSet& r, int k) {
    std::vector<double> w(r.curves[k].size());
    for (std::size_t n = 0; n < w.size(); ++n) {
        w[n] = r.curves[k][n].valid ? r.curves[k][n].omega_hz : std::numeric_limits<double>::quiet_NaN();
    }
    return w;
}

}  // namespace

CrossingReport run_crossing_experiment(const ExperimentSetup& setup) {
    CrossingReport rep;
    rep.scene = crossing_chirp_pair();
    const Signal s = rep.scene.signal();
    const double fs = s.sample_rate_hz();
    const TfcGrid grid = grid_from_resolution(setup.alpha_sq, static_cast<int>(s.size()), fs, s.t0_s());
    const WindowBank ridge_bank = make_window_bank(setup.ridge_window, s.dt_s());
    const WindowBank recon_bank = make_window_bank(gaussian_window(0, setup.recon_alpha_w), s.dt_s());

    {
        const SctResult sct = synchrosqueezed_chirplet_transform(s, ridge_bank, grid, setup.nu, setup.convention);
        rep.ridges = extract_ridges(sct.squeeze, setup.ridge);
    }
    rep.ridge_of_component = match_ridges(rep.ridges, rep.scene.components);
    rep.sct = reconstruct_modes(s, rep.ridges, recon_bank);

    const SstResult sst = synchrosqueezed_stft(s, recon_bank, grid, setup.nu, setup.convention);
    rep.sst_delta_hz = setup.resolved_sst_delta();

    const std::size_t N = s.size();
    const auto in_I1 = interval_mask(N, fs, s.t0_s(), 2.5, 3.5);
    const auto in_span = interval_mask(N, fs, s.t0_s(), 1.0, 5.0);
    const auto in_I2 = complement(in_I1, in_span);
    for (std::size_t c = 0; c < rep.scene.components.size(); ++c) {
        const auto truth = values_of(rep.scene.components[c]);
        const auto& est = rep.sct.modes[rep.ridge_of_component[c]];
        rep.sct_I1.push_back(rel_error(est, truth, in_I1));
        rep.sct_I2.push_back(rel_error(est, truth, in_I2));
        rep.sst2.push_back(sst_band_reconstruct(sst.S2, rep.scene.components[c].if_hz, rep.sst_delta_hz,
                                                recon_bank.family));
        rep.sst_I1.push_back(rel_error(rep.sst2.back(), truth, in_I1));
        rep.sst_I2.push_back(rel_error(rep.sst2.back(), truth, in_I2));
    }
    return rep;
}

RealizationReport run_brownian_realization(const BrownianSceneSpec& spec, std::uint64_t seed,
                                           const ExperimentSetup& setup, double eval_begin, double eval_end) {
    RealizationReport rep;
    rep.seed = seed;
    const SyntheticScene scene = brownian_scene(spec, seed);
    rep.snr_db = scene.snr_db;
    const Signal s = scene.signal();
    const double fs = s.sample_rate_hz();
    const std::size_t N = s.size();
    const TfcGrid grid = grid_from_resolution(setup.alpha_sq, static_cast<int>(N), fs, s.t0_s());
    const WindowBank ridge_bank = make_window_bank(setup.ridge_window, s.dt_s());
    const WindowBank recon_bank = make_window_bank(gaussian_window(0, setup.recon_alpha_w), s.dt_s());
    const auto mask = interval_mask(N, fs, s.t0_s(), eval_begin, eval_end);

    RidgeSet sct_ridges;
    RidgeSet ct_ridges;
    {
        const SctResult sct = synchrosqueezed_chirplet_transform(s, ridge_bank, grid, setup.nu, setup.convention);
        sct_ridges = extract_ridges(sct.squeeze, setup.ridge);
        RidgeParams ct_params = setup.ridge;
        ct_params.use_refined = false;
        ct_ridges = extract_ridges(sct.T, ct_params);
    }
    const auto perm_sct = match_ridges(sct_ridges, scene.components, mask);
    const auto perm_ct = match_ridges(ct_ridges, scene.components, mask);
    const ReconstructedModes rec_sct = reconstruct_modes(s, sct_ridges, recon_bank);
    const ReconstructedModes rec_ct = reconstruct_modes(s, ct_ridges, recon_bank);
    const SstResult sst = synchrosqueezed_stft(s, recon_bank, grid, setup.nu, setup.convention);
    const double delta = setup.resolved_sst_delta();

    for (std::size_t c = 0; c < scene.components.size(); ++c) {
        const auto& truth = scene.components[c];
        rep.rel_err_sct.push_back(rel_error(rec_sct.modes[perm_sct[c]], truth.values, mask));
        rep.rel_err_ct.push_back(rel_error(rec_ct.modes[perm_ct[c]], truth.values, mask));
        const auto band = sst_band_reconstruct(sst.S2, truth.if_hz, delta, recon_bank.family);
        rep.rel_err_sst.push_back(rel_error(band, truth.values, mask));
        rep.ot_sct.push_back(ot_if_metric(ridge_omega(sct_ridges, perm_sct[c]), truth.if_hz, mask));
        rep.ot_ct.push_back(ot_if_metric(ridge_omega(ct_ridges, perm_ct[c]), truth.if_hz, mask));
        const auto dist = band_distribution(sst.S2, truth.if_hz, delta);
        rep.ot_sst.push_back(ot_if_metric(dist, truth.if_hz, mask));
    }
    return rep;
}

MeanSd mean_sd(std::span<const double> x) {
    MeanSd r;
    if (x.empty()) return r;
    r.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    if (x.size() > 1) {
        double ss = 0.0;
        for (double v : x) ss += (v - r.mean) * (v - r.mean);
        r.sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
    }
    return r;
}

std::string compare_table_csv(const std::vector<RealizationReport>& reports) {
    if (reports.empty()) throw ParameterError("no realizations to tabulate");
    const std::size_t K = reports.front().rel_err_sct.size();
    std::vector<std::string> cols{"method"};
    for (std::size_t k = 1; k <= K; ++k) {
        const std::string s = std::to_string(k);
        cols.insert(cols.end(), {"relerr" + s + "_mean", "relerr" + s + "_sd", "ot" + s + "_mean_hz", "ot" + s + "_sd_hz"});
    }
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    auto row = [&](const char* name, auto rel, auto ot) {
        out += name;
        for (std::size_t k = 0; k < K; ++k) {
            std::vector<double> a, b;
            for (const auto& r : reports) {
                a.push_back((r.*rel)[k]);
                b.push_back((r.*ot)[k]);
            }
            const MeanSd ma = mean_sd(a);
            const MeanSd mb = mean_sd(b);
            for (double v : {ma.mean, ma.sd, mb.mean, mb.sd}) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), ",%.6g", v);
                out += buf;
            }
        }
        out += '\n';
    };
    row("SST2", &RealizationReport::rel_err_sst, &RealizationReport::ot_sst);
    row("CT", &RealizationReport::rel_err_ct, &RealizationReport::ot_ct);
    row("SCT", &RealizationReport::rel_err_sct, &RealizationReport::ot_sct);
    return out;
}

}  // namespace sct
