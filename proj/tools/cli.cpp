#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include "sct/chirplet.hpp"
#include "sct/config.hpp"
#include "sct/error.hpp"
#include "sct/experiment.hpp"
#include "sct/io.hpp"
#include "sct/metrics.hpp"
#include "sct/reconstruct.hpp"
#include "sct/synth.hpp"

namespace sct::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config_path;
    std::vector<std::string> sets;
    double fs = 100.0;
    double t0 = 0.0;
    int downsample = 1;
    bool lowpass = false;
    long long seed = -1;

    void add_to(CLI::App* app) {
        app->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        app->add_option("--set", sets, "override one config key, key=value (repeatable)");
        app->add_option("--fs", fs, "sample rate in Hz for raw and CSV input")->check(CLI::PositiveNumber);
        app->add_option("--t0", t0, "time of the first sample in seconds");
        app->add_option("--downsample", downsample, "keep every k-th sample")->check(CLI::PositiveNumber);
        app->add_flag("--lowpass", lowpass, "low-pass filter before downsampling");
        app->add_option("--seed", seed, "seed override")->check(CLI::NonNegativeNumber);
    }

    RunConfig config() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ParameterError("--set expects key=value, got '" + s + "'");
            set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.validate();
        return cfg;
    }

    Signal signal(const std::string& path) const {
        Signal s = read_signal(path, fs, t0);
        return downsample > 1 ? decimate(s, downsample, lowpass) : s;
    }
};

TfcGrid grid_for(const RunConfig& cfg, const Signal& s) {
    return grid_from_resolution(cfg.alpha_sq, static_cast<int>(s.size()), s.sample_rate_hz(), s.t0_s());
}

int frame_at(const TfcGrid& g, double t_s) {
    const double n = std::round((t_s - g.t0_s) * g.sample_rate_hz);
    if (n < 0 || n >= g.n_time) throw RangeError("slice time outside the signal");
    return static_cast<int>(n);
}

/// Frequency by chirp-rate slice of |tensor| at one frame.
std::string slice_csv(const TfcTensor& T, int n) {
    CsvWriter w({"freq_hz", "chirp_hzps", "abs"});
    for (int c = 0; c < T.grid.n_chirp(); ++c) {
        for (int j = 0; j < T.grid.n_freq(); ++j) w.row({T.grid.freq_hz(j), T.grid.chirp_hzps(c), std::abs(T.values(c, j, n))});
    }
    return w.str();
}

std::string tf_csv(const TfMagnitude& m) {
    CsvWriter w({"t_s", "freq_hz", "value"});
    for (int n = 0; n < m.n_time; ++n) {
        for (int j = 0; j < m.n_freq; ++j) w.row({m.grid.time_s(n), m.grid.freq_hz(j), m(j, n)});
    }
    return w.str();
}

std::string modes_csv(const ReconstructedModes& r) {
    std::vector<std::string> cols{"t_s"};
    for (std::size_t k = 1; k <= r.modes.size(); ++k) {
        cols.push_back("re_" + std::to_string(k));
        cols.push_back("im_" + std::to_string(k));
    }
    cols.emplace_back("degraded");
    CsvWriter w(cols);
    const std::size_t N = r.modes.empty() ? 0 : r.modes.front().size();
    for (std::size_t n = 0; n < N; ++n) {
        std::vector<double> row{r.t0_s + static_cast<double>(n) / r.sample_rate_hz};
        for (const auto& m : r.modes) {
            row.push_back(m[n].real());
            row.push_back(m[n].imag());
        }
        row.push_back(r.degraded[n]);
        w.row(row);
    }
    return w.str();
}

/// Writes every (path, contents) pair only after all contents exist, so a
/// failing command leaves no partial outputs.
void commit(const std::vector<std::pair<std::string, std::string>>& files) {
    for (const auto& [path, contents] : files) write_file_atomic(path, contents);
}

}  // namespace

std::string ridges_csv(const RidgeSet& ridges) {
    std::vector<std::string> cols{"t_s"};
    for (int k = 1; k <= ridges.K; ++k) {
        const std::string s = std::to_string(k);
        cols.insert(cols.end(), {"omega_" + s + "_hz", "mu_" + s + "_hzps", "valid_" + s});
    }
    CsvWriter w(cols);
    for (std::size_t n = 0; n < ridges.times_s.size(); ++n) {
        std::vector<double> row{ridges.times_s[n]};
        for (int k = 0; k < ridges.K; ++k) {
            const auto& c = ridges.curves[k][n];
            row.insert(row.end(), {c.omega_hz, c.mu_hzps, c.valid ? 1.0 : 0.0});
        }
        w.row(row);
    }
    return w.str();
}

RidgeSet parse_ridges_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty ridge file");
    const auto n_cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',') + 1);
    if (n_cols < 4 || (n_cols - 1) % 3 != 0) throw FormatError("ridge header must be t_s then triples of columns");
    RidgeSet r;
    r.K = static_cast<int>((n_cols - 1) / 3);
    r.curves.resize(r.K);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> v;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            double x = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (res.ec != std::errc{}) throw FormatError("bad number on ridge line " + std::to_string(line_no));
            v.push_back(x);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (v.size() != n_cols) throw FormatError("wrong column count on ridge line " + std::to_string(line_no));
        r.times_s.push_back(v[0]);
        for (int k = 0; k < r.K; ++k) {
            RidgeSample s;
            s.omega_hz = v[1 + 3 * k];
            s.mu_hzps = v[2 + 3 * k];
            s.valid = v[3 + 3 * k] != 0.0;
            s.observed = s.valid;
            r.curves[k].push_back(s);
        }
    }
    if (r.times_s.empty()) throw FormatError("ridge file has no rows");
    return r;
}

namespace {

int cmd_transform(const Common& c, const std::string& input, const std::string& out, const std::string& dtype,
                  double slice_t, const std::string& slice_path, const std::string& tf_path, std::ostream& log) {
    const RunConfig cfg = c.config();
    const Signal s = c.signal(input);
    const TfcGrid g = grid_for(cfg, s);
    const WindowBank bank = cfg.window_bank(s.dt_s());
    const TfcTensor T = chirplet_transform(s, bank.h, g, cfg.convention);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back(out, encode_tensor(T, dtype == "c64" ? TensorDtype::complex64 : TensorDtype::complex128));
    if (!slice_path.empty()) files.emplace_back(slice_path, slice_csv(T, frame_at(g, slice_t)));
    if (!tf_path.empty()) files.emplace_back(tf_path, tf_csv(project_tfc_to_tf(T)));
    commit(files);
    log << "transform: " << g.n_chirp() << " x " << g.n_freq() << " x " << g.n_time << " -> " << out << '\n';
    return kOk;
}

int cmd_sct(const Common& c, const std::string& input, const std::string& out, const std::string& summary,
            double slice_t, const std::string& slice_path, const std::string& tf_path, std::ostream& log) {
    const RunConfig cfg = c.config();
    const Signal s = c.signal(input);
    const TfcGrid g = grid_for(cfg, s);
    const WindowBank bank = cfg.window_bank(s.dt_s());
    const SctResult r = synchrosqueezed_chirplet_transform(s, bank, g, cfg.nu, cfg.convention);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back(out, encode_tensor(r.squeeze.S));
    if (!summary.empty()) {
        CsvWriter w({"t_s", "contributed_re", "contributed_im", "squeezed_re", "squeezed_im", "mass_rel_residual"});
        for (int n = 0; n < g.n_time; ++n) {
            const cdouble a = r.squeeze.contributed[n];
            const cdouble b = r.squeeze.squeezed[n];
            const double scale = std::max(std::abs(a), std::abs(b));
            const double rel = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
            w.row({g.time_s(n), a.real(), a.imag(), b.real(), b.imag(), rel});
        }
        files.emplace_back(summary, w.str());
    }
    if (!slice_path.empty()) files.emplace_back(slice_path, slice_csv(r.squeeze.S, frame_at(g, slice_t)));
    if (!tf_path.empty()) files.emplace_back(tf_path, tf_csv(project_tfc_to_tf(r.squeeze.S)));
    commit(files);
    log << "sct: nu = " << r.field.nu << " -> " << out << '\n';
    return kOk;
}

int cmd_ridge(const Common& c, const std::string& tensor_path, const std::string& signal_path, int K,
              const std::string& out, const std::string& modes_path, const std::string& truth,
              const std::string& report_path, std::ostream& log) {
    RunConfig cfg = c.config();
    if (K > 0) cfg.K = K;
    cfg.validate();
    const TfcTensor S = read_tensor(tensor_path);
    std::vector<std::pair<std::string, std::string>> files;
    const RidgeSet ridges = extract_ridges(S, cfg.ridge_params());
    files.emplace_back(out, ridges_csv(ridges));
    ReconstructedModes modes;
    const bool have_signal = !signal_path.empty() || !truth.empty();
    if (!modes_path.empty() && !have_signal) throw ParameterError("--modes needs --signal or --truth");
    if (have_signal) {
        if (!truth.empty() && truth != "crossing") throw ParameterError("--truth supports only the crossing scene");
        const SyntheticScene scene = truth.empty() ? SyntheticScene{} : crossing_chirp_pair();
        const Signal s = signal_path.empty() ? scene.signal() : c.signal(signal_path);
        modes = reconstruct_modes(s, ridges, cfg.recon_bank(s.dt_s()));
        if (!modes_path.empty()) files.emplace_back(modes_path, modes_csv(modes));
        if (!truth.empty()) {
            if (s.size() != scene.size()) throw ShapeError("signal length differs from the crossing scene");
            if (ridges.times_s.size() != s.size()) throw ShapeError("--truth needs ridges on the signal's time axis");
            const auto perm = match_ridges(ridges, scene.components);
            const auto I1 = interval_mask(s.size(), s.sample_rate_hz(), s.t0_s(), 2.5, 3.5);
            auto I2 = interval_mask(s.size(), s.sample_rate_hz(), s.t0_s(), 1.0, 5.0);
            for (std::size_t i = 0; i < I2.size(); ++i) I2[i] = static_cast<std::uint8_t>(I2[i] && !I1[i]);
            // Published values for f1 as a reference column; none exist for f2.
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const double ref[2][2] = {{0.076, 0.064}, {nan, nan}};
            CsvWriter rep({"component", "rel_error_I1", "rel_error_I2", "reference_I1", "reference_I2"});
            for (std::size_t k = 0; k < scene.components.size(); ++k) {
                const auto& est = modes.modes[perm[k]];
                rep.row({static_cast<double>(k + 1), rel_error(est, scene.components[k].values, I1),
                         rel_error(est, scene.components[k].values, I2), ref[k][0], ref[k][1]});
            }
            if (report_path.empty())
                log << rep.str();
            else
                files.emplace_back(report_path, rep.str());
        }
    }
    commit(files);
    log << "ridge: K = " << ridges.K << " -> " << out << '\n';
    return kOk;
}

int cmd_reconstruct(const Common& c, const std::string& signal_path, const std::string& ridge_path,
                    const std::string& out, std::ostream& log) {
    const RunConfig cfg = c.config();
    const Signal s = c.signal(signal_path);
    const RidgeSet ridges = parse_ridges_csv(read_file(ridge_path));
    const ReconstructedModes modes = reconstruct_modes(s, ridges, cfg.recon_bank(s.dt_s()));
    commit({{out, modes_csv(modes)}});
    log << "reconstruct: " << modes.modes.size() << " modes -> " << out << '\n';
    return kOk;
}

std::string scene_signal_csv(const SyntheticScene& sc) {
    CsvWriter w({"re", "im"});
    for (const auto& z : sc.mixed) w.row({z.real(), z.imag()});
    return w.str();
}

std::string scene_truth_csv(const SyntheticScene& sc) {
    std::vector<std::string> cols{"t_s"};
    for (std::size_t k = 1; k <= sc.components.size(); ++k) {
        const std::string s = std::to_string(k);
        cols.insert(cols.end(), {"re_" + s, "im_" + s, "amp_" + s, "if_" + s + "_hz", "chirp_" + s + "_hzps"});
    }
    cols.emplace_back("noise");
    CsvWriter w(cols);
    for (std::size_t n = 0; n < sc.size(); ++n) {
        std::vector<double> row{sc.time_at(n)};
        for (const auto& c : sc.components) {
            row.insert(row.end(), {c.values[n].real(), c.values[n].imag(), c.amplitude[n], c.if_hz[n], c.chirp_hzps[n]});
        }
        row.push_back(sc.noise.empty() ? 0.0 : sc.noise[n]);
        w.row(row);
    }
    return w.str();
}

int cmd_synth(const Common& c, const std::string& scene, const std::string& out, const std::string& truth_path,
              std::ostream& log) {
    const RunConfig cfg = c.config();
    SyntheticScene sc;
    if (scene == "crossing") {
        sc = crossing_chirp_pair();
    } else if (scene == "brownian") {
        sc = brownian_scene(BrownianSceneSpec{}, cfg.seed);
    } else {
        throw ParameterError("unknown scene '" + scene + "' (crossing | brownian)");
    }
    std::vector<std::pair<std::string, std::string>> files;
    if (fs::path(out).extension() == ".cbin") {
        std::string bytes;
        for (const auto& z : sc.mixed) {
            const double v[2] = {z.real(), z.imag()};
            bytes.append(reinterpret_cast<const char*>(v), sizeof(v));
        }
        files.emplace_back(out, bytes);
    } else {
        files.emplace_back(out, scene_signal_csv(sc));
    }
    if (!truth_path.empty()) files.emplace_back(truth_path, scene_truth_csv(sc));
    commit(files);
    log << "synth: " << scene << ", " << sc.size() << " samples at " << sc.sample_rate_hz << " Hz, t0 = " << sc.t0_s
        << " s";
    if (std::isfinite(sc.snr_db) && !sc.noise.empty()) log << ", SNR " << sc.snr_db << " dB";
    log << " -> " << out << '\n';
    return kOk;
}

int cmd_compare(const Common& c, const std::string& scene, int n_seeds, const std::string& out, std::ostream& log) {
    const RunConfig cfg = c.config();
    if (scene != "brownian") throw ParameterError("compare supports the brownian scene");
    if (n_seeds < 1) throw ParameterError("--seeds must be >= 1");
    ExperimentSetup setup = setup_from_config(cfg);
    std::vector<RealizationReport> reports;
    for (int i = 0; i < n_seeds; ++i) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        reports.push_back(run_brownian_realization(BrownianSceneSpec{}, seed, setup));
        const auto& r = reports.back();
        log << "seed " << seed << ": SNR " << r.snr_db << " dB, SCT rel err " << r.rel_err_sct[0] << ' '
            << r.rel_err_sct[1] << ", OT SCT " << r.ot_sct[0] << ' ' << r.ot_sct[1] << " vs CT " << r.ot_ct[0] << ' '
            << r.ot_ct[1] << '\n';
    }
    const std::string table = compare_table_csv(reports);
    if (out.empty()) {
        log << table;
    } else {
        commit({{out, table}});
    }
    return kOk;
}

int cmd_info(const std::string& path, std::ostream& out) {
    const TensorFileHeader h = read_tensor_header(path);
    out << "TFC1 version " << h.version << ", dtype " << (h.dtype == TensorDtype::complex64 ? "complex64" : "complex128")
        << "\ndims (chirp, freq, time): " << h.n_chirp << " x " << h.n_freq << " x " << h.n_time
        << "\nalpha_sq: " << h.alpha_sq << "\nsample rate: " << h.sample_rate_hz << " Hz\nt0: " << h.t0_s << " s\n";
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Synchrosqueezed chirplet transform toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common common;
    std::string input, output, dtype = "c128", slice_path, tf_path, summary, tensor, signal, truth, report, modes,
                                  ridge_file, scene;
    double slice_t = 0.0;
    int K = 0;
    int seeds = 10;

    auto* transform = app.add_subcommand("transform", "chirplet transform of a signal to a TFC1 tensor");
    transform->add_option("input", input, "signal file (.wav .csv .bin .cbin)")->required();
    transform->add_option("-o,--out", output, "output tensor")->required();
    transform->add_option("--dtype", dtype, "c64 or c128")->check(CLI::IsMember({"c64", "c128"}));
    transform->add_option("--slice", slice_t, "time in seconds of the frequency-chirp slice");
    transform->add_option("--slice-csv", slice_path, "where to write the slice");
    transform->add_option("--tf-csv", tf_path, "time-frequency projection CSV");
    common.add_to(transform);

    auto* sct = app.add_subcommand("sct", "synchrosqueezed chirplet transform to a TFC1 tensor");
    sct->add_option("input", input, "signal file")->required();
    sct->add_option("-o,--out", output, "output tensor")->required();
    sct->add_option("--summary", summary, "per-frame mass conservation CSV");
    sct->add_option("--slice", slice_t, "time in seconds of the frequency-chirp slice");
    sct->add_option("--slice-csv", slice_path, "where to write the slice");
    sct->add_option("--tf-csv", tf_path, "time-frequency projection CSV");
    common.add_to(sct);

    auto* ridge = app.add_subcommand("ridge", "ridge extraction from an SCT tensor, optional reconstruction");
    ridge->add_option("tensor", tensor, "SCT tensor (TFC1)")->required();
    ridge->add_option("-o,--out", output, "ridge CSV")->required();
    ridge->add_option("-K", K, "number of components (overrides config)");
    ridge->add_option("--signal", signal, "signal to reconstruct modes from");
    ridge->add_option("--modes", modes, "reconstructed modes CSV");
    ridge->add_option("--truth", truth, "ground-truth scene for an error report (crossing)");
    ridge->add_option("--report", report, "error report CSV");
    common.add_to(ridge);

    auto* recon = app.add_subcommand("reconstruct", "reconstruct modes from a signal and a ridge CSV");
    recon->add_option("input", input, "signal file")->required();
    recon->add_option("--ridges", ridge_file, "ridge CSV")->required();
    recon->add_option("-o,--out", output, "modes CSV")->required();
    common.add_to(recon);

    auto* synth = app.add_subcommand("synth", "write a synthetic scene (re, im CSV or .cbin)");
    synth->add_option("scene", scene, "crossing | brownian")->required();
    synth->add_option("-o,--out", output, "signal file")->required();
    synth->add_option("--truth", truth, "ground-truth CSV");
    common.add_to(synth);

    auto* compare = app.add_subcommand("compare", "SST2 / CT / SCT mean and SD table over seeds");
    compare->add_option("--scene", scene, "brownian")->default_val("brownian");
    compare->add_option("--seeds", seeds, "number of realizations, seeds seed .. seed + n - 1");
    compare->add_option("-o,--out", output, "table CSV (stdout if omitted)");
    common.add_to(compare);

    auto* info = app.add_subcommand("info", "print a TFC1 header");
    info->add_option("tensor", tensor, "TFC1 file")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*transform) return cmd_transform(common, input, output, dtype, slice_t, slice_path, tf_path, err);
        if (*sct) return cmd_sct(common, input, output, summary, slice_t, slice_path, tf_path, err);
        if (*ridge) return cmd_ridge(common, tensor, signal, K, output, modes, truth, report, err);
        if (*recon) return cmd_reconstruct(common, input, ridge_file, output, err);
        if (*synth) return cmd_synth(common, scene, output, truth, err);
        if (*compare) return cmd_compare(common, scene, seeds, output, err);
        if (*info) return cmd_info(tensor, out);
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return kIo;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace sct::cli
