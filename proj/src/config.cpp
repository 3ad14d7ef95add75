#include "sct/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "sct/error.hpp"
#include "sct/io.hpp"

namespace sct {

namespace {

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc{} || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
        throw ParameterError(key + ": expected a number, got '" + v + "'");
    }
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    long long x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) {
        throw ParameterError(key + ": expected an integer, got '" + v + "'");
    }
    return x;
}

}  // namespace

void RunConfig::validate() const {
    window.validate();
    if (half_len < 0) throw ParameterError("half_len must be >= 0 (0 selects the default)");
    if (!(alpha_sq > 0.0 && alpha_sq <= 0.5)) throw ParameterError("alpha_sq must lie in (0, 0.5]");
    if (!(nu.value > 0.0)) throw ParameterError("nu must be positive");
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("q must lie in (0, 1)");
    if (!(sigma_pct > 0.0 && sigma_pct <= 100.0)) throw ParameterError("sigma_pct must lie in (0, 100]");
    if (K < 1) throw ParameterError("K must be >= 1");
    if (restarts < 1) throw ParameterError("restarts must be >= 1");
    if (!(recon_alpha_w > 0.0)) throw ParameterError("recon_alpha_w must be positive");
}

WindowBank RunConfig::window_bank(double dt_s) const {
    return half_len > 0 ? make_window_bank(window, half_len, dt_s) : make_window_bank(window, dt_s);
}

WindowBank RunConfig::recon_bank(double dt_s) const {
    return make_window_bank(gaussian_window(0, recon_alpha_w), dt_s);
}

RidgeParams RunConfig::ridge_params() const {
    RidgeParams p;
    p.K = K;
    p.q = q;
    p.sigma_pct = sigma_pct;
    p.seed = seed;
    p.restarts = restarts;
    return p;
}

std::string RunConfig::to_text() const {
    std::ostringstream o;
    o.precision(17);
    o << "window_n = " << window.n << '\n'
      << "alpha_w = " << window.alpha_w << '\n'
      << "half_len = " << (half_len > 0 ? std::to_string(half_len) : std::string("auto")) << '\n'
      << "alpha_sq = " << alpha_sq << '\n'
      << "nu_mode = " << (nu.mode == NuPolicy::Mode::relative ? "relative" : "absolute") << '\n'
      << "nu = " << nu.value << '\n'
      << "q = " << q << '\n'
      << "sigma_pct = " << sigma_pct << '\n'
      << "K = " << K << '\n'
      << "seed = " << seed << '\n'
      << "restarts = " << restarts << '\n'
      << "convention = " << (convention == PhaseConvention::centered ? "centered" : "left_edge") << '\n'
      << "recon_alpha_w = " << recon_alpha_w << '\n';
    return o.str();
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "window_n") {
        cfg.window.n = static_cast<int>(to_int(key, value));
    } else if (key == "alpha_w") {
        cfg.window.alpha_w = to_double(key, value);
    } else if (key == "half_len") {
        cfg.half_len = value == "auto" ? 0 : static_cast<int>(to_int(key, value));
    } else if (key == "alpha_sq") {
        cfg.alpha_sq = to_double(key, value);
    } else if (key == "nu_mode") {
        if (value == "relative") cfg.nu.mode = NuPolicy::Mode::relative;
        else if (value == "absolute") cfg.nu.mode = NuPolicy::Mode::absolute;
        else throw ParameterError("nu_mode: expected relative or absolute, got '" + value + "'");
    } else if (key == "nu") {
        cfg.nu.value = to_double(key, value);
    } else if (key == "q") {
        cfg.q = to_double(key, value);
    } else if (key == "sigma_pct") {
        cfg.sigma_pct = to_double(key, value);
    } else if (key == "K") {
        cfg.K = static_cast<int>(to_int(key, value));
    } else if (key == "seed") {
        const long long s = to_int(key, value);
        if (s < 0) throw ParameterError("seed must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "restarts") {
        cfg.restarts = static_cast<int>(to_int(key, value));
    } else if (key == "convention") {
        if (value == "centered") cfg.convention = PhaseConvention::centered;
        else if (value == "left_edge" || value == "paper") cfg.convention = PhaseConvention::left_edge;
        else throw ParameterError("convention: expected centered or left_edge, got '" + value + "'");
    } else if (key == "recon_alpha_w") {
        cfg.recon_alpha_w = to_double(key, value);
    } else {
        throw ParameterError("unknown config key '" + key + "'");
    }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
        try {
            set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ParameterError& e) {
            throw ParameterError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    base.validate();
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) { return parse_config(read_file(path), base); }

}  // namespace sct
