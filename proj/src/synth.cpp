#include "sct/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sct/error.hpp"

namespace sct {

namespace {

double std_dev(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double dt) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * dt * (f[i - 1] + f[i]);
    return out;
}

std::vector<double> central_difference(const std::vector<double>& f, double dt) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (f[1] - f[0]) / dt;
    d[n - 1] = (f[n - 1] - f[n - 2]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
    return d;
}

// Smoothed path, regenerated on a fresh substream until it is not identically zero.
std::vector<double> nonzero_brownian(double B, double T_s, double dt_s, std::uint64_t seed, std::uint64_t stream) {
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        auto rng = substream(seed, stream + (attempt << 32));
        auto phi = smoothed_brownian(B, T_s, dt_s, rng);
        double sup = 0.0;
        for (double v : phi) sup = std::max(sup, std::abs(v));
        if (sup > 0.0) return phi;
    }
    throw NumericalError("smoothed Brownian path vanished on every attempt");
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

SyntheticScene crossing_chirp_pair(double fs, double t_begin, double t_end) {
    if (!(fs > 0.0) || !(t_end > t_begin)) throw ParameterError("invalid crossing scene span");
    const auto N = static_cast<std::size_t>(std::llround((t_end - t_begin) * fs)) + 1;
    SyntheticScene s;
    s.sample_rate_hz = fs;
    s.t0_s = t_begin;
    s.components.resize(2);
    const double b2 = 24.0 + 6.0 * kPi;
    for (auto& c : s.components) {
        c.values.resize(N);
        c.amplitude.assign(N, 1.0);
        c.phase.resize(N);
        c.if_hz.resize(N);
        c.chirp_hzps.resize(N);
    }
    s.clean.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
        const double x = t_begin + static_cast<double>(n) / fs;
        auto& c1 = s.components[0];
        auto& c2 = s.components[1];
        c1.phase[n] = 4.0 * x * x;
        c1.if_hz[n] = 8.0 * x;
        c1.chirp_hzps[n] = 8.0;
        c2.phase[n] = -kPi * x * x + b2 * x;
        c2.if_hz[n] = -kTwoPi * x + b2;
        c2.chirp_hzps[n] = -kTwoPi;
        // Evaluate the phases in reduced form to keep full precision.
        c1.values[n] = std::exp(cdouble(0.0, kTwoPi * std::fmod(c1.phase[n], 1.0)));
        c2.values[n] = std::exp(cdouble(0.0, kTwoPi * std::fmod(c2.phase[n], 1.0)));
        s.clean[n] = c1.values[n] + c2.values[n];
    }
    s.noise.assign(N, 0.0);
    s.mixed = s.clean;
    s.snr_db = std::numeric_limits<double>::infinity();
    return s;
}

std::vector<double> brownian_path(std::size_t n, double dt_s, std::mt19937_64& rng) {
    std::normal_distribution<double> inc(0.0, std::sqrt(dt_s));
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) w[i] = w[i - 1] + inc(rng);
    return w;
}

std::vector<double> smoothed_brownian(double B, double T_s, double dt_s, std::mt19937_64& rng) {
    if (!(B > 0.0) || !(T_s > 0.0) || !(dt_s > 0.0)) throw ParameterError("bandwidth, horizon and dt must be positive");
    const auto n = static_cast<std::size_t>(std::llround(T_s / dt_s)) + 1;
    const auto ext = static_cast<std::size_t>(std::ceil(6.0 * B / dt_s));
    const auto w = brownian_path(n + 2 * ext, dt_s, rng);
    std::vector<double> kernel(2 * ext + 1);
    double ksum = 0.0;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        const double x = (static_cast<double>(k) - static_cast<double>(ext)) * dt_s;
        kernel[k] = std::exp(-0.5 * x * x / (B * B));
        ksum += kernel[k];
    }
    for (auto& k : kernel) k /= ksum;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < kernel.size(); ++k) acc += kernel[k] * w[i + k];
        out[i] = acc;
    }
    return out;
}

std::vector<double> smoothed_brownian(double B, double T_s, double dt_s, std::uint64_t seed) {
    auto rng = substream(seed, 0);
    return smoothed_brownian(B, T_s, dt_s, rng);
}

ProcessRealization random_process(const RandomProcessSpec& spec) {
    const auto& z = spec.zeta;
    if (z[3] != 0.0 && !(z[4] > 0.0)) throw ParameterError("zeta5 must be positive when zeta4 is nonzero");
    if (z[5] != 0.0 && !(z[6] > 0.0)) throw ParameterError("zeta7 must be positive when zeta6 is nonzero");
    if (!(spec.T_s > 0.0) || !(spec.dt_s > 0.0)) throw ParameterError("horizon and dt must be positive");
    const auto n = static_cast<std::size_t>(std::llround(spec.T_s / spec.dt_s)) + 1;
    ProcessRealization r;
    r.value.resize(n);
    r.d1.resize(n);
    r.d2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) * spec.dt_s;
        r.value[i] = z[0] + z[1] * u + z[2] * u * u;
        r.d1[i] = z[1] + 2.0 * z[2] * u;
        r.d2[i] = 2.0 * z[2];
    }
    if (z[3] != 0.0) {
        // Min-max normalization keeps this term inside [0, zeta4].
        auto phi = nonzero_brownian(z[4], spec.T_s, spec.dt_s, spec.seed, 2 * spec.stream);
        const auto [lo, hi] = std::minmax_element(phi.begin(), phi.end());
        const double low = *lo;
        const double range = *hi - *lo;
        for (auto& v : phi) v = range > 0.0 ? (v - low) / range : 0.0;
        const auto d1 = central_difference(phi, spec.dt_s);
        const auto d2 = central_difference(d1, spec.dt_s);
        for (std::size_t i = 0; i < n; ++i) {
            r.value[i] += z[3] * phi[i];
            r.d1[i] += z[3] * d1[i];
            r.d2[i] += z[3] * d2[i];
        }
    }
    if (z[5] != 0.0) {
        auto phi = nonzero_brownian(z[6], spec.T_s, spec.dt_s, spec.seed, 2 * spec.stream + 1);
        double sup = 0.0;
        for (double v : phi) sup = std::max(sup, std::abs(v));
        for (auto& v : phi) v /= sup;
        const auto once = cumulative_trapezoid(phi, spec.dt_s);
        const auto twice = cumulative_trapezoid(once, spec.dt_s);
        for (std::size_t i = 0; i < n; ++i) {
            r.value[i] += z[5] * twice[i];
            r.d1[i] += z[5] * once[i];
            r.d2[i] += z[5] * phi[i];
        }
    }
    return r;
}

NoiseResult student_t_noise(const std::vector<cdouble>& clean, double dof, double scale, std::uint64_t seed,
                            std::uint64_t stream) {
    if (!(dof > 2.0)) throw ParameterError("Student-t noise needs dof > 2 for a finite variance");
    NoiseResult r;
    r.noise.assign(clean.size(), 0.0);
    if (scale != 0.0) {
        auto rng = substream(seed, stream);
        std::student_t_distribution<double> t(dof);
        for (auto& v : r.noise) v = scale * t(rng);
    }
    std::vector<double> re(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) re[i] = clean[i].real();
    const double sn = std_dev(r.noise);
    r.snr_db = sn > 0.0 ? 20.0 * std::log10(std_dev(re) / sn) : std::numeric_limits<double>::infinity();
    return r;
}

SyntheticScene brownian_scene(const BrownianSceneSpec& spec, std::uint64_t seed) {
    if (!(spec.T_s > 0.0) || !(spec.fs > 0.0)) throw ParameterError("scene horizon and rate must be positive");
    const auto N = static_cast<std::size_t>(std::llround(spec.T_s * spec.fs)) + 1;
    const double du = 1.0 / static_cast<double>(N - 1);
    auto in_samples = [du](std::array<double, 7> z) {
        z[4] *= du;
        z[6] *= du;
        return z;
    };
    SyntheticScene s;
    s.sample_rate_hz = spec.fs;
    s.t0_s = 0.0;
    s.components.resize(2);
    s.clean.assign(N, cdouble{});
    const std::array<std::array<double, 7>, 2> phases{spec.phase1, spec.phase2};
    for (int k = 0; k < 2; ++k) {
        RandomProcessSpec a{in_samples(spec.amp), 1.0, du, seed, static_cast<std::uint64_t>(2 * k)};
        RandomProcessSpec p{in_samples(phases[k]), 1.0, du, seed, static_cast<std::uint64_t>(2 * k + 1)};
        const auto amp = random_process(a);
        const auto ph = random_process(p);
        auto& c = s.components[k];
        c.amplitude = amp.value;
        c.values.resize(N);
        c.phase.resize(N);
        c.if_hz.resize(N);
        c.chirp_hzps.resize(N);
        for (std::size_t n = 0; n < N; ++n) {
            c.phase[n] = spec.T_s * ph.value[n];
            c.if_hz[n] = ph.d1[n];
            c.chirp_hzps[n] = ph.d2[n] / spec.T_s;
            c.values[n] = amp.value[n] * std::exp(cdouble(0.0, kTwoPi * std::fmod(c.phase[n], 1.0)));
            s.clean[n] += c.values[n];
        }
    }
    const auto noise = student_t_noise(s.clean, spec.noise_dof, spec.noise_scale, seed, 1000);
    s.noise = noise.noise;
    s.snr_db = noise.snr_db;
    s.mixed.resize(N);
    for (std::size_t n = 0; n < N; ++n) s.mixed[n] = s.clean[n] + s.noise[n];
    return s;
}

}  // namespace sct
