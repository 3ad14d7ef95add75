#include "sct/window.hpp"

#include <cmath>

#include "sct/error.hpp"
#include "sct/signal.hpp"

namespace sct {

namespace {

// x^p with the convention 0^0 = 1 and x^p = 0 for negative p (those terms
// always carry a zero coefficient).
double ipow(double x, int p) {
    if (p < 0) return 0.0;
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

void WindowFamily::validate() const {
    if (kind != WindowKind::gaussian_power) throw ParameterError("unknown window kind");
    if (n < 0) throw ParameterError("window power n must be >= 0");
    if (!(alpha_w > 0.0) || !std::isfinite(alpha_w)) throw ParameterError("window width alpha_w must be positive");
}

double WindowFamily::value(double x) const {
    return ipow(x, n) * std::exp(-kPi * alpha_w * x * x);
}

double WindowFamily::first_derivative(double x) const {
    const double e = std::exp(-kPi * alpha_w * x * x);
    return (n * ipow(x, n - 1) - 2.0 * kPi * alpha_w * ipow(x, n + 1)) * e;
}

double WindowFamily::second_derivative(double x) const {
    const double e = std::exp(-kPi * alpha_w * x * x);
    const double pa = kPi * alpha_w;
    return (n * (n - 1) * ipow(x, n - 2) - 2.0 * pa * (2 * n + 1) * ipow(x, n) + 4.0 * pa * pa * ipow(x, n + 2)) * e;
}

int default_half_len(const WindowFamily& family, double dt_s) {
    family.validate();
    if (!(dt_s > 0.0)) throw ParameterError("dt must be positive");
    return std::max(1, static_cast<int>(std::ceil(4.3 / std::sqrt(family.alpha_w) / dt_s)));
}

std::span<const double> WindowBank::get(Companion c) const noexcept {
    switch (c) {
        case Companion::h: return h;
        case Companion::h_prime: return h_prime;
        case Companion::h_second: return h_second;
        case Companion::th: return th;
        case Companion::th_prime: return th_prime;
        case Companion::t2h: return t2h;
    }
    return h;
}

WindowBank make_window_bank(const WindowFamily& family, int half_len, double dt_s) {
    family.validate();
    if (half_len < 1) throw ParameterError("window half length must be >= 1");
    if (!(dt_s > 0.0) || !std::isfinite(dt_s)) throw ParameterError("dt must be positive");
    WindowBank bank;
    bank.half_len = half_len;
    bank.dt_s = dt_s;
    bank.family = family;
    const std::size_t len = 2 * static_cast<std::size_t>(half_len) + 1;
    for (auto* v : {&bank.h, &bank.h_prime, &bank.h_second, &bank.th, &bank.th_prime, &bank.t2h}) v->resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        const double x = (static_cast<double>(k) - half_len) * dt_s;
        const double g = family.value(x);
        const double gp = family.first_derivative(x);
        bank.h[k] = g;
        bank.h_prime[k] = gp;
        bank.h_second[k] = family.second_derivative(x);
        bank.th[k] = x * g;
        bank.th_prime[k] = x * gp;
        bank.t2h[k] = x * x * g;
    }
    return bank;
}

WindowBank make_window_bank(const WindowFamily& family, double dt_s) {
    return make_window_bank(family, default_half_len(family, dt_s), dt_s);
}

}  // namespace sct
