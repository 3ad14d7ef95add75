#pragma once

#include <span>
#include <vector>

namespace sct {

enum class WindowKind { gaussian_power };

/// g(x) = x^n exp(-pi * alpha_w * x^2), x in seconds.
struct WindowFamily {
    WindowKind kind = WindowKind::gaussian_power;
    int n = 0;
    double alpha_w = 1.0;

    void validate() const;

    [[nodiscard]] double value(double x) const;
    [[nodiscard]] double first_derivative(double x) const;
    [[nodiscard]] double second_derivative(double x) const;
};

inline WindowFamily gaussian_window(int n = 0, double alpha_w = 1.0) {
    return WindowFamily{WindowKind::gaussian_power, n, alpha_w};
}

/// Half length K_w (in samples) at which the Gaussian envelope has fallen
/// below 1e-8 of its peak: ceil(4.3 / sqrt(alpha_w) / dt).
int default_half_len(const WindowFamily& family, double dt_s);

enum class Companion { h, h_prime, h_second, th, th_prime, t2h };

inline constexpr Companion kAllCompanions[] = {Companion::h,  Companion::h_prime,  Companion::h_second,
                                               Companion::th, Companion::th_prime, Companion::t2h};

/// The window and its five companions sampled at x_k = (k - half_len) * dt_s.
/// Derivatives are evaluated from closed forms.
struct WindowBank {
    int half_len = 0;
    double dt_s = 0.0;
    WindowFamily family;
    std::vector<double> h;
    std::vector<double> h_prime;
    std::vector<double> h_second;
    std::vector<double> th;
    std::vector<double> th_prime;
    std::vector<double> t2h;

    [[nodiscard]] std::size_t length() const noexcept { return h.size(); }
    [[nodiscard]] std::span<const double> get(Companion c) const noexcept;
};

WindowBank make_window_bank(const WindowFamily& family, int half_len, double dt_s);
WindowBank make_window_bank(const WindowFamily& family, double dt_s);

}  // namespace sct
