#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sct {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniformly sampled complex time series. Sample n sits at t0_s + n / sample_rate_hz.
class Signal {
public:
    Signal() = default;

    /// Throws ParameterError if the rate is not positive, the series is empty
    /// or any sample is not finite.
    Signal(std::vector<cdouble> samples, double sample_rate_hz, double t0_s = 0.0);

    static Signal from_real(std::span<const double> samples, double sample_rate_hz, double t0_s = 0.0);

    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    [[nodiscard]] double dt_s() const noexcept { return 1.0 / sample_rate_hz_; }
    [[nodiscard]] double t0_s() const noexcept { return t0_s_; }
    [[nodiscard]] double time_at(std::size_t n) const noexcept { return t0_s_ + static_cast<double>(n) / sample_rate_hz_; }
    [[nodiscard]] std::span<const cdouble> samples() const noexcept { return samples_; }
    [[nodiscard]] const cdouble& operator[](std::size_t n) const noexcept { return samples_[n]; }

    [[nodiscard]] Signal scaled(cdouble factor) const;

private:
    std::vector<cdouble> samples_;
    double sample_rate_hz_ = 1.0;
    double t0_s_ = 0.0;
};

/// Keeps every `factor`-th sample. With `lowpass`, a Hann-windowed sinc filter
/// with cutoff at the new Nyquist frequency is applied first.
Signal decimate(const Signal& signal, int factor, bool lowpass = false);

}  // namespace sct
