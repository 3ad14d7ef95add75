#include "sct/signal.hpp"

#include <cmath>
#include <string>

#include "sct/error.hpp"

namespace sct {

Signal::Signal(std::vector<cdouble> samples, double sample_rate_hz, double t0_s)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), t0_s_(t0_s) {
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
        throw ParameterError("sample rate must be positive and finite");
    }
    if (!std::isfinite(t0_s_)) throw ParameterError("start time must be finite");
    // A single sample is accepted so that degenerate files still round-trip.
    if (samples_.empty()) throw ParameterError("signal must contain at least one sample");
    for (std::size_t n = 0; n < samples_.size(); ++n) {
        if (!std::isfinite(samples_[n].real()) || !std::isfinite(samples_[n].imag())) {
            throw ParameterError("non-finite sample at index " + std::to_string(n));
        }
    }
}

Signal Signal::from_real(std::span<const double> samples, double sample_rate_hz, double t0_s) {
    std::vector<cdouble> c(samples.begin(), samples.end());
    return Signal(std::move(c), sample_rate_hz, t0_s);
}

Signal Signal::scaled(cdouble factor) const {
    std::vector<cdouble> out(samples_);
    for (auto& v : out) v *= factor;
    return Signal(std::move(out), sample_rate_hz_, t0_s_);
}

Signal decimate(const Signal& signal, int factor, bool lowpass) {
    if (factor < 1) throw ParameterError("decimation factor must be >= 1");
    if (factor == 1) return signal;
    const auto x = signal.samples();
    const auto n_in = static_cast<long long>(x.size());
    std::vector<cdouble> filtered;
    std::span<const cdouble> src = x;
    if (lowpass) {
        const int half = 8 * factor;
        const double cutoff = 0.5 / factor;
        std::vector<double> taps(2 * half + 1);
        double sum = 0.0;
        for (int k = -half; k <= half; ++k) {
            const double sinc = k == 0 ? 2.0 * cutoff : std::sin(kTwoPi * cutoff * k) / (kPi * k);
            const double hann = 0.5 * (1.0 + std::cos(kPi * k / (half + 1)));
            taps[k + half] = sinc * hann;
            sum += taps[k + half];
        }
        for (auto& t : taps) t /= sum;
        filtered.assign(x.size(), cdouble{});
        for (long long n = 0; n < n_in; ++n) {
            cdouble acc{};
            for (int k = -half; k <= half; ++k) {
                const long long m = n - k;
                if (m >= 0 && m < n_in) acc += taps[k + half] * x[m];
            }
            filtered[n] = acc;
        }
        src = filtered;
    }
    std::vector<cdouble> out;
    out.reserve(x.size() / factor + 1);
    for (long long n = 0; n < n_in; n += factor) out.push_back(src[n]);
    return Signal(std::move(out), signal.sample_rate_hz() / factor, signal.t0_s());
}

}  // namespace sct
