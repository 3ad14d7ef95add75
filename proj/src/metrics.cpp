#include "sct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sct/error.hpp"

namespace sct {

namespace {

bool selected(std::span<const std::uint8_t> mask, std::size_t i) { return mask.empty() || mask[i] != 0; }

void check_mask(std::size_t n, std::span<const std::uint8_t> mask) {
    if (!mask.empty() && mask.size() != n) throw ShapeError("mask length does not match the series");
}

double stddev(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size()));
}

}  // namespace

double rel_error(std::span<const cdouble> estimate, std::span<const cdouble> truth, std::span<const std::uint8_t> mask,
                 bool real_part) {
    if (estimate.size() != truth.size()) throw ShapeError("estimate and truth lengths differ");
    check_mask(truth.size(), mask);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!selected(mask, i)) continue;
        if (real_part) {
            const double d = estimate[i].real() - truth[i].real();
            num += d * d;
            den += truth[i].real() * truth[i].real();
        } else {
            num += std::norm(estimate[i] - truth[i]);
            den += std::norm(truth[i]);
        }
    }
    if (!(den > 0.0)) throw UndefinedMetricError("relative error of a zero reference");
    return std::sqrt(num / den);
}

double rel_error(std::span<const double> estimate, std::span<const double> truth, std::span<const std::uint8_t> mask) {
    if (estimate.size() != truth.size()) throw ShapeError("estimate and truth lengths differ");
    check_mask(truth.size(), mask);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!selected(mask, i)) continue;
        num += (estimate[i] - truth[i]) * (estimate[i] - truth[i]);
        den += truth[i] * truth[i];
    }
    if (!(den > 0.0)) throw UndefinedMetricError("relative error of a zero reference");
    return std::sqrt(num / den);
}

std::vector<std::uint8_t> interval_mask(std::size_t n, double fs, double t0, double a, double b) {
    std::vector<std::uint8_t> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) / fs;
        m[i] = static_cast<std::uint8_t>(t >= a - 1e-9 && t <= b + 1e-9);
    }
    return m;
}

double snr_db(std::span<const double> signal, std::span<const double> noise) {
    const double sn = stddev(noise);
    if (sn == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(stddev(signal) / sn);
}

double wasserstein1_1d(std::span<const double> pos_a, std::span<const double> w_a, std::span<const double> pos_b,
                       std::span<const double> w_b) {
    if (pos_a.size() != w_a.size() || pos_b.size() != w_b.size()) throw ShapeError("positions and weights differ in length");
    if (pos_a.empty() || pos_b.empty()) throw UndefinedMetricError("empty distribution");
    auto total = [](std::span<const double> w) {
        double s = 0.0;
        for (double v : w) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("weights must be finite and nonnegative");
            s += v;
        }
        if (!(s > 0.0)) throw UndefinedMetricError("distribution has zero mass");
        return s;
    };
    const double sa = total(w_a);
    const double sb = total(w_b);

    // Signed events: +w/sa for a, -w/sb for b. Sorting by position, the running
    // sum is F_a - F_b on each gap between consecutive support points.
    struct Event {
        double x;
        double dm;
    };
    std::vector<Event> ev;
    ev.reserve(pos_a.size() + pos_b.size());
    for (std::size_t i = 0; i < pos_a.size(); ++i) {
        if (!std::isfinite(pos_a[i])) throw ParameterError("positions must be finite");
        ev.push_back({pos_a[i], w_a[i] / sa});
    }
    for (std::size_t i = 0; i < pos_b.size(); ++i) {
        if (!std::isfinite(pos_b[i])) throw ParameterError("positions must be finite");
        ev.push_back({pos_b[i], -w_b[i] / sb});
    }
    std::sort(ev.begin(), ev.end(), [](const Event& l, const Event& r) { return l.x < r.x; });
    double cdf = 0.0;
    double w1 = 0.0;
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        cdf += ev[i].dm;
        w1 += std::abs(cdf) * (ev[i + 1].x - ev[i].x);
    }
    return w1;
}

double ot_if_metric(std::span<const FrameDistribution> estimate, std::span<const double> truth_hz,
                    std::span<const std::uint8_t> mask) {
    if (estimate.size() != truth_hz.size()) throw ShapeError("estimate and truth cover different frames");
    check_mask(truth_hz.size(), mask);
    double sum = 0.0;
    std::size_t count = 0;
    const double one = 1.0;
    for (std::size_t n = 0; n < truth_hz.size(); ++n) {
        if (!selected(mask, n) || estimate[n].positions.empty()) continue;
        const double wsum = std::accumulate(estimate[n].weights.begin(), estimate[n].weights.end(), 0.0);
        if (!(wsum > 0.0)) continue;
        sum += wasserstein1_1d(estimate[n].positions, estimate[n].weights, std::span<const double>(&truth_hz[n], 1),
                               std::span<const double>(&one, 1));
        ++count;
    }
    if (count == 0) throw UndefinedMetricError("no frame carries an estimate");
    return sum / static_cast<double>(count);
}

double ot_if_metric(std::span<const double> estimate_hz, std::span<const double> truth_hz,
                    std::span<const std::uint8_t> mask) {
    if (estimate_hz.size() != truth_hz.size()) throw ShapeError("estimate and truth cover different frames");
    check_mask(truth_hz.size(), mask);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 0; n < truth_hz.size(); ++n) {
        if (!selected(mask, n) || !std::isfinite(estimate_hz[n])) continue;
        sum += std::abs(estimate_hz[n] - truth_hz[n]);
        ++count;
    }
    if (count == 0) throw UndefinedMetricError("no frame carries an estimate");
    return sum / static_cast<double>(count);
}

}  // namespace sct
