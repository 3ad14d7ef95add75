#include "sct/analytic.hpp"

#include <cmath>

#include "sct/error.hpp"

namespace sct {

namespace {

constexpr double kGlNodes[10] = {-0.9739065285171717,  -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
                                 -0.14887433898163122, 0.14887433898163122, 0.4333953941292472,  0.6794095682990244,
                                 0.8650633666889845,   0.9739065285171717};
constexpr double kGlWeights[10] = {0.06667134430868807, 0.14945134915058036, 0.219086362515982,  0.2692667193099965,
                                   0.295524224714753,   0.295524224714753,   0.2692667193099965, 0.219086362515982,
                                   0.14945134915058036, 0.06667134430868807};

}  // namespace

cdouble analytic_ct_linear_chirp(double xi0, double lambda0, double alpha_w, double t, double xi, double lambda) {
    const cdouble z(alpha_w, lambda - lambda0);
    const double d = xi - xi0 - lambda0 * t;
    const cdouble carrier = std::exp(cdouble(0.0, kTwoPi * xi0 * t + kPi * lambda0 * t * t));
    return carrier / std::sqrt(z) * std::exp(-kPi * d * d / z);
}

cdouble g_check(const WindowFamily& family, double xi, double lambda) {
    family.validate();
    const cdouble z(family.alpha_w, lambda);
    const cdouble g0 = std::exp(-kPi * xi * xi / z) / std::sqrt(z);
    switch (family.n) {
        case 0: return g0;
        case 1: return cdouble(0.0, -xi) / z * g0;
        case 2: return (1.0 / (kTwoPi * z) - xi * xi / (z * z)) * g0;
        default: throw UnsupportedWindowError("closed form available only for window powers n <= 2");
    }
}

cdouble chirp_transform_1d(const std::function<double(double)>& f, double a, double b, double lambda,
                           double max_panel) {
    if (!(b > a)) return {};
    const double al = std::abs(lambda);
    cdouble acc{};
    double x = a;
    while (x < b) {
        double dx = max_panel;
        if (al > 0.0) dx = std::min(dx, 1.0 / (4.0 * al * std::abs(x) + 2.0 * std::sqrt(al)));
        const double x1 = std::min(b, x + dx);
        const double mid = 0.5 * (x + x1);
        const double half = 0.5 * (x1 - x);
        cdouble panel{};
        for (int i = 0; i < 10; ++i) {
            const double s = mid + half * kGlNodes[i];
            panel += kGlWeights[i] * f(s) * std::exp(cdouble(0.0, -kPi * lambda * s * s));
        }
        acc += half * panel;
        x = x1;
    }
    return acc;
}

cdouble fresnel_integral(double a, double b, double lambda) {
    return chirp_transform_1d([](double) { return 1.0; }, a, b, lambda);
}

}  // namespace sct
