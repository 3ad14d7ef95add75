#pragma once

#include <functional>

#include "sct/signal.hpp"
#include "sct/window.hpp"

namespace sct {

/// Continuous chirplet transform of e^{2 pi i xi0 x + pi i lambda0 x^2} with
/// the window e^{-pi alpha_w x^2}, evaluated in closed form (principal branch).
cdouble analytic_ct_linear_chirp(double xi0, double lambda0, double alpha_w, double t, double xi, double lambda);

/// Joint frequency / chirp transform of the window,
/// integral of g(x) e^{-2 pi i xi x} e^{-pi i lambda x^2} dx, for n in {0, 1, 2}.
/// Throws UnsupportedWindowError for larger n.
cdouble g_check(const WindowFamily& family, double xi, double lambda);

/// Chirp transform integral of f(x) e^{-pi i lambda x^2} over [a, b], by
/// composite 10-point Gauss-Legendre on panels that each span less than a
/// quarter turn of the chirp phase. `max_panel` bounds the panel width for
/// the smoothness of f.
cdouble chirp_transform_1d(const std::function<double(double)>& f, double a, double b, double lambda,
                           double max_panel = 0.05);

/// Fresnel-type integral of e^{-pi i lambda x^2} over [a, b].
cdouble fresnel_integral(double a, double b, double lambda);

/// 2 sqrt(6) / sqrt(pi): constant of the uniform Fresnel bound C * lambda^{-1/2}.
inline constexpr double kFresnelBoundConstant = 2.763953195770684;

}  // namespace sct
