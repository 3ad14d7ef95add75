#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sct/signal.hpp"

namespace sct {

/// ||(estimate - truth) 1_mask||_2 / ||truth 1_mask||_2 on the real parts, or on
/// the complex values when `real_part` is false. An empty mask means all samples.
/// Throws UndefinedMetricError if the masked truth is zero, ShapeError on
/// length mismatch.
double rel_error(std::span<const cdouble> estimate, std::span<const cdouble> truth, std::span<const std::uint8_t> mask = {},
                 bool real_part = true);
double rel_error(std::span<const double> estimate, std::span<const double> truth, std::span<const std::uint8_t> mask = {});

/// Mask selecting samples whose time lies in [a, b].
std::vector<std::uint8_t> interval_mask(std::size_t n, double fs, double t0, double a, double b);

/// 20 log10(std(signal) / std(noise)); +infinity when the noise is constant.
double snr_db(std::span<const double> signal, std::span<const double> noise);

/// Wasserstein-1 distance between two discrete distributions on the line,
/// as the integral of |F_a - F_b|. Weights are normalized internally.
/// Throws UndefinedMetricError for an empty or zero-mass distribution,
/// ParameterError for negative or non-finite weights.
double wasserstein1_1d(std::span<const double> pos_a, std::span<const double> w_a, std::span<const double> pos_b,
                       std::span<const double> w_b);

/// One weighted point set per frame.
struct FrameDistribution {
    std::vector<double> positions;
    std::vector<double> weights;
};

/// Per-frame W1 between an estimate distribution and a point mass at the
/// truth, averaged over the frames whose mask entry is set (all if empty).
/// Frames with an empty estimate are skipped; if none remain, throws
/// UndefinedMetricError.
double ot_if_metric(std::span<const FrameDistribution> estimate, std::span<const double> truth_hz,
                    std::span<const std::uint8_t> mask = {});

/// Single-valued estimate: the mean of |estimate - truth| over the masked frames.
double ot_if_metric(std::span<const double> estimate_hz, std::span<const double> truth_hz,
                    std::span<const std::uint8_t> mask = {});

}  // namespace sct
