#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "sct/chirplet.hpp"
#include "sct/volume.hpp"
#include "sct/window.hpp"

namespace sct {

/// Marker stored in omega / mu where the estimate is undefined.
inline constexpr double kUndefined = -std::numeric_limits<double>::infinity();

/// Threshold on |T^h| below which reassignment is not attempted.
struct NuPolicy {
    enum class Mode { relative, absolute };
    Mode mode = Mode::relative;
    double value = 1e-4;

    static NuPolicy relative(double r) { return {Mode::relative, r}; }
    static NuPolicy absolute(double v) { return {Mode::absolute, v}; }
    /// Absolute threshold given the largest |T^h| of the signal.
    [[nodiscard]] double resolve(double max_abs) const;
};

struct ReassignmentField {
    TfcGrid grid;
    Volume<double> omega;  // Hz
    Volume<double> mu;     // Hz/s
    Volume<std::uint8_t> defined;
    double nu = 0.0;
};

struct PointEstimate {
    double omega = kUndefined;
    double mu = kUndefined;
    bool defined = false;
};

/// Chirp rate and frequency estimates at one (xi, lambda) from the six
/// companion values (ordered as kAllCompanions). Undefined when
/// |M2| < 1e-12 |M1| or T^h vanishes.
PointEstimate reassign_point(const std::array<cdouble, 6>& v, double xi_hz, double lambda_hzps) noexcept;

/// First- and second-order SST frequency estimates at lambda = 0.
struct SstEstimate {
    double omega1 = kUndefined;
    double omega2 = kUndefined;
    bool defined1 = false;
    bool defined2 = false;
};
SstEstimate sst_point(const std::array<cdouble, 6>& v, double xi_hz) noexcept;

/// Throws ShapeError if the six tensors do not share a grid, ParameterError if nu <= 0.
ReassignmentField reassignment_field(const std::array<TfcTensor, 6>& banks, double nu);
ReassignmentField reassignment_field(const std::array<TfcTensor, 6>& banks, NuPolicy policy = {});

struct SqueezeResult {
    TfcTensor S;
    /// Per frame: sum of T over the entries whose reassignment landed inside the grid.
    std::vector<cdouble> contributed;
    /// Per frame: sum of S over the whole frame.
    std::vector<cdouble> squeezed;
    /// |T|-weighted mean of the unrounded (omega, mu) landing in each S bin; NaN if none.
    Volume<double> omega_centroid;
    Volume<double> mu_centroid;
};

/// Histogram squeeze: each defined entry moves T to the bin nearest to
/// (omega, mu); entries landing outside the grid are dropped.
SqueezeResult synchrosqueeze(const TfcTensor& T, const ReassignmentField& field);

struct SctResult {
    TfcTensor T;
    ReassignmentField field;
    SqueezeResult squeeze;
};

/// Transform, reassignment and squeeze in one pass over the frames; the five
/// companion transforms are never stored.
SctResult synchrosqueezed_chirplet_transform(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                                             NuPolicy policy = {},
                                             PhaseConvention convention = PhaseConvention::centered);

struct NeighborEntry {
    int freq_bin = 0;
    int chirp_bin = 0;
    double weight = 0.0;  // |T|
};

/// Defined entries at frame n whose (omega, mu) is within (eps1_hz, eps2_hzps)
/// of (xi_hz, lambda_hzps). Throws ParameterError unless both eps are positive.
std::vector<NeighborEntry> inverse_sct_neighborhood(const ReassignmentField& field, const TfcTensor& T, int n,
                                                    double xi_hz, double lambda_hzps, double eps1_hz,
                                                    double eps2_hzps);

}  // namespace sct
