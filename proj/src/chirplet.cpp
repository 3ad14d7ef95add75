#include "sct/chirplet.hpp"

#include <cmath>
#include <numeric>

#include "sct/error.hpp"

namespace sct {

namespace {

std::vector<int> all_levels(const TfcGrid& grid) {
    std::vector<int> levels(grid.n_chirp());
    for (int c = 0; c < grid.n_chirp(); ++c) levels[c] = grid.chirp_level(c);
    return levels;
}

int half_len_of(std::span<const double> window) {
    if (window.size() % 2 != 1) throw ParameterError("window length must be odd");
    return static_cast<int>(window.size() / 2);
}

KernelRequest make_request(const Signal& signal, std::vector<std::span<const double>> windows, const TfcGrid& grid,
                           std::vector<int> levels, PhaseConvention convention) {
    check_grid_matches(signal, grid);
    KernelRequest req;
    req.samples = signal.samples();
    req.half_len = half_len_of(windows.front());
    req.windows = std::move(windows);
    req.dt_s = signal.dt_s();
    req.M = grid.M;
    req.levels = std::move(levels);
    req.convention = convention;
    return req;
}

TfcTensor wrap(const TfcGrid& grid, Volume<cdouble>&& v) {
    TfcTensor t;
    t.grid = grid;
    t.values = std::move(v);
    return t;
}

TfMatrix to_matrix(const TfcGrid& grid, const Volume<cdouble>& v) {
    TfMatrix m(grid);
    for (int n = 0; n < grid.n_time; ++n) {
        for (int j = 0; j < grid.n_freq(); ++j) m(j, n) = v(0, j, n);
    }
    return m;
}

std::vector<std::span<const double>> bank_windows(const WindowBank& bank) {
    std::vector<std::span<const double>> w;
    for (Companion c : kAllCompanions) w.push_back(bank.get(c));
    return w;
}

}  // namespace

double TfcTensor::max_abs() const {
    double m = 0.0;
    for (const auto& v : values.data()) m = std::max(m, std::abs(v));
    return m;
}

void check_grid_matches(const Signal& signal, const TfcGrid& grid) {
    if (grid.M < 1) throw ShapeError("grid has no frequency bins");
    if (grid.n_time != static_cast<int>(signal.size())) throw ShapeError("grid frame count differs from signal length");
    if (std::abs(grid.sample_rate_hz - signal.sample_rate_hz()) > 1e-12 * signal.sample_rate_hz()) {
        throw ShapeError("grid sample rate differs from signal sample rate");
    }
}

TfcTensor chirplet_transform(const Signal& signal, std::span<const double> window, const TfcGrid& grid,
                             PhaseConvention convention) {
    auto out = ct_kernel_parallel(make_request(signal, {window}, grid, all_levels(grid), convention));
    return wrap(grid, std::move(out.front()));
}

TfcTensor chirplet_transform_reference(const Signal& signal, std::span<const double> window, const TfcGrid& grid,
                                       PhaseConvention convention) {
    auto out = ct_kernel_reference(make_request(signal, {window}, grid, all_levels(grid), convention));
    return wrap(grid, std::move(out.front()));
}

std::array<TfcTensor, 6> companion_transforms(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                                              PhaseConvention convention) {
    auto out = ct_kernel_parallel(make_request(signal, bank_windows(bank), grid, all_levels(grid), convention));
    std::array<TfcTensor, 6> result;
    for (int w = 0; w < 6; ++w) result[w] = wrap(grid, std::move(out[w]));
    return result;
}

TfMatrix stft(const Signal& signal, std::span<const double> window, const TfcGrid& grid, PhaseConvention convention) {
    auto out = ct_kernel_parallel(make_request(signal, {window}, grid, {0}, convention));
    return to_matrix(grid, out.front());
}

std::array<TfMatrix, 6> companion_stfts(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                                        PhaseConvention convention) {
    auto out = ct_kernel_parallel(make_request(signal, bank_windows(bank), grid, {0}, convention));
    std::array<TfMatrix, 6> result;
    for (int w = 0; w < 6; ++w) result[w] = to_matrix(grid, out[w]);
    return result;
}

TfMagnitude project_tfc_to_tf(const TfcTensor& tensor) {
    const auto& g = tensor.grid;
    TfMagnitude m(g);
    const double dl = g.chirp_step_hzps();
    for (int n = 0; n < g.n_time; ++n) {
        for (int j = 0; j < g.n_freq(); ++j) {
            double s = 0.0;
            for (int c = 0; c < g.n_chirp(); ++c) s += std::abs(tensor.values(c, j, n));
            m(j, n) = s * dl;
        }
    }
    return m;
}

}  // namespace sct
