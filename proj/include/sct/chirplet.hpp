#pragma once

#include <array>
#include <span>

#include "sct/grid.hpp"
#include "sct/kernels.hpp"
#include "sct/signal.hpp"
#include "sct/volume.hpp"
#include "sct/window.hpp"

namespace sct {

/// T(n, j, l) = dt * sum_k f[n + k - K_w] h[k] e^{-2 pi i u j / (2M)} e^{-pi i l u^2 / (4M^2)},
/// with f zero outside the signal and u given by the phase convention.
/// The dt factor makes |T| a Riemann sum of the continuous transform.
/// Throws ShapeError if the grid does not match the signal, ParameterError
/// if the window length is even.
TfcTensor chirplet_transform(const Signal& signal, std::span<const double> window, const TfcGrid& grid,
                             PhaseConvention convention = PhaseConvention::centered);

/// Same values computed by the serial reference kernel.
TfcTensor chirplet_transform_reference(const Signal& signal, std::span<const double> window, const TfcGrid& grid,
                                       PhaseConvention convention = PhaseConvention::centered);

/// Transforms with all six companions, ordered as kAllCompanions.
std::array<TfcTensor, 6> companion_transforms(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                                              PhaseConvention convention = PhaseConvention::centered);

/// Short-time Fourier transform: the chirplet transform at chirp level 0.
TfMatrix stft(const Signal& signal, std::span<const double> window, const TfcGrid& grid,
              PhaseConvention convention = PhaseConvention::centered);

std::array<TfMatrix, 6> companion_stfts(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                                        PhaseConvention convention = PhaseConvention::centered);

/// sum over chirp bins of |T| times the chirp bin width (Hz/s).
TfMagnitude project_tfc_to_tf(const TfcTensor& tensor);

/// Checks that the grid is usable with the signal. Throws ShapeError otherwise.
void check_grid_matches(const Signal& signal, const TfcGrid& grid);

}  // namespace sct
