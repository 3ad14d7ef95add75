#pragma once

#include <vector>

#include "sct/reassign.hpp"

namespace sct {

struct SstResult {
    TfMatrix W;   // STFT with h
    TfMatrix S1;  // first-order squeeze
    TfMatrix S2;  // second-order squeeze
    std::vector<cdouble> contributed1;
    std::vector<cdouble> contributed2;
    double nu = 0.0;
};

/// STFT-based synchrosqueezing of first and second order along the frequency axis.
SstResult synchrosqueezed_stft(const Signal& signal, const WindowBank& bank, const TfcGrid& grid,
                               NuPolicy policy = {}, PhaseConvention convention = PhaseConvention::centered);

TfMatrix sst1(const Signal& signal, const WindowBank& bank, const TfcGrid& grid, NuPolicy policy = {});
TfMatrix sst2(const Signal& signal, const WindowBank& bank, const TfcGrid& grid, NuPolicy policy = {});

}  // namespace sct
