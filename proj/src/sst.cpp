#include "sct/sst.hpp"

#include <cmath>

namespace sct {

SstResult synchrosqueezed_stft(const Signal& signal, const WindowBank& bank, const TfcGrid& grid, NuPolicy policy,
                               PhaseConvention convention) {
    auto W = companion_stfts(signal, bank, grid, convention);
    SstResult r;
    double max_abs = 0.0;
    for (const auto& v : W[0].values) max_abs = std::max(max_abs, std::abs(v));
    r.nu = policy.resolve(max_abs);
    r.S1 = TfMatrix(grid);
    r.S2 = TfMatrix(grid);
    r.contributed1.assign(grid.n_time, cdouble{});
    r.contributed2.assign(grid.n_time, cdouble{});
    for (int n = 0; n < grid.n_time; ++n) {
        for (int j = 0; j < grid.n_freq(); ++j) {
            const cdouble w = W[0](j, n);
            if (!(std::abs(w) > r.nu)) continue;
            std::array<cdouble, 6> v;
            for (int k = 0; k < 6; ++k) v[k] = W[k](j, n);
            const SstEstimate e = sst_point(v, grid.freq_hz(j));
            if (e.defined1) {
                const int b = nearest_freq_bin(grid, e.omega1);
                if (b >= 0) {
                    r.S1(b, n) += w;
                    r.contributed1[n] += w;
                }
            }
            if (e.defined2) {
                const int b = nearest_freq_bin(grid, e.omega2);
                if (b >= 0) {
                    r.S2(b, n) += w;
                    r.contributed2[n] += w;
                }
            }
        }
    }
    r.W = std::move(W[0]);
    return r;
}

TfMatrix sst1(const Signal& signal, const WindowBank& bank, const TfcGrid& grid, NuPolicy policy) {
    return synchrosqueezed_stft(signal, bank, grid, policy).S1;
}

TfMatrix sst2(const Signal& signal, const WindowBank& bank, const TfcGrid& grid, NuPolicy policy) {
    return synchrosqueezed_stft(signal, bank, grid, policy).S2;
}

}  // namespace sct
