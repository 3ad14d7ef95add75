#pragma once

#include <cstddef>
#include <vector>

#include "sct/grid.hpp"
#include "sct/signal.hpp"

namespace sct {

/// Dense [n_chirp x n_freq x n_time] array. Storage is frame-major so that one
/// time frame is a contiguous (n_chirp x n_freq) block; this keeps the
/// per-frame kernels free of cross-frame writes.
template <class T>
class Volume {
public:
    Volume() = default;
    Volume(int n_chirp, int n_freq, int n_time, T fill = T{})
        : n_chirp_(n_chirp), n_freq_(n_freq), n_time_(n_time),
          data_(static_cast<std::size_t>(n_chirp) * n_freq * n_time, fill) {}

    [[nodiscard]] int n_chirp() const noexcept { return n_chirp_; }
    [[nodiscard]] int n_freq() const noexcept { return n_freq_; }
    [[nodiscard]] int n_time() const noexcept { return n_time_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] std::size_t frame_size() const noexcept {
        return static_cast<std::size_t>(n_chirp_) * n_freq_;
    }

    [[nodiscard]] std::size_t index(int c, int j, int n) const noexcept {
        return (static_cast<std::size_t>(n) * n_chirp_ + c) * n_freq_ + j;
    }
    T& operator()(int c, int j, int n) noexcept { return data_[index(c, j, n)]; }
    const T& operator()(int c, int j, int n) const noexcept { return data_[index(c, j, n)]; }

    T* frame(int n) noexcept { return data_.data() + static_cast<std::size_t>(n) * frame_size(); }
    const T* frame(int n) const noexcept { return data_.data() + static_cast<std::size_t>(n) * frame_size(); }

    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    template <class U>
    [[nodiscard]] bool same_shape(const Volume<U>& o) const noexcept {
        return n_chirp_ == o.n_chirp() && n_freq_ == o.n_freq() && n_time_ == o.n_time();
    }

private:
    int n_chirp_ = 0;
    int n_freq_ = 0;
    int n_time_ = 0;
    std::vector<T> data_;
};

/// Complex TFC volume together with the grid that defines its axes.
struct TfcTensor {
    TfcGrid grid;
    Volume<cdouble> values;

    TfcTensor() = default;
    explicit TfcTensor(const TfcGrid& g) : grid(g), values(g.n_chirp(), g.n_freq(), g.n_time) {}

    [[nodiscard]] double max_abs() const;
};

/// [n_freq x n_time] time-frequency array, stored frame-major.
template <class T>
struct TfArray {
    TfcGrid grid;
    int n_freq = 0;
    int n_time = 0;
    std::vector<T> values;

    TfArray() = default;
    explicit TfArray(const TfcGrid& g)
        : grid(g), n_freq(g.n_freq()), n_time(g.n_time),
          values(static_cast<std::size_t>(g.n_freq()) * g.n_time, T{}) {}

    T& operator()(int j, int n) noexcept { return values[static_cast<std::size_t>(n) * n_freq + j]; }
    const T& operator()(int j, int n) const noexcept { return values[static_cast<std::size_t>(n) * n_freq + j]; }
};

using TfMatrix = TfArray<cdouble>;
using TfMagnitude = TfArray<double>;

}  // namespace sct
