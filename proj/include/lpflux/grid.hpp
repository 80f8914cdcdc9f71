#ifndef LPFLUX_GRID_HPP
#define LPFLUX_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "lpflux/errors.hpp"

namespace lpflux {

/// Periodic grid: per-axis mode counts N_i (even, >= 4) and a lattice
/// denominator L >= 1. Frequencies are m/L with m in [-N_i/2, N_i/2);
/// physical samples are x_j = 2*pi*L*j/N_i, so the period is 2*pi*L per axis.
class Grid {
  public:
    Grid() = default;

    Grid(int dim, const std::vector<int>& sizes, int lattice_denominator) {
        require(dim == 2 || dim == 3, errc::unsupported_dimension,
                "grid dimension must be 2 or 3");
        require((int)sizes.size() == dim, errc::invalid_grid,
                "sizes list length must equal dim");
        require(lattice_denominator >= 1, errc::invalid_grid, "lattice denominator must be >= 1");
        dim_ = dim;
        denom_ = lattice_denominator;
        n_ = {1, 1, 1};
        for (int a = 0; a < dim; ++a) {
            require(sizes[a] >= 4 && sizes[a] % 2 == 0, errc::invalid_grid,
                    "grid sizes must be even and >= 4");
            n_[(std::size_t)a] = sizes[a];
        }
    }

    int dim() const { return dim_; }
    int size(int axis) const { return n_[(std::size_t)axis]; }
    const std::array<int, 3>& sizes() const { return n_; }
    int lattice_denominator() const { return denom_; }

    std::size_t num_points() const {
        return (std::size_t)n_[0] * (std::size_t)n_[1] * (std::size_t)n_[2];
    }

    double period() const { return 2.0 * std::numbers::pi * denom_; }
    double volume() const { return std::pow(period(), dim_); }
    double cell_volume() const { return volume() / (double)num_points(); }

    double nyquist(int axis) const { return (double)n_[(std::size_t)axis] / (2.0 * denom_); }
    double max_nyquist() const {
        double m = 0.0;
        for (int a = 0; a < dim_; ++a) m = std::max(m, nyquist(a));
        return m;
    }

    // storage index (0..N-1, DFT order) <-> signed mode m in [-N/2, N/2);
    // trailing dummy axes (N = 1) carry only the zero mode
    int mode_of_index(int axis, int idx) const {
        const int n = n_[(std::size_t)axis];
        if (n == 1) return 0;
        return idx < n / 2 ? idx : idx - n;
    }
    int index_of_mode(int axis, int m) const {
        const int n = n_[(std::size_t)axis];
        return m >= 0 ? m : m + n;
    }
    bool mode_in_range(int axis, int m) const {
        const int n = n_[(std::size_t)axis];
        if (n == 1) return m == 0;
        return m >= -n / 2 && m < n / 2;
    }
    double freq_of_index(int axis, int idx) const {
        return (double)mode_of_index(axis, idx) / (double)denom_;
    }

    std::size_t flat_index(int i0, int i1, int i2) const {
        return ((std::size_t)i0 * (std::size_t)n_[1] + (std::size_t)i1) * (std::size_t)n_[2] +
               (std::size_t)i2;
    }

    /// Per-axis frequency table indexed by storage index.
    std::vector<double> freq_table(int axis) const {
        std::vector<double> f((std::size_t)n_[(std::size_t)axis]);
        for (int i = 0; i < n_[(std::size_t)axis]; ++i) f[(std::size_t)i] = freq_of_index(axis, i);
        return f;
    }

    bool operator==(const Grid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && denom_ == o.denom_;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

  private:
    int dim_ = 0;
    std::array<int, 3> n_ = {1, 1, 1};
    int denom_ = 1;
};

inline Grid new_grid(int dim, const std::vector<int>& sizes, int lattice_denominator) {
    return Grid(dim, sizes, lattice_denominator);
}

/// Lattice wavevector: integer numerators over the grid's denominator.
struct WaveVector {
    std::array<int, 3> m = {0, 0, 0};
    int denom = 1;

    double freq(int axis) const { return (double)m[(std::size_t)axis] / (double)denom; }
    double norm() const {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) s += freq(a) * freq(a);
        return std::sqrt(s);
    }
};

} // namespace lpflux

#endif
