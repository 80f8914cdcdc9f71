#ifndef LPFLUX_FIELD_HPP
#define LPFLUX_FIELD_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "lpflux/errors.hpp"
#include "lpflux/grid.hpp"

namespace lpflux {

enum class Representation { spectral, physical };

/// Scalar or vector field over a Grid. Spectral data are complex coefficients
/// c_k with the convention f(x) = sum_k c_k exp(i k.x); physical data are real
/// samples at the grid points. Operations treat fields as immutable values.
class Field {
  public:
    Field() = default;

    static Field spectral_zeros(const Grid& g, int ncomp) {
        Field f;
        f.grid_ = g;
        f.ncomp_ = ncomp;
        f.rep_ = Representation::spectral;
        f.spec_.assign((std::size_t)ncomp,
                       std::vector<std::complex<double>>(g.num_points()));
        return f;
    }

    static Field physical_zeros(const Grid& g, int ncomp) {
        Field f;
        f.grid_ = g;
        f.ncomp_ = ncomp;
        f.rep_ = Representation::physical;
        f.phys_.assign((std::size_t)ncomp, std::vector<double>(g.num_points()));
        return f;
    }

    const Grid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    Representation representation() const { return rep_; }
    bool is_spectral() const { return rep_ == Representation::spectral; }
    bool is_physical() const { return rep_ == Representation::physical; }
    bool is_scalar() const { return ncomp_ == 1; }
    bool is_vector() const { return ncomp_ == grid_.dim(); }

    std::span<const std::complex<double>> spec(int c) const {
        require(is_spectral(), errc::representation, "field is not in spectral representation");
        return spec_[(std::size_t)c];
    }
    std::span<std::complex<double>> spec(int c) {
        require(is_spectral(), errc::representation, "field is not in spectral representation");
        return spec_[(std::size_t)c];
    }
    std::span<const double> phys(int c) const {
        require(is_physical(), errc::representation, "field is not in physical representation");
        return phys_[(std::size_t)c];
    }
    std::span<double> phys(int c) {
        require(is_physical(), errc::representation, "field is not in physical representation");
        return phys_[(std::size_t)c];
    }

  private:
    Grid grid_;
    int ncomp_ = 0;
    Representation rep_ = Representation::spectral;
    std::vector<std::vector<std::complex<double>>> spec_;
    std::vector<std::vector<double>> phys_;
};

} // namespace lpflux

#endif
