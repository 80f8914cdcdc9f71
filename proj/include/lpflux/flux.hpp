#ifndef LPFLUX_FLUX_HPP
#define LPFLUX_FLUX_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lpflux/besov.hpp"
#include "lpflux/field.hpp"
#include "lpflux/filter_bank.hpp"

namespace lpflux {

// ---- locality kernels --------------------------------------------------------

enum class KernelKind { energy_K, helicity_T, enstrophy_W };

/// Exponentially decaying localization kernels on integer dyadic offsets:
/// K(q) = T(q) = 2^{2q/3} for q <= 0, 2^{-4q/3} for q > 0;
/// W(q) = 2^{2q} for q <= 0, 2^{-4q} for q > 0.
struct LocalityKernel {
    KernelKind kind = KernelKind::energy_K;

    double operator()(int q) const {
        if (kind == KernelKind::enstrophy_W)
            return q <= 0 ? std::pow(2.0, 2.0 * q) : std::pow(2.0, -4.0 * q);
        return q <= 0 ? std::pow(2.0, 2.0 * q / 3.0) : std::pow(2.0, -4.0 * q / 3.0);
    }
};

/// sum over q = -1..q_max of kernel(Q - q) * coeffs(q)^2.
double kernel_convolution(const LocalityKernel& kernel, const DyadicCoefficients& coeffs, int Q);

// ---- flux evaluation -----------------------------------------------------------

enum class FluxKind { energy, helicity, enstrophy, shell };

struct FluxSeries {
    FluxKind kind = FluxKind::energy;
    std::vector<int> Q;
    std::vector<double> flux;
};

struct BoundSeries {
    FluxKind kind = FluxKind::energy;
    std::vector<int> Q;
    std::vector<double> bound;
};

/// Per-field evaluator caching the alias-free product spectra, so a series of
/// Q values costs one set of padded transforms. The referenced bank must
/// outlive the analyzer. Raw fluxes carry the full volume factor; divide by
/// grid().volume() for the volume-normalized values.
class FluxAnalyzer {
  public:
    FluxAnalyzer(const Field& u, const FilterBank& bank);

    const Grid& grid() const { return u_.grid(); }
    int q_max() const { return bank_.q_max(); }
    double volume() const { return u_.grid().volume(); }

    double energy_flux(int Q) const;
    double shell_flux(int Q0, int Q1) const; // Q0 = -1: band is all of S_{Q1}
    double shell_identity_residual(int Q0, int Q1) const;
    double helicity_flux(int Q) const; // 3D
    double enstrophy_flux(int Q) const; // 2D

    double energy_bound(int Q) const;    // (K * d^2)^{3/2}(Q)
    double helicity_bound(int Q) const;  // (T * b^2)^{3/2}(Q)
    double enstrophy_bound(int Q) const; // ||S_Q w||_3^2 (W*c^2)^{1/2} + (W*c^2)^{3/2}

    const DyadicCoefficients& energy_coefficients() const;   // d_q
    const DyadicCoefficients& helicity_coefficients() const; // b_q
    const DyadicCoefficients& vorticity_coefficients() const; // c_q

  private:
    void check_flux_index(int Q) const;
    void ensure_uu() const;
    void ensure_omega() const;
    void ensure_uomega() const;
    double tensor_flux(std::span<const double> mult, const Field& target) const;
    double wedge_flux(std::span<const double> mult) const;
    double enstrophy_flux_mult(std::span<const double> mult) const;
    std::size_t pair_index(int i, int j) const;

    const FilterBank& bank_;
    Field u_;     // spectral
    mutable std::optional<Field> omega_;
    mutable std::vector<std::vector<std::complex<double>>> uu_;     // F(u_i u_j), i <= j
    mutable std::vector<std::vector<std::complex<double>>> uomega_; // F(u_i w_j), ordered
    mutable std::optional<DyadicCoefficients> d_, b_, c_;
};

// ---- one-shot wrappers (spec operations) ----------------------------------------

double energy_flux(const Field& u, int Q, const FilterBank& bank);
double shell_flux(const Field& u, int Q0, int Q1, const FilterBank& bank);
double shell_identity_residual(const Field& u, int Q0, int Q1, const FilterBank& bank);
double helicity_flux(const Field& u, int Q, const FilterBank& bank);
double enstrophy_flux(const Field& u, int Q, const FilterBank& bank);
double energy_bound(const Field& u, int Q, const FilterBank& bank);
double helicity_bound(const Field& u, int Q, const FilterBank& bank);
double enstrophy_bound(const Field& u, int Q, const FilterBank& bank);

FluxSeries flux_series(const Field& u, FluxKind kind, int Q_lo, int Q_hi, const FilterBank& bank);
BoundSeries bound_series(const Field& u, FluxKind kind, int Q_lo, int Q_hi,
                         const FilterBank& bank);

} // namespace lpflux

#endif
