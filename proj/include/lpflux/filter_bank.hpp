#ifndef LPFLUX_FILTER_BANK_HPP
#define LPFLUX_FILTER_BANK_HPP

#include <cmath>
#include <span>
#include <vector>

#include "lpflux/field.hpp"
#include "lpflux/grid.hpp"

namespace lpflux {

inline double dyadic_scale(int q) { return std::ldexp(1.0, q); } // 2^q

/// Smooth radial cutoff: 1 on [0, 1/2], 0 on [1, inf), smooth and
/// non-increasing in between via the exponential smooth step
/// chi(r) = g(2-2r) / (g(2-2r) + g(2r-1)), g(t) = exp(-1/t) for t > 0 else 0.
class ChiProfile {
  public:
    double operator()(double r) const {
        if (r <= 0.5) return 1.0;
        if (r >= 1.0) return 0.0;
        const double a = g(2.0 - 2.0 * r);
        const double b = g(2.0 * r - 1.0);
        return a / (a + b);
    }

    /// Lipschitz constant of chi(r)^2, evaluated on a fine r grid.
    double squared_lipschitz() const;

  private:
    static double g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
};

inline ChiProfile make_chi_profile() { return ChiProfile{}; }

/// Cached Littlewood-Paley multipliers on a grid's frequency lattice.
/// chi level l holds chi(|xi| / 2^l); the block multiplier phi_q is the exact
/// difference chi_{q+1} - chi_q, so partition-of-unity telescopes in floats.
class FilterBank {
  public:
    FilterBank(const Grid& grid, const ChiProfile& chi);

    const Grid& grid() const { return grid_; }
    int q_max() const { return q_max_; }

    /// S_Q multiplier chi(|xi| / lambda_{Q+1}); Q in [-1, q_max].
    std::span<const double> low_pass_multiplier(int Q) const;
    /// Delta_q multiplier; q = -1 is the chi block, q in [0, q_max] the phi_q band.
    std::span<const double> block_multiplier(int q) const;
    /// Band multiplier for sum of blocks Q0..Q1 (Q0 = -1 includes the chi block).
    std::vector<double> shell_multiplier(int Q0, int Q1) const;
    /// sqrt(phi_{Q0-1} * phi_{Q0}); Q0 in [1, q_max].
    std::vector<double> bar_multiplier(int Q0) const;

    void check_block_index(int q) const;
    void check_low_pass_index(int Q) const;

  private:
    Grid grid_;
    int q_max_ = 0;
    std::vector<std::vector<double>> chi_; // level l = 0..q_max+1
    std::vector<std::vector<double>> phi_; // q = 0..q_max
};

inline FilterBank make_filter_bank(const Grid& grid, const ChiProfile& chi) {
    return FilterBank(grid, chi);
}

// ---- block operators ---------------------------------------------------------

Field dyadic_block(const Field& u, int q, const FilterBank& bank);
Field low_pass(const Field& u, int Q, const FilterBank& bank);
Field shell_band(const Field& u, int Q0, int Q1, const FilterBank& bank);
Field bar_block(const Field& u, int Q0, const FilterBank& bank);

/// sup over the lattice of |m_band^2 - (m_{Q1}^2 - m_{Q0-1}^2 - 2 m_bar^2)|.
double multiplier_identity_residual(int Q0, int Q1, const FilterBank& bank);

/// sup over the lattice of |chi + sum_q phi_q - 1| restricted to |xi| <= lambda_{q_max}.
double partition_of_unity_residual(const FilterBank& bank);

/// max over the lattice of phi_q * phi_p for |p-q| >= 2 (exactly 0 by support).
double support_disjointness_max(const FilterBank& bank);

} // namespace lpflux

#endif
