#ifndef LPFLUX_BILINEAR_HPP
#define LPFLUX_BILINEAR_HPP

#include <cstdint>
#include <vector>

#include "lpflux/field.hpp"
#include "lpflux/filter_bank.hpp"

namespace lpflux {

/// B(u,v) = P(u . grad v), alias-free convective product then projection.
/// Requires div u = 0 and a 3D grid.
Field advective_term(const Field& u, const Field& v);

/// Lambda H(u x v) assembled from Riesz multipliers:
/// [H(u x v)]_i = R_j(u_j v_i) + R_i R_k R_l (u_k v_l), Lambda = (-Laplace)^{1/2}.
/// Riesz multipliers vanish at k = 0. Agrees with advective_term for div u = 0.
Field hodge_form(const Field& u, const Field& v);

/// integral of u . grad v . w, evaluated alias-free on the 2x grid.
double trilinear(const Field& u, const Field& v, const Field& w);

/// Bony-style split of Delta_q B(u,v) into comparable-frequency and
/// low-high parts. The displayed index sets drop a few border pairs, so
/// C_part + I_part reproduces Delta_q B only up to a measured residual.
struct ParaproductSplit {
    int q = 0;
    Field C_part;
    Field I_part;
};

ParaproductSplit paraproduct_split(const Field& u, const Field& v, int q, const FilterBank& bank);

/// Relative residual ||Delta_q B(u,v) - C_q - I_q||_2 / ||Delta_q B(u,v)||_2.
double paraproduct_residual(const Field& u, const Field& v, int q, const FilterBank& bank);

/// Empirical constants for the continuity inequalities over a seeded ensemble:
/// max over the ensemble of LHS/RHS for each bound.
struct InequalityRatios {
    double comparable = 0.0;  // ||C(u,v)||_{B^{-1/3}_{3/2,2}} / (||u|| ||v||)
    double low_high = 0.0;    // ||I(u,v)||_{B^{-2/3}_{9/5,2}} / (||u|| ||v||)
    double trilinear = 0.0;   // |<B(u,v),w>| / (||u|| ||v|| ||w||), B^{1/2}_{18/7,2}
    double low_pass_aux = 0.0; // sup_q ||S_q u||_{9/2} / ||u||_{B^{1/3}_{3,2}}
    int ensemble = 0;
};

InequalityRatios inequality_report(const Grid& grid, int ensemble, std::uint64_t seed,
                                   const FilterBank& bank);

/// The series n -> <B(u, v_n), w_n> with its predicted growth A sum_{q<=n} 1/q.
struct GrowthSeries {
    std::vector<int> n;
    std::vector<double> value;
    std::vector<double> predicted;
    double A = 0.0;
};

GrowthSeries divergence_growth(const Grid& grid, int n_max, std::uint64_t seed);

} // namespace lpflux

#endif
