#ifndef LPFLUX_TRIAD_ORACLE_HPP
#define LPFLUX_TRIAD_ORACLE_HPP

#include "lpflux/example_fields.hpp"
#include "lpflux/field.hpp"
#include "lpflux/filter_bank.hpp"

namespace lpflux::oracle {

// Brute-force spectral-convolution recomputation of every flux and trilinear
// pairing. Deliberately independent of the FFT pathway: explicit triad sums
// over active modes, no padding, multipliers evaluated straight from the chi
// profile. O(M^2) in the active mode count, gated at 10^4 modes.

double triad_energy_flux(const Field& u, int Q, const FilterBank& bank);
double triad_shell_flux(const Field& u, int Q0, int Q1, const FilterBank& bank);
double triad_helicity_flux(const Field& u, int Q, const FilterBank& bank);
double triad_enstrophy_flux(const Field& u, int Q, const FilterBank& bank);
double triad_trilinear(const Field& u, const Field& v, const Field& w);

/// Flux of the bare mode table (no envelope), per unit volume: the triad sum
/// with multiplier chi(|k|/lambda_{Q+1})^2. For the torus variants this equals
/// the volume-normalized flux of the synthesized field.
double table_flux(const ModeTable& table, int lattice_denominator, int Q, const ChiProfile& chi);

/// Number of triads contributing more than tol in magnitude to table_flux.
int table_flux_triad_count(const ModeTable& table, int lattice_denominator, int Q,
                           const ChiProfile& chi, double tol);

struct LemmaReport {
    double projection_error = 0.0; // sup_x |Psi_k - e^{ikx} Pperp_k Phi|
    double projection_bound = 0.0; // 2 sum |xi||c_xi| / |k|
    double lowpass_error = 0.0;    // sup_x |S_Q^2 Psi_k - chi_Q(k)^2 Psi_k|
    double lowpass_bound = 0.0;    // c_lip sum |xi||c_xi| / lambda_{Q+1}
    double I_k = 0.0;              // lattice sum (2 pi)^d sum |xi||c_xi|
    bool pass = false;
};

/// Measures both sup-errors of the modulated projection lemma against their
/// lattice-sum bounds. Phi must be band-limited so that B(k, band) fits the
/// lattice; otherwise a resolution error is thrown.
LemmaReport lemma_local_check(const Field& phi, const WaveVector& k, int Q,
                              const FilterBank& bank);

} // namespace lpflux::oracle

#endif
