#ifndef LPFLUX_SPECTRAL_OPS_HPP
#define LPFLUX_SPECTRAL_OPS_HPP

#include <complex>
#include <span>
#include <vector>

#include "lpflux/field.hpp"
#include "lpflux/grid.hpp"

namespace lpflux {

// ---- transforms ------------------------------------------------------------

/// Physical -> spectral. Unitary round trip; a coefficient c at wavevector k
/// represents c*exp(i k.x).
Field to_spectral(const Field& f);
/// Spectral -> physical (real samples).
Field to_physical(const Field& f);
/// Copy-free when already spectral, converts otherwise.
Field ensure_spectral(const Field& f);

// ---- differential operators (spectral multipliers, exact per mode) ---------

Field gradient(const Field& f);      // scalar -> vector, multiplier i*k
Field divergence(const Field& u);    // vector -> scalar
Field curl(const Field& u);          // 3D: vector -> vector; 2D: vector -> scalar vorticity
Field perp_gradient(const Field& f); // 2D scalar -> (-d2 f, d1 f)
Field leray_project(const Field& u); // per-mode v - k (v.k)/|k|^2, k = 0 passed through

// ---- integrals (deterministic pairwise summation) --------------------------

double integrate(const Field& f);                     // scalar field
double inner_product(const Field& f, const Field& g); // componentwise dot, then integral
double total_energy(const Field& u);                  // 0.5 ||u||_2^2
double total_helicity(const Field& u);                // (u, curl u), 3D only

/// L^2 norm by Parseval on the spectral side.
double l2_norm(const Field& f);

// ---- divergence-free diagnostic ---------------------------------------------

/// max_k |k.u(k)| / max_k |k||u(k)|; 0 for the zero field.
double divergence_ratio(const Field& u);
bool is_divergence_free(const Field& u);
void require_divergence_free(const Field& u, const char* who);

// ---- field arithmetic -------------------------------------------------------

Field add(const Field& a, const Field& b);
Field subtract(const Field& a, const Field& b);
Field scaled(const Field& a, double s);
Field component(const Field& u, int c); // scalar view copy

// ---- 2x zero padding / alias-free products ----------------------------------

/// The 2x refinement of g: same lattice spacing, double the mode range.
Grid padded_grid(const Grid& g);

std::vector<std::complex<double>> embed_spectrum(const Grid& g,
                                                 std::span<const std::complex<double>> spec,
                                                 const Grid& pg);
std::vector<std::complex<double>> truncate_spectrum(const Grid& pg,
                                                    std::span<const std::complex<double>> pspec,
                                                    const Grid& g);

/// Real samples on the 2x grid of the band-limited field with the given
/// spectrum on g. Quadratic products of such arrays are alias-free.
std::vector<double> padded_physical(const Grid& g, std::span<const std::complex<double>> spec);

/// Complex samples (no real-part truncation), on g itself or its 2x grid.
std::vector<std::complex<double>> complex_physical(const Grid& g,
                                                   std::span<const std::complex<double>> spec);
std::vector<std::complex<double>> complex_physical_padded(const Grid& g,
                                                          std::span<const std::complex<double>> spec);

/// F(a*b) on g's lattice, where pa and pb are padded physical arrays from g.
std::vector<std::complex<double>> product_spectrum(const Grid& g, std::span<const double> pa,
                                                   std::span<const double> pb);

/// i k_axis multiplier applied in place.
void differentiate_inplace(const Grid& g, std::span<std::complex<double>> spec, int axis);

} // namespace lpflux

#endif
