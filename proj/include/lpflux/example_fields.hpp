#ifndef LPFLUX_EXAMPLE_FIELDS_HPP
#define LPFLUX_EXAMPLE_FIELDS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "lpflux/field.hpp"
#include "lpflux/filter_bank.hpp"

namespace lpflux {

// ---- deterministic RNG ---------------------------------------------------------

/// mt19937_64 with explicit uniform/normal mappings, so field constructions
/// are reproducible for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next_u64() { return engine_(); }
    double uniform(); // [0, 1)
    double normal();  // standard normal, Box-Muller

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---- envelope ------------------------------------------------------------------

enum class EnvelopeVariant { torus, localized };

struct EnvelopeParams {
    EnvelopeVariant variant = EnvelopeVariant::torus;
    Grid grid;
};

/// Smooth low-frequency envelope. torus: rho == 1, A = volume. localized:
/// rho with spectrum chi(4 xi) (support |xi| <= 1/4), A = integral of rho^3.
struct Envelope {
    Grid grid;
    bool torus = true;
    std::vector<std::array<int, 3>> offsets; // integer lattice indices of the stencil
    std::vector<double> coeffs;              // real spectral coefficients
    double A = 0.0;
    Field rho; // scalar field, spectral
};

Envelope envelope_rho(const EnvelopeParams& params);

/// 2D envelope with bandwidth delta: spectrum delta^{-4/3} chi(|xi|/delta),
/// normalized so A is independent of delta.
Envelope envelope_delta(const Grid& grid2d, double delta);

// ---- mode tables -----------------------------------------------------------------

struct ModeEntry {
    std::array<int, 3> m = {0, 0, 0}; // integer lattice index (frequency = m / L)
    std::array<std::complex<double>, 3> amp = {};
};

/// Hermitian list of (wavevector, amplitude) pairs; synthesized fields are real.
struct ModeTable {
    std::vector<ModeEntry> entries;

    void check_hermitian() const;
};

/// sum of amp * exp(i k.x) * rho(x) over the table, Leray-projected.
Field synthesize(const Grid& grid, const ModeTable& table, const Envelope& env);

/// Wavevector families with amplitudes i lambda_q^{-1/3} (...) concentrating a
/// constant energy flux; q in [q_lo, q_hi].
ModeTable eyink_energy_table(int q_lo, int q_hi, int lattice_denominator);
/// The helicity variant: real amplitudes lambda_q^{-2/3} (...).
ModeTable eyink_helicity_table(int q_lo, int q_hi, int lattice_denominator);

Field eyink_energy_field(const Grid& grid, int q_lo, int q_hi, const Envelope& env);
Field eyink_helicity_field(const Grid& grid, int q_lo, int q_hi, const Envelope& env);

/// 2D field whose enstrophy flux at Q is driven by low shells paired against
/// the lambda_{Q+2} sphere. Wavevector pairs are snapped to the lattice with
/// k_l + k_h = (lambda_{Q+2}, 0) exact. Only low shells q in
/// [shells_lo, shells_hi] are included (the top mode u_{Q+1} always is), which
/// supports the cumulative-inclusion diagnostics; pass (0, Q) for the full field.
Field enstrophy_nonlocal_field(const Grid& grid2d, int Q, double delta, int shells_lo,
                               int shells_hi);
inline Field enstrophy_nonlocal_field(const Grid& grid2d, int Q, double delta) {
    return enstrophy_nonlocal_field(grid2d, Q, delta, 0, Q);
}

// ---- divergence-growth sequence ---------------------------------------------------

struct ParaproductSequence {
    Field u;              // divergence-free, spectrum inside B(0, 1/4)
    Field phi;            // (0, u1, 0)
    std::vector<Field> v; // v[n-1] = v_n, n = 1..n_max
    std::vector<Field> w;
    double A = 0.0; // integral of u1^3
};

ParaproductSequence paraproduct_sequence(const Grid& grid, int n_max, std::uint64_t seed);

// ---- random multi-scale fields ------------------------------------------------------

/// Divergence-free real field whose measured lambda_q^{1/3} ||Delta_q u||_3
/// match profile[q] within 10%; deterministic in seed.
Field random_spectrum_field(const Grid& grid, const std::vector<double>& profile,
                            std::uint64_t seed);

/// Generic seeded divergence-free field for surveys (smooth random spectrum).
Field random_divergence_free_field(const Grid& grid, std::uint64_t seed);

} // namespace lpflux

#endif
