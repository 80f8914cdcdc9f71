#include "lpflux/flux.hpp"

#include <cmath>

#include "lpflux/kernels.hpp"
#include "lpflux/spectral_ops.hpp"

namespace lpflux {

using cd = std::complex<double>;

double kernel_convolution(const LocalityKernel& kernel, const DyadicCoefficients& coeffs, int Q) {
    double acc = 0.0;
    for (int q = -1; q <= coeffs.q_max(); ++q) {
        const double v = coeffs.at(q);
        acc += kernel(Q - q) * v * v;
    }
    return acc;
}

FluxAnalyzer::FluxAnalyzer(const Field& u, const FilterBank& bank)
    : bank_(bank), u_(ensure_spectral(u)) {
    require(u_.grid() == bank.grid(), errc::grid_mismatch, "flux: bank grid mismatch");
    require(u_.is_vector(), errc::arity, "flux: vector field expected");
    require_divergence_free(u_, "flux");
}

void FluxAnalyzer::check_flux_index(int Q) const {
    require(Q >= 0 && Q <= bank_.q_max() - 1, errc::index,
            "flux index Q outside [0, q_max - 1]");
}

std::size_t FluxAnalyzer::pair_index(int i, int j) const {
    // upper-triangle order (0,0),(0,1),...,(0,d-1),(1,1),...
    const int d = u_.grid().dim();
    return (std::size_t)(i * d - i * (i - 1) / 2 + (j - i));
}

void FluxAnalyzer::ensure_uu() const {
    if (!uu_.empty()) return;
    const Grid& g = u_.grid();
    const int d = g.dim();
    std::vector<std::vector<double>> pu((std::size_t)d);
    for (int c = 0; c < d; ++c) pu[(std::size_t)c] = padded_physical(g, u_.spec(c));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            uu_.push_back(product_spectrum(g, pu[(std::size_t)i], pu[(std::size_t)j]));
}

void FluxAnalyzer::ensure_omega() const {
    if (!omega_) omega_ = curl(u_);
}

void FluxAnalyzer::ensure_uomega() const {
    if (!uomega_.empty()) return;
    ensure_omega();
    const Grid& g = u_.grid();
    const int d = g.dim();
    std::vector<std::vector<double>> pu((std::size_t)d), pw((std::size_t)d);
    for (int c = 0; c < d; ++c) {
        pu[(std::size_t)c] = padded_physical(g, u_.spec(c));
        pw[(std::size_t)c] = padded_physical(g, omega_->spec(c));
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            uomega_.push_back(product_spectrum(g, pu[(std::size_t)i], pw[(std::size_t)j]));
}

// integral of Tr[M(u x u) . grad M target] over the box, M the real multiplier.
double FluxAnalyzer::tensor_flux(std::span<const double> mult, const Field& target) const {
    ensure_uu();
    const Grid& g = u_.grid();
    const int d = g.dim();
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n1 = g.size(1), n2 = g.size(2);
    std::array<std::span<const cd>, 3> t{};
    for (int c = 0; c < d; ++c) t[(std::size_t)c] = target.spec(c);
    std::array<std::span<const cd>, 6> T{};
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) T[pair_index(i, j)] = uu_[pair_index(i, j)];

    const double s = kernels::sum_generate(g.num_points(), [&](std::size_t idx) {
        const int i2 = (int)(idx % (std::size_t)n2);
        const std::size_t r = idx / (std::size_t)n2;
        const int i1 = (int)(r % (std::size_t)n1);
        const int i0 = (int)(r / (std::size_t)n1);
        const double k[3] = {f0[(std::size_t)i0], f1[(std::size_t)i1], f2[(std::size_t)i2]};
        const double m2 = mult[idx] * mult[idx];
        double acc = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                const cd Tij = T[pair_index(i, j)][idx];
                cd W = cd(0.0, k[j]) * t[(std::size_t)i][idx];
                if (j != i) W += cd(0.0, k[i]) * t[(std::size_t)j][idx];
                acc += m2 * (Tij.real() * W.real() + Tij.imag() * W.imag());
            }
        return acc;
    });
    return s * g.volume();
}

// integral of Tr[M(u ^ w) . grad M u], u ^ w = u x w - w x u (3D). The wedge
// factor is antisymmetric, so the contraction pairs the derivative with the
// FIRST tensor index; this is the orientation under which the flux equals the
// time derivative of the low-passed helicity along the Euler flow.
double FluxAnalyzer::wedge_flux(std::span<const double> mult) const {
    ensure_uomega();
    const Grid& g = u_.grid();
    const int d = g.dim();
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n1 = g.size(1), n2 = g.size(2);
    std::array<std::span<const cd>, 3> uc{};
    for (int c = 0; c < d; ++c) uc[(std::size_t)c] = u_.spec(c);
    std::array<std::span<const cd>, 9> P{};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) P[(std::size_t)(i * d + j)] = uomega_[(std::size_t)(i * d + j)];

    const double s = kernels::sum_generate(g.num_points(), [&](std::size_t idx) {
        const int i2 = (int)(idx % (std::size_t)n2);
        const std::size_t r = idx / (std::size_t)n2;
        const int i1 = (int)(r % (std::size_t)n1);
        const int i0 = (int)(r / (std::size_t)n1);
        const double k[3] = {f0[(std::size_t)i0], f1[(std::size_t)i1], f2[(std::size_t)i2]};
        const double m2 = mult[idx] * mult[idx];
        double acc = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                const cd A = P[(std::size_t)(i * d + j)][idx] - P[(std::size_t)(j * d + i)][idx];
                const cd W = cd(0.0, k[i]) * uc[(std::size_t)j][idx];
                acc += m2 * (A.real() * W.real() + A.imag() * W.imag());
            }
        return acc;
    });
    return s * g.volume();
}

// integral of Tr[M(u x u) . grad perp-grad M w] (2D).
double FluxAnalyzer::enstrophy_flux_mult(std::span<const double> mult) const {
    ensure_uu();
    ensure_omega();
    const Grid& g = u_.grid();
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1);
    const int n1 = g.size(1);
    std::span<const cd> w = omega_->spec(0);
    std::array<std::span<const cd>, 3> T{uu_[0], uu_[1], uu_[2]}; // (0,0),(0,1),(1,1)

    const double s = kernels::sum_generate(g.num_points(), [&](std::size_t idx) {
        const int i1 = (int)(idx % (std::size_t)n1);
        const int i0 = (int)(idx / (std::size_t)n1);
        const double kx = f0[(std::size_t)i0], ky = f1[(std::size_t)i1];
        const double m2 = mult[idx] * mult[idx];
        const cd wv = w[idx];
        // perp gradient of w: (-i ky w, i kx w)
        const cd e0 = cd(0.0, -ky) * wv;
        const cd e1 = cd(0.0, kx) * wv;
        double acc = 0.0;
        // (0,0)
        {
            const cd W = cd(0.0, kx) * e0;
            acc += m2 * (T[0][idx].real() * W.real() + T[0][idx].imag() * W.imag());
        }
        // (0,1) symmetrized
        {
            const cd W = cd(0.0, ky) * e0 + cd(0.0, kx) * e1;
            acc += m2 * (T[1][idx].real() * W.real() + T[1][idx].imag() * W.imag());
        }
        // (1,1)
        {
            const cd W = cd(0.0, ky) * e1;
            acc += m2 * (T[2][idx].real() * W.real() + T[2][idx].imag() * W.imag());
        }
        return acc;
    });
    return s * g.volume();
}

double FluxAnalyzer::energy_flux(int Q) const {
    check_flux_index(Q);
    return tensor_flux(bank_.low_pass_multiplier(Q), u_);
}

double FluxAnalyzer::shell_flux(int Q0, int Q1) const {
    require(Q0 >= -1 && Q0 <= Q1 && Q1 <= bank_.q_max() - 1, errc::index,
            "shell flux indices outside range");
    if (Q0 == -1) return energy_flux(Q1); // extended convention: band = S_{Q1}
    const auto band = bank_.shell_multiplier(Q0, Q1);
    return tensor_flux(band, u_);
}

double FluxAnalyzer::shell_identity_residual(int Q0, int Q1) const {
    require(Q0 >= 1 && Q0 <= Q1 && Q1 <= bank_.q_max() - 1, errc::index,
            "shell identity indices outside range");
    const double lhs = shell_flux(Q0, Q1);
    const double bar = tensor_flux(bank_.bar_multiplier(Q0), u_);
    const double rhs = energy_flux(Q1) - energy_flux(Q0 - 1) - 2.0 * bar;
    return std::abs(lhs - rhs);
}

double FluxAnalyzer::helicity_flux(int Q) const {
    require(u_.grid().dim() == 3, errc::dimension, "helicity flux requires 3D");
    check_flux_index(Q);
    ensure_omega();
    const auto m = bank_.low_pass_multiplier(Q);
    return tensor_flux(m, *omega_) + wedge_flux(m);
}

double FluxAnalyzer::enstrophy_flux(int Q) const {
    require(u_.grid().dim() == 2, errc::dimension, "enstrophy flux requires 2D");
    check_flux_index(Q);
    return enstrophy_flux_mult(bank_.low_pass_multiplier(Q));
}

const DyadicCoefficients& FluxAnalyzer::energy_coefficients() const {
    if (!d_) d_ = dyadic_coefficients(u_, 1.0 / 3.0, 3.0, bank_);
    return *d_;
}

const DyadicCoefficients& FluxAnalyzer::helicity_coefficients() const {
    if (!b_) {
        // b_q = lambda_q^{1/3} d_q, block norms shared with the energy sequence
        DyadicCoefficients b = energy_coefficients();
        b.s = 2.0 / 3.0;
        for (int q = -1; q <= b.q_max(); ++q)
            b.values[(std::size_t)(q + 1)] *= std::pow(dyadic_scale(q), 1.0 / 3.0);
        b_ = std::move(b);
    }
    return *b_;
}

const DyadicCoefficients& FluxAnalyzer::vorticity_coefficients() const {
    if (!c_) {
        ensure_omega();
        c_ = dyadic_coefficients(*omega_, 0.0, 3.0, bank_);
    }
    return *c_;
}

double FluxAnalyzer::energy_bound(int Q) const {
    const double conv = kernel_convolution({KernelKind::energy_K}, energy_coefficients(), Q);
    return std::pow(conv, 1.5);
}

double FluxAnalyzer::helicity_bound(int Q) const {
    require(u_.grid().dim() == 3, errc::dimension, "helicity bound requires 3D");
    const double conv = kernel_convolution({KernelKind::helicity_T}, helicity_coefficients(), Q);
    return std::pow(conv, 1.5);
}

double FluxAnalyzer::enstrophy_bound(int Q) const {
    require(u_.grid().dim() == 2, errc::dimension, "enstrophy bound requires 2D");
    ensure_omega();
    const double conv = kernel_convolution({KernelKind::enstrophy_W}, vorticity_coefficients(), Q);
    const double sw3 = lp_norm(low_pass(*omega_, Q, bank_), 3.0);
    return sw3 * sw3 * std::sqrt(conv) + std::pow(conv, 1.5);
}

// ---- one-shot wrappers ---------------------------------------------------------

double energy_flux(const Field& u, int Q, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).energy_flux(Q);
}
double shell_flux(const Field& u, int Q0, int Q1, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).shell_flux(Q0, Q1);
}
double shell_identity_residual(const Field& u, int Q0, int Q1, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).shell_identity_residual(Q0, Q1);
}
double helicity_flux(const Field& u, int Q, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).helicity_flux(Q);
}
double enstrophy_flux(const Field& u, int Q, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).enstrophy_flux(Q);
}
double energy_bound(const Field& u, int Q, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).energy_bound(Q);
}
double helicity_bound(const Field& u, int Q, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).helicity_bound(Q);
}
double enstrophy_bound(const Field& u, int Q, const FilterBank& bank) {
    return FluxAnalyzer(u, bank).enstrophy_bound(Q);
}

FluxSeries flux_series(const Field& u, FluxKind kind, int Q_lo, int Q_hi,
                       const FilterBank& bank) {
    require(kind != FluxKind::shell, errc::parameter,
            "shell flux takes explicit (Q0, Q1); use shell_flux");
    require(Q_lo <= Q_hi, errc::index, "flux series requires Q_lo <= Q_hi");
    FluxAnalyzer a(u, bank);
    FluxSeries s;
    s.kind = kind;
    for (int Q = Q_lo; Q <= Q_hi; ++Q) {
        s.Q.push_back(Q);
        switch (kind) {
            case FluxKind::energy: s.flux.push_back(a.energy_flux(Q)); break;
            case FluxKind::helicity: s.flux.push_back(a.helicity_flux(Q)); break;
            case FluxKind::enstrophy: s.flux.push_back(a.enstrophy_flux(Q)); break;
            case FluxKind::shell: break;
        }
    }
    return s;
}

BoundSeries bound_series(const Field& u, FluxKind kind, int Q_lo, int Q_hi,
                         const FilterBank& bank) {
    require(kind != FluxKind::shell, errc::parameter,
            "bound series is defined for energy/helicity/enstrophy");
    require(Q_lo <= Q_hi, errc::index, "bound series requires Q_lo <= Q_hi");
    FluxAnalyzer a(u, bank);
    BoundSeries s;
    s.kind = kind;
    for (int Q = Q_lo; Q <= Q_hi; ++Q) {
        s.Q.push_back(Q);
        switch (kind) {
            case FluxKind::energy: s.bound.push_back(a.energy_bound(Q)); break;
            case FluxKind::helicity: s.bound.push_back(a.helicity_bound(Q)); break;
            case FluxKind::enstrophy: s.bound.push_back(a.enstrophy_bound(Q)); break;
            case FluxKind::shell: break;
        }
    }
    return s;
}

} // namespace lpflux
