#include "lpflux/filter_bank.hpp"

#include <algorithm>
#include <string>

#include "lpflux/kernels.hpp"
#include "lpflux/spectral_ops.hpp"

namespace lpflux {

double ChiProfile::squared_lipschitz() const {
    // chi^2 only varies on [1/2, 1]; sample the derivative finely.
    const int n = 200000;
    double c = 0.0;
    const double h = 0.5 / n;
    for (int i = 0; i <= n; ++i) {
        const double r = 0.5 + i * 0.5 / n;
        const double lo = (*this)(std::max(0.5, r - h));
        const double hi = (*this)(std::min(1.0, r + h));
        const double slope = std::abs(hi * hi - lo * lo) / (2.0 * h);
        c = std::max(c, slope);
    }
    return c;
}

FilterBank::FilterBank(const Grid& grid, const ChiProfile& chi) : grid_(grid) {
    // Largest q with lambda_{q+1} <= max_i Nyquist_i, so the top band is
    // present on the lattice even when some axes are thin.
    const double ny = grid.max_nyquist();
    int qm = -1;
    while (dyadic_scale(qm + 2) <= ny) ++qm;
    require(qm >= 0, errc::resolution, "grid too small for dyadic index q = 0");
    q_max_ = qm;

    const int n0 = grid.size(0), n1 = grid.size(1), n2 = grid.size(2);
    const auto f0 = grid.freq_table(0), f1 = grid.freq_table(1), f2 = grid.freq_table(2);

    chi_.assign((std::size_t)q_max_ + 2, std::vector<double>(grid.num_points()));
    for (int l = 0; l <= q_max_ + 1; ++l) {
        const double inv_scale = 1.0 / dyadic_scale(l);
        auto& arr = chi_[(std::size_t)l];
#pragma omp parallel for schedule(static)
        for (long long i0 = 0; i0 < n0; ++i0)
            for (int i1 = 0; i1 < n1; ++i1)
                for (int i2 = 0; i2 < n2; ++i2) {
                    const double k0 = f0[(std::size_t)i0], k1 = f1[(std::size_t)i1],
                                 k2 = f2[(std::size_t)i2];
                    const double r = std::sqrt(k0 * k0 + k1 * k1 + k2 * k2);
                    arr[grid.flat_index((int)i0, i1, i2)] = chi(r * inv_scale);
                }
    }

    phi_.assign((std::size_t)q_max_ + 1, std::vector<double>(grid.num_points()));
    for (int q = 0; q <= q_max_; ++q) {
        const auto& hi = chi_[(std::size_t)q + 1];
        const auto& lo = chi_[(std::size_t)q];
        auto& arr = phi_[(std::size_t)q];
        const long long n = (long long)arr.size();
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i)
            arr[(std::size_t)i] = hi[(std::size_t)i] - lo[(std::size_t)i];
    }
}

void FilterBank::check_block_index(int q) const {
    require(q >= -1 && q <= q_max_, errc::index,
            "dyadic index " + std::to_string(q) + " outside [-1, " + std::to_string(q_max_) + "]");
}

void FilterBank::check_low_pass_index(int Q) const { check_block_index(Q); }

std::span<const double> FilterBank::low_pass_multiplier(int Q) const {
    check_low_pass_index(Q);
    return chi_[(std::size_t)(Q + 1)];
}

std::span<const double> FilterBank::block_multiplier(int q) const {
    check_block_index(q);
    if (q == -1) return chi_[0];
    return phi_[(std::size_t)q];
}

std::vector<double> FilterBank::shell_multiplier(int Q0, int Q1) const {
    require(Q0 >= -1 && Q0 <= Q1 && Q1 <= q_max_, errc::index, "invalid shell band indices");
    const auto hi = low_pass_multiplier(Q1);
    std::vector<double> out(hi.begin(), hi.end());
    if (Q0 >= 0) {
        const auto lo = low_pass_multiplier(Q0 - 1);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= lo[i];
    }
    return out;
}

std::vector<double> FilterBank::bar_multiplier(int Q0) const {
    require(Q0 >= 1 && Q0 <= q_max_, errc::index, "bar block index outside [1, q_max]");
    const auto a = block_multiplier(Q0 - 1);
    const auto b = block_multiplier(Q0);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(0.0, a[i] * b[i]));
    return out;
}

namespace {
Field apply_multiplier_field(const Field& u_in, std::span<const double> mult) {
    Field u = ensure_spectral(u_in);
    for (int c = 0; c < u.ncomp(); ++c) kernels::apply_multiplier(u.spec(c), mult);
    return u;
}
} // namespace

Field dyadic_block(const Field& u, int q, const FilterBank& bank) {
    return apply_multiplier_field(u, bank.block_multiplier(q));
}

Field low_pass(const Field& u, int Q, const FilterBank& bank) {
    return apply_multiplier_field(u, bank.low_pass_multiplier(Q));
}

Field shell_band(const Field& u, int Q0, int Q1, const FilterBank& bank) {
    return apply_multiplier_field(u, bank.shell_multiplier(Q0, Q1));
}

Field bar_block(const Field& u, int Q0, const FilterBank& bank) {
    return apply_multiplier_field(u, bank.bar_multiplier(Q0));
}

double multiplier_identity_residual(int Q0, int Q1, const FilterBank& bank) {
    require(Q0 >= 1 && Q0 <= Q1 && Q1 <= bank.q_max(), errc::index,
            "multiplier identity requires 1 <= Q0 <= Q1 <= q_max");
    const auto band = bank.shell_multiplier(Q0, Q1);
    const auto s1 = bank.low_pass_multiplier(Q1);
    const auto s0 = bank.low_pass_multiplier(Q0 - 1);
    const auto bar = bank.bar_multiplier(Q0);
    double res = 0.0;
    for (std::size_t i = 0; i < band.size(); ++i) {
        const double lhs = band[i] * band[i];
        const double rhs = s1[i] * s1[i] - s0[i] * s0[i] - 2.0 * bar[i] * bar[i];
        res = std::max(res, std::abs(lhs - rhs));
    }
    return res;
}

double partition_of_unity_residual(const FilterBank& bank) {
    const Grid& g = bank.grid();
    const double limit = dyadic_scale(bank.q_max());
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const auto chi0 = bank.block_multiplier(-1);
    double res = 0.0;
    for (int i0 = 0; i0 < g.size(0); ++i0)
        for (int i1 = 0; i1 < g.size(1); ++i1)
            for (int i2 = 0; i2 < g.size(2); ++i2) {
                const double k0 = f0[(std::size_t)i0], k1 = f1[(std::size_t)i1],
                             k2 = f2[(std::size_t)i2];
                if (std::sqrt(k0 * k0 + k1 * k1 + k2 * k2) > limit) continue;
                const std::size_t i = g.flat_index(i0, i1, i2);
                double s = chi0[i];
                for (int q = 0; q <= bank.q_max(); ++q) s += bank.block_multiplier(q)[i];
                res = std::max(res, std::abs(s - 1.0));
            }
    return res;
}

double support_disjointness_max(const FilterBank& bank) {
    double worst = 0.0;
    for (int q = 0; q <= bank.q_max(); ++q)
        for (int p = q + 2; p <= bank.q_max(); ++p) {
            const auto a = bank.block_multiplier(q);
            const auto b = bank.block_multiplier(p);
            for (std::size_t i = 0; i < a.size(); ++i)
                worst = std::max(worst, std::abs(a[i] * b[i]));
        }
    return worst;
}

} // namespace lpflux
