#include "lpflux/bilinear.hpp"

#include <cmath>

#include "lpflux/besov.hpp"
#include "lpflux/example_fields.hpp"
#include "lpflux/fft.hpp"
#include "lpflux/kernels.hpp"
#include "lpflux/spectral_ops.hpp"

namespace lpflux {

using cd = std::complex<double>;

namespace {

std::vector<std::vector<double>> padded_components(const Field& f) {
    std::vector<std::vector<double>> out;
    for (int c = 0; c < f.ncomp(); ++c) out.push_back(padded_physical(f.grid(), f.spec(c)));
    return out;
}

std::vector<double> padded_derivative(const Grid& g, std::span<const cd> spec, int axis) {
    std::vector<cd> d(spec.begin(), spec.end());
    differentiate_inplace(g, d, axis);
    return padded_physical(g, d);
}

// Lambda H applied to the product spectra T[j*d + l] = F(a_j b_l).
Field hodge_from_products(const Grid& g, const std::vector<std::vector<cd>>& T) {
    const int d = g.dim();
    Field out = Field::spectral_zeros(g, d);
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
    std::array<std::span<cd>, 3> o{};
    for (int c = 0; c < d; ++c) o[(std::size_t)c] = out.spec(c);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
                const std::size_t i =
                    ((std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1) * (std::size_t)n2 +
                    (std::size_t)i2;
                const double k[3] = {f0[(std::size_t)i0], f1[(std::size_t)i1],
                                     f2[(std::size_t)i2]};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue;
                cd quad(0.0, 0.0); // k_k k_l T_kl
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) quad += k[a] * k[b] * T[(std::size_t)(a * d + b)][i];
                for (int c = 0; c < d; ++c) {
                    cd div(0.0, 0.0); // k_j T_jc
                    for (int j = 0; j < d; ++j) div += k[j] * T[(std::size_t)(j * d + c)][i];
                    o[(std::size_t)c][i] = cd(0.0, 1.0) * (div - k[c] * quad / k2);
                }
            }
    return out;
}

} // namespace

Field advective_term(const Field& u_in, const Field& v_in) {
    Field u = ensure_spectral(u_in);
    Field v = ensure_spectral(v_in);
    require(u.grid().dim() == 3, errc::dimension, "advective term requires a 3D grid");
    require(u.grid() == v.grid(), errc::grid_mismatch, "advective term: grid mismatch");
    require(u.is_vector() && v.is_vector(), errc::arity, "advective term expects vector fields");
    require_divergence_free(u, "advective_term");
    const Grid& g = u.grid();
    const Grid pg = padded_grid(g);
    auto pu = padded_components(u);

    Field out = Field::spectral_zeros(g, 3);
    for (int i = 0; i < 3; ++i) {
        std::vector<double> acc(pg.num_points(), 0.0);
        for (int j = 0; j < 3; ++j) {
            auto dv = padded_derivative(g, v.spec(i), j);
            kernels::multiply_add(acc, pu[(std::size_t)j], dv);
        }
        std::vector<cd> buf(pg.num_points());
        const long long n = (long long)buf.size();
#pragma omp parallel for schedule(static)
        for (long long t = 0; t < n; ++t) buf[(std::size_t)t] = cd(acc[(std::size_t)t], 0.0);
        fft::forward(pg, buf);
        kernels::scale(buf, 1.0 / (double)pg.num_points());
        auto tr = truncate_spectrum(pg, buf, g);
        std::copy(tr.begin(), tr.end(), out.spec(i).begin());
    }
    return leray_project(out);
}

Field hodge_form(const Field& u_in, const Field& v_in) {
    Field u = ensure_spectral(u_in);
    Field v = ensure_spectral(v_in);
    require(u.grid().dim() == 3, errc::dimension, "hodge form requires a 3D grid");
    require(u.grid() == v.grid(), errc::grid_mismatch, "hodge form: grid mismatch");
    require(u.is_vector() && v.is_vector(), errc::arity, "hodge form expects vector fields");
    const Grid& g = u.grid();
    auto pu = padded_components(u);
    auto pv = padded_components(v);
    std::vector<std::vector<cd>> T;
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
            T.push_back(product_spectrum(g, pu[(std::size_t)j], pv[(std::size_t)l]));
    return hodge_from_products(g, T);
}

double trilinear(const Field& u_in, const Field& v_in, const Field& w_in) {
    Field u = ensure_spectral(u_in);
    Field v = ensure_spectral(v_in);
    Field w = ensure_spectral(w_in);
    require(u.grid() == v.grid() && u.grid() == w.grid(), errc::grid_mismatch,
            "trilinear: grid mismatch");
    require(u.is_vector() && v.is_vector() && w.is_vector(), errc::arity,
            "trilinear expects vector fields");
    require_divergence_free(u, "trilinear");
    const Grid& g = u.grid();
    const Grid pg = padded_grid(g);
    auto pu = padded_components(u);
    const double cv = pg.cell_volume();
    // triple products of fields band-limited to the original lattice stay
    // below the padded wrap, so this quadrature is exact
    double total = 0.0;
    for (int i = 0; i < g.dim(); ++i) {
        auto pw = padded_physical(g, w.spec(i));
        for (int j = 0; j < g.dim(); ++j) {
            auto dv = padded_derivative(g, v.spec(i), j);
            total += cv * kernels::sum_generate(dv.size(), [&](std::size_t t) {
                return pu[(std::size_t)j][t] * dv[t] * pw[t];
            });
        }
    }
    return total;
}

// ---- paraproduct split -------------------------------------------------------------

namespace {

struct BlockCache {
    const Field* f = nullptr;
    const FilterBank* bank = nullptr;
    // padded physical components of Delta_p f (p+1 slot) and S_p f
    std::vector<std::vector<std::vector<double>>> block, low;

    BlockCache(const Field& field, const FilterBank& b)
        : f(&field), bank(&b), block((std::size_t)b.q_max() + 2), low((std::size_t)b.q_max() + 2) {}

    const std::vector<std::vector<double>>& block_phys(int p) {
        auto& slot = block[(std::size_t)(p + 1)];
        if (slot.empty()) slot = padded_components(dyadic_block(*f, p, *bank));
        return slot;
    }
    const std::vector<std::vector<double>>& low_phys(int p) {
        auto& slot = low[(std::size_t)(p + 1)];
        if (slot.empty()) slot = padded_components(low_pass(*f, p, *bank));
        return slot;
    }
};

Field hodge_pair(const Grid& g, const std::vector<std::vector<double>>& pa,
                 const std::vector<std::vector<double>>& pb) {
    const int d = g.dim();
    std::vector<std::vector<cd>> T;
    for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) T.push_back(product_spectrum(g, pa[(std::size_t)j], pb[(std::size_t)l]));
    return hodge_from_products(g, T);
}

} // namespace

ParaproductSplit paraproduct_split(const Field& u_in, const Field& v_in, int q,
                                   const FilterBank& bank) {
    Field u = ensure_spectral(u_in);
    Field v = ensure_spectral(v_in);
    require(u.grid().dim() == 3, errc::dimension, "paraproduct split requires a 3D grid");
    require_divergence_free(u, "paraproduct_split");
    bank.check_block_index(q);
    const Grid& g = u.grid();
    const int qm = bank.q_max();

    BlockCache cu(u, bank), cv(v, bank);
    Field C_acc = Field::spectral_zeros(g, 3);
    for (int p = std::max(-1, q - 2); p <= qm; ++p)
        for (int pp = std::max(-1, p - 2); pp <= std::min(qm, p + 2); ++pp)
            C_acc = add(C_acc, hodge_pair(g, cu.block_phys(p), cv.block_phys(pp)));

    Field I_acc = Field::spectral_zeros(g, 3);
    for (int j = -2; j <= 2; ++j) {
        const int bq = q + j;
        const int sq = q + j - 2;
        if (bq < -1 || bq > qm || sq < -1) continue;
        I_acc = add(I_acc, hodge_pair(g, cu.low_phys(sq), cv.block_phys(bq)));
        I_acc = add(I_acc, hodge_pair(g, cv.low_phys(sq), cu.block_phys(bq)));
    }

    ParaproductSplit out;
    out.q = q;
    out.C_part = dyadic_block(C_acc, q, bank);
    out.I_part = dyadic_block(I_acc, q, bank);
    return out;
}

double paraproduct_residual(const Field& u, const Field& v, int q, const FilterBank& bank) {
    ParaproductSplit s = paraproduct_split(u, v, q, bank);
    Field b = dyadic_block(hodge_form(u, v), q, bank);
    const double denom = l2_norm(b);
    if (denom == 0.0) return 0.0;
    return l2_norm(subtract(b, add(s.C_part, s.I_part))) / denom;
}

// ---- inequality survey ----------------------------------------------------------------

InequalityRatios inequality_report(const Grid& grid, int ensemble, std::uint64_t seed,
                                   const FilterBank& bank) {
    require(grid.dim() == 3, errc::dimension, "inequality survey requires a 3D grid");
    InequalityRatios out;
    out.ensemble = ensemble;
    const BesovParams b13{1.0 / 3.0, 3.0, 2.0};
    const BesovParams b13n{-1.0 / 3.0, 1.5, 2.0};
    const BesovParams b23n{-2.0 / 3.0, 9.0 / 5.0, 2.0};
    const BesovParams b12{0.5, 18.0 / 7.0, 2.0};

    for (int e = 0; e < ensemble; ++e) {
        const std::uint64_t s = seed + 101ull * (std::uint64_t)e;
        Field u = random_divergence_free_field(grid, s);
        Field v = random_divergence_free_field(grid, s + 1);
        Field w = random_divergence_free_field(grid, s + 2);

        // aggregate C and I by summing the split over q
        Field C = Field::spectral_zeros(grid, 3);
        Field I = Field::spectral_zeros(grid, 3);
        for (int q = -1; q <= bank.q_max(); ++q) {
            ParaproductSplit sp = paraproduct_split(u, v, q, bank);
            C = add(C, sp.C_part);
            I = add(I, sp.I_part);
        }
        const double nu = besov_norm(u, b13, bank);
        const double nv = besov_norm(v, b13, bank);
        if (nu > 0.0 && nv > 0.0) {
            out.comparable = std::max(out.comparable, besov_norm(C, b13n, bank) / (nu * nv));
            out.low_high = std::max(out.low_high, besov_norm(I, b23n, bank) / (nu * nv));
        }

        const double tri = std::abs(inner_product(advective_term(u, v), w));
        const double d = besov_norm(u, b12, bank) * besov_norm(v, b12, bank) *
                         besov_norm(w, b12, bank);
        if (d > 0.0) out.trilinear = std::max(out.trilinear, tri / d);

        double sup_low = 0.0;
        for (int q = 0; q <= bank.q_max(); ++q)
            sup_low = std::max(sup_low, lp_norm(low_pass(u, q, bank), 4.5));
        if (nu > 0.0) out.low_pass_aux = std::max(out.low_pass_aux, sup_low / nu);
    }
    return out;
}

GrowthSeries divergence_growth(const Grid& grid, int n_max, std::uint64_t seed) {
    ParaproductSequence seq = paraproduct_sequence(grid, n_max, seed);
    GrowthSeries out;
    out.A = seq.A;
    double partial = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        partial += 1.0 / (double)n; // a_n^2 = 1/n
        out.n.push_back(n);
        out.value.push_back(trilinear(seq.u, seq.v[(std::size_t)(n - 1)],
                                      seq.w[(std::size_t)(n - 1)]));
        out.predicted.push_back(seq.A * partial);
    }
    return out;
}

} // namespace lpflux
