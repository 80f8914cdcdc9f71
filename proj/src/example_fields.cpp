#include "lpflux/example_fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "lpflux/besov.hpp"
#include "lpflux/kernels.hpp"
#include "lpflux/spectral_ops.hpp"

namespace lpflux {

using cd = std::complex<double>;

// ---- RNG --------------------------------------------------------------------

double Rng::uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

// ---- envelope -----------------------------------------------------------------

namespace {

Envelope stencil_envelope(const Grid& g, double support_radius,
                          const std::function<double(double)>& coeff_of_freq) {
    Envelope env;
    env.grid = g;
    env.torus = false;
    const int L = g.lattice_denominator();
    const int reach = (int)std::ceil(support_radius * L);
    const int r2max = g.dim() == 2 ? 0 : reach;
    Field rho = Field::spectral_zeros(g, 1);
    auto spec = rho.spec(0);
    for (int m0 = -reach; m0 <= reach; ++m0)
        for (int m1 = -reach; m1 <= reach; ++m1)
            for (int m2 = -r2max; m2 <= r2max; ++m2) {
                const double r = std::sqrt((double)m0 * m0 + (double)m1 * m1 + (double)m2 * m2) /
                                 (double)L;
                const double c = coeff_of_freq(r);
                if (c == 0.0) continue;
                require(g.mode_in_range(0, m0) && g.mode_in_range(1, m1) &&
                            (g.dim() == 2 || g.mode_in_range(2, m2)),
                        errc::resolution, "envelope stencil exceeds the lattice");
                env.offsets.push_back({m0, m1, m2});
                env.coeffs.push_back(c);
                spec[g.flat_index(g.index_of_mode(0, m0), g.index_of_mode(1, m1),
                                  g.dim() == 2 ? 0 : g.index_of_mode(2, m2))] = c;
            }
    // A = integral of rho^3, exact on the 2x grid (band 3/4 < padded Nyquist).
    std::vector<double> pr = padded_physical(g, spec);
    const Grid pg = padded_grid(g);
    env.A = pg.cell_volume() *
            kernels::sum_generate(pr.size(), [&](std::size_t i) { return pr[i] * pr[i] * pr[i]; });
    env.rho = std::move(rho);
    return env;
}

} // namespace

Envelope envelope_rho(const EnvelopeParams& params) {
    const Grid& g = params.grid;
    if (params.variant == EnvelopeVariant::torus) {
        Envelope env;
        env.grid = g;
        env.torus = true;
        env.offsets.push_back({0, 0, 0});
        env.coeffs.push_back(1.0);
        env.A = g.volume();
        Field rho = Field::spectral_zeros(g, 1);
        rho.spec(0)[0] = 1.0;
        env.rho = std::move(rho);
        return env;
    }
    require(g.lattice_denominator() >= 8, errc::resolution,
            "localized envelope requires lattice denominator >= 8");
    ChiProfile chi;
    const double norm = 1.0 / g.volume();
    Envelope env = stencil_envelope(
        g, 0.25, [&](double r) { return chi(4.0 * r) * norm; });
    require(env.A > 0.0, errc::construction, "envelope integral A must be positive");
    return env;
}

Envelope envelope_delta(const Grid& g, double delta) {
    require(g.dim() == 2, errc::dimension, "delta envelope is 2D");
    require(delta >= 4.0 / g.lattice_denominator(), errc::envelope_degeneracy,
            "delta too small for the lattice");
    ChiProfile chi;
    const double amp = std::pow(delta, 2.0 / 3.0 - 2.0) / g.volume();
    Envelope env =
        stencil_envelope(g, delta, [&](double r) { return chi(r / delta) * amp; });
    require(env.A > 0.0, errc::construction, "envelope integral A must be positive");
    return env;
}

// ---- mode tables -----------------------------------------------------------------

void ModeTable::check_hermitian() const {
    for (const auto& e : entries) {
        bool found = false;
        for (const auto& o : entries) {
            if (o.m[0] == -e.m[0] && o.m[1] == -e.m[1] && o.m[2] == -e.m[2]) {
                for (int c = 0; c < 3; ++c)
                    require(std::abs(o.amp[(std::size_t)c] - std::conj(e.amp[(std::size_t)c])) <=
                                1e-14,
                            errc::construction, "mode table is not Hermitian");
                found = true;
                break;
            }
        }
        require(found, errc::construction, "mode table is missing a conjugate partner");
    }
}

Field synthesize(const Grid& g, const ModeTable& table, const Envelope& env) {
    require(env.grid == g, errc::grid_mismatch, "envelope grid mismatch");
    table.check_hermitian();
    const int d = g.dim();
    Field u = Field::spectral_zeros(g, d);
    for (const auto& e : table.entries) {
        for (std::size_t s = 0; s < env.offsets.size(); ++s) {
            int m[3];
            for (int a = 0; a < 3; ++a) m[a] = e.m[(std::size_t)a] + env.offsets[s][(std::size_t)a];
            require(g.mode_in_range(0, m[0]) && g.mode_in_range(1, m[1]) &&
                        (d == 2 || g.mode_in_range(2, m[2])),
                    errc::resolution, "mode table exceeds the lattice");
            const std::size_t idx = g.flat_index(g.index_of_mode(0, m[0]), g.index_of_mode(1, m[1]),
                                                 d == 2 ? 0 : g.index_of_mode(2, m[2]));
            for (int c = 0; c < d; ++c) u.spec(c)[idx] += e.amp[(std::size_t)c] * env.coeffs[s];
        }
    }
    return leray_project(u);
}

namespace {

void push_pair(ModeTable& t, int k0, int k1, int L, cd a0, cd a1, cd a2) {
    ModeEntry e;
    e.m = {k0 * L, k1 * L, 0};
    e.amp = {a0, a1, a2};
    t.entries.push_back(e);
    ModeEntry c;
    c.m = {-k0 * L, -k1 * L, 0};
    c.amp = {std::conj(a0), std::conj(a1), std::conj(a2)};
    t.entries.push_back(c);
}

} // namespace

ModeTable eyink_energy_table(int q_lo, int q_hi, int L) {
    require(0 <= q_lo && q_lo <= q_hi, errc::parameter, "invalid dyadic range");
    ModeTable t;
    for (int q = q_lo; q <= q_hi; ++q) {
        const int lam = (int)dyadic_scale(q);
        const double a = std::pow((double)lam, -1.0 / 3.0);
        const cd ia(0.0, a);
        push_pair(t, lam, 0, L, 0.0, 0.0, -ia);      // U(+lam e1) = i a (0,0,-1)
        push_pair(t, 0, lam, L, ia, 0.0, ia);        // U(+lam e2) = i a (1,0,1)
        push_pair(t, lam, lam, L, 0.0, 0.0, ia);     // U(lam,lam) = i a (0,0,1)
        push_pair(t, lam, -lam, L, ia, ia, -ia);     // U(lam,-lam) = i a (1,1,-1)
    }
    return t;
}

ModeTable eyink_helicity_table(int q_lo, int q_hi, int L) {
    require(0 <= q_lo && q_lo <= q_hi, errc::parameter, "invalid dyadic range");
    ModeTable t;
    for (int q = q_lo; q <= q_hi; ++q) {
        const int lam = (int)dyadic_scale(q);
        const cd a(std::pow((double)lam, -2.0 / 3.0), 0.0);
        push_pair(t, lam, 0, L, 0.0, 0.0, -a);
        push_pair(t, 0, lam, L, a, 0.0, a);
        push_pair(t, lam, lam, L, 0.0, 0.0, a);
        push_pair(t, lam, -lam, L, a, a, -a);
    }
    return t;
}

namespace {

void check_eyink_resolution(const Grid& g, int q_hi) {
    require(g.dim() == 3, errc::dimension, "construction requires a 3D grid");
    const double need = 2.0 * dyadic_scale(q_hi);
    require(need <= g.nyquist(0) && need <= g.nyquist(1), errc::resolution,
            "grid too small on axes 1,2 for the requested dyadic range");
}

} // namespace

Field eyink_energy_field(const Grid& g, int q_lo, int q_hi, const Envelope& env) {
    check_eyink_resolution(g, q_hi);
    return synthesize(g, eyink_energy_table(q_lo, q_hi, g.lattice_denominator()), env);
}

Field eyink_helicity_field(const Grid& g, int q_lo, int q_hi, const Envelope& env) {
    check_eyink_resolution(g, q_hi);
    return synthesize(g, eyink_helicity_table(q_lo, q_hi, g.lattice_denominator()), env);
}

Field enstrophy_nonlocal_field(const Grid& g, int Q, double delta, int shells_lo,
                               int shells_hi) {
    require(g.dim() == 2, errc::dimension, "enstrophy construction is 2D");
    require(Q >= 0 && shells_lo >= 0 && shells_lo <= shells_hi && shells_hi <= Q, errc::index,
            "invalid shell limits");
    const double lam_top = dyadic_scale(Q + 2);
    require(lam_top <= g.nyquist(0) / 2.0 && lam_top <= g.nyquist(1) / 2.0, errc::resolution,
            "grid too small for lambda_{Q+2}");
    const int L = g.lattice_denominator();
    Envelope env = envelope_delta(g, delta);

    const int m_top = (int)std::lround(lam_top * L);
    ModeTable t;
    auto push_sin = [&](std::array<int, 2> m, std::array<double, 2> U) {
        // sin(k.x) = (e^{ikx} - e^{-ikx}) / (2i): amplitudes -i U / 2 and +i U / 2
        ModeEntry e;
        e.m = {m[0], m[1], 0};
        e.amp = {cd(0.0, -0.5) * U[0], cd(0.0, -0.5) * U[1], 0.0};
        t.entries.push_back(e);
        ModeEntry c;
        c.m = {-m[0], -m[1], 0};
        c.amp = {cd(0.0, 0.5) * U[0], cd(0.0, 0.5) * U[1], 0.0};
        t.entries.push_back(c);
    };

    for (int q = shells_lo; q <= shells_hi; ++q) {
        const double theta = std::asin(dyadic_scale(q - Q - 2));
        const double lam_q = dyadic_scale(q);
        // snap k_l to the lattice, then set k_h by subtraction so the pair sum
        // (lambda_{Q+2}, 0) is exact
        const int ml0 = (int)std::lround(lam_q * std::sin(theta) * L);
        const int ml1 = (int)std::lround(lam_q * std::cos(theta) * L);
        const std::array<int, 2> ml = {ml0, ml1};
        const std::array<int, 2> mh = {m_top - ml0, -ml1};
        push_sin(ml, {std::cos(theta), -std::sin(theta)});
        push_sin(mh, {std::sin(theta), std::cos(theta)});
    }
    push_sin({m_top, 0}, {0.0, 1.0}); // u_{Q+1}, V = (0,1)
    return synthesize(g, t, env);
}

// ---- divergence-growth sequence -----------------------------------------------------

namespace {

// Scalar bump band-limited to |xi| <= 1/4, Hermitian, deterministic in seed.
Field seeded_bump(const Grid& g, std::uint64_t seed) {
    const int L = g.lattice_denominator();
    const int reach = L / 4;
    Field psi = Field::spectral_zeros(g, 1);
    auto spec = psi.spec(0);
    Rng rng(seed);
    for (int m0 = -reach; m0 <= reach; ++m0)
        for (int m1 = -reach; m1 <= reach; ++m1)
            for (int m2 = -reach; m2 <= reach; ++m2) {
                if (m0 == 0 && m1 == 0 && m2 == 0) continue;
                const double r2 = (double)(m0 * m0 + m1 * m1 + m2 * m2) / (double)(L * L);
                if (r2 > 1.0 / 16.0) continue;
                // canonical representative: first nonzero coordinate positive
                if (m0 < 0 || (m0 == 0 && (m1 < 0 || (m1 == 0 && m2 < 0)))) continue;
                const cd a(rng.normal(), rng.normal());
                spec[g.flat_index(g.index_of_mode(0, m0), g.index_of_mode(1, m1),
                                  g.index_of_mode(2, m2))] = a;
                spec[g.flat_index(g.index_of_mode(0, -m0), g.index_of_mode(1, -m1),
                                  g.index_of_mode(2, -m2))] = std::conj(a);
            }
    return psi;
}

double cubed_integral(const Grid& g, std::span<const cd> spec) {
    std::vector<double> p = padded_physical(g, spec);
    return padded_grid(g).cell_volume() *
           kernels::sum_generate(p.size(), [&](std::size_t i) { return p[i] * p[i] * p[i]; });
}

} // namespace

ParaproductSequence paraproduct_sequence(const Grid& g, int n_max, std::uint64_t seed) {
    require(g.dim() == 3, errc::dimension, "paraproduct sequence requires a 3D grid");
    require(g.lattice_denominator() >= 8, errc::resolution, "lattice denominator must be >= 8");
    require(n_max >= 1, errc::parameter, "n_max must be >= 1");
    const int L = g.lattice_denominator();
    require(dyadic_scale(n_max) + 0.5 <= g.nyquist(0), errc::resolution,
            "axis 1 too small for lambda_n modes");

    // u = curl(0,0,psi): u1 = d2 psi. Retry seeds until the cubic integral of
    // u1 is robustly positive.
    ParaproductSequence out;
    double A = 0.0;
    Field u;
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        Field psi = seeded_bump(g, seed + 0x9E3779B97F4A7C15ull * (std::uint64_t)attempt);
        std::vector<cd> u0(psi.spec(0).begin(), psi.spec(0).end());
        std::vector<cd> u1m(psi.spec(0).begin(), psi.spec(0).end());
        differentiate_inplace(g, u0, 1);  // d2 psi
        differentiate_inplace(g, u1m, 0); // d1 psi
        u = Field::spectral_zeros(g, 3);
        std::copy(u0.begin(), u0.end(), u.spec(0).begin());
        for (std::size_t i = 0; i < u1m.size(); ++i) u.spec(1)[i] = -u1m[i];
        A = cubed_integral(g, u.spec(0));
        const double scale = lp_norm(component(u, 0), 3.0);
        ok = scale > 0.0 && A > 0.01 * scale * scale * scale;
    }
    require(ok, errc::construction, "failed to reach a positive cubic integral");
    out.u = u;
    out.A = A;

    // Phi = (0, u1, 0)
    Field phi = Field::spectral_zeros(g, 3);
    std::copy(u.spec(0).begin(), u.spec(0).end(), phi.spec(1).begin());
    out.phi = phi;

    // collect Phi's compact stencil once
    std::vector<std::pair<std::array<int, 3>, cd>> stencil;
    {
        auto s = phi.spec(1);
        for (int i0 = 0; i0 < g.size(0); ++i0)
            for (int i1 = 0; i1 < g.size(1); ++i1)
                for (int i2 = 0; i2 < g.size(2); ++i2) {
                    const cd v = s[g.flat_index(i0, i1, i2)];
                    if (v == cd(0.0, 0.0)) continue;
                    stencil.push_back({{g.mode_of_index(0, i0), g.mode_of_index(1, i1),
                                        g.mode_of_index(2, i2)},
                                       v});
                }
    }

    Field v_acc = Field::spectral_zeros(g, 3);
    Field w_acc = Field::spectral_zeros(g, 3);
    for (int n = 1; n <= n_max; ++n) {
        const int shift = (int)dyadic_scale(n) * L;
        const double a_n = 1.0 / std::sqrt((double)n);
        const double w_amp = a_n / std::sqrt(dyadic_scale(n));
        for (const auto& [m, c] : stencil) {
            for (int sgn : {+1, -1}) {
                const int m0 = m[0] + sgn * shift;
                require(g.mode_in_range(0, m0), errc::resolution,
                        "modulated mode exceeds the lattice");
                const std::size_t idx =
                    g.flat_index(g.index_of_mode(0, m0), g.index_of_mode(1, m[1]),
                                 g.index_of_mode(2, m[2]));
                // sin: -+ i/2, cos: 1/2 at both shifts
                v_acc.spec(1)[idx] += w_amp * cd(0.0, sgn < 0 ? 0.5 : -0.5) * c;
                w_acc.spec(1)[idx] += w_amp * 0.5 * c;
            }
        }
        out.v.push_back(leray_project(v_acc));
        out.w.push_back(leray_project(w_acc));
    }
    return out;
}

// ---- random fields ---------------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> shell_mode_sets(const Grid& g, int shells) {
    // canonical (positive-representative) lattice modes with |xi| within
    // [0.93, 1.17] lambda_q, where phi_q is within ~1% of 1
    std::vector<std::vector<std::size_t>> sets((std::size_t)shells);
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
                const int m0 = g.mode_of_index(0, i0);
                const int m1 = g.mode_of_index(1, i1);
                const int m2 = g.dim() == 2 ? 0 : g.mode_of_index(2, i2);
                if (m0 < 0 || (m0 == 0 && (m1 < 0 || (m1 == 0 && m2 < 0)))) continue;
                if (m0 == 0 && m1 == 0 && m2 == 0) continue;
                // skip modes whose mirror is themselves (Nyquist planes)
                if (!g.mode_in_range(0, -m0) || !g.mode_in_range(1, -m1) ||
                    (g.dim() == 3 && !g.mode_in_range(2, -m2)))
                    continue;
                const double r = std::sqrt((double)m0 * m0 + (double)m1 * m1 + (double)m2 * m2) /
                                 g.lattice_denominator();
                for (int q = 0; q < shells; ++q) {
                    const double lam = dyadic_scale(q);
                    if (r >= 0.93 * lam && r <= 1.17 * lam)
                        sets[(std::size_t)q].push_back(g.flat_index(i0, i1, i2));
                }
            }
    return sets;
}

void fill_shell(Field& u, const Grid& g, std::span<const std::size_t> modes, double amp,
                Rng& rng) {
    const int d = g.dim();
    for (std::size_t idx : modes) {
        // recover the lattice index to place the conjugate
        const int n1 = g.size(1), n2 = g.size(2);
        const int i2 = (int)(idx % (std::size_t)n2);
        const int i1 = (int)((idx / (std::size_t)n2) % (std::size_t)n1);
        const int i0 = (int)(idx / ((std::size_t)n2 * (std::size_t)n1));
        const double k[3] = {g.freq_of_index(0, i0), g.freq_of_index(1, i1),
                             d == 2 ? 0.0 : g.freq_of_index(2, i2)};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        cd a[3] = {};
        for (int c = 0; c < d; ++c) a[c] = amp * cd(rng.normal(), rng.normal());
        // project orthogonal to k so the field is divergence-free mode by mode
        cd kdota(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdota += k[c] * a[c];
        for (int c = 0; c < d; ++c) a[c] -= kdota / k2 * k[c];
        const std::size_t midx =
            g.flat_index(g.index_of_mode(0, -g.mode_of_index(0, i0)),
                         g.index_of_mode(1, -g.mode_of_index(1, i1)),
                         d == 2 ? 0 : g.index_of_mode(2, -g.mode_of_index(2, i2)));
        for (int c = 0; c < d; ++c) {
            u.spec(c)[idx] += a[c];
            u.spec(c)[midx] += std::conj(a[c]);
        }
    }
}

} // namespace

Field random_spectrum_field(const Grid& g, const std::vector<double>& profile,
                            std::uint64_t seed) {
    ChiProfile chi;
    FilterBank bank(g, chi);
    require((int)profile.size() <= bank.q_max() + 1, errc::parameter,
            "profile longer than the usable dyadic range");
    const int shells = (int)profile.size();
    auto sets = shell_mode_sets(g, shells);
    for (int q = 0; q < shells; ++q)
        require(profile[(std::size_t)q] == 0.0 || !sets[(std::size_t)q].empty(),
                errc::construction, "profile requests an empty lattice shell");

    Rng rng(seed);
    Field u = Field::spectral_zeros(g, g.dim());
    for (int q = 0; q < shells; ++q)
        if (profile[(std::size_t)q] > 0.0)
            fill_shell(u, g, sets[(std::size_t)q], 1.0, rng);

    // two calibration passes; shells are disjoint so this converges immediately
    for (int pass = 0; pass < 2; ++pass) {
        DyadicCoefficients d = dyadic_coefficients(u, 1.0 / 3.0, 3.0, bank);
        for (int q = 0; q < shells; ++q) {
            if (profile[(std::size_t)q] <= 0.0) continue;
            const double measured = d.at(q);
            if (measured <= 0.0) continue;
            const double f = profile[(std::size_t)q] / measured;
            for (std::size_t idx : sets[(std::size_t)q]) {
                const int n1 = g.size(1), n2 = g.size(2);
                const int i2 = (int)(idx % (std::size_t)n2);
                const int i1 = (int)((idx / (std::size_t)n2) % (std::size_t)n1);
                const int i0 = (int)(idx / ((std::size_t)n2 * (std::size_t)n1));
                const std::size_t midx =
                    g.flat_index(g.index_of_mode(0, -g.mode_of_index(0, i0)),
                                 g.index_of_mode(1, -g.mode_of_index(1, i1)),
                                 g.dim() == 2 ? 0 : g.index_of_mode(2, -g.mode_of_index(2, i2)));
                for (int c = 0; c < g.dim(); ++c) {
                    u.spec(c)[idx] *= f;
                    u.spec(c)[midx] *= f;
                }
            }
        }
    }
    // final verification
    DyadicCoefficients d = dyadic_coefficients(u, 1.0 / 3.0, 3.0, bank);
    for (int q = 0; q < shells; ++q) {
        if (profile[(std::size_t)q] <= 0.0) continue;
        require(std::abs(d.at(q) - profile[(std::size_t)q]) <= 0.1 * profile[(std::size_t)q],
                errc::construction, "measured coefficients missed the profile by > 10%");
    }
    return u;
}

Field random_divergence_free_field(const Grid& g, std::uint64_t seed) {
    ChiProfile chi;
    FilterBank bank(g, chi);
    std::vector<double> profile;
    // mild rolloff keeps all shells active without dominating any single one
    for (int q = 0; q <= bank.q_max() - 1; ++q)
        profile.push_back(std::pow(2.0, -(double)q / 3.0));
    return random_spectrum_field(g, profile, seed);
}

} // namespace lpflux
