#include <doctest.h>

#include <cmath>

#include "lpflux/example_fields.hpp"
#include "lpflux/flux.hpp"
#include "lpflux/spectral_ops.hpp"
#include "lpflux/triad_oracle.hpp"

using namespace lpflux;

namespace {

double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// divergence-free field band-limited to |m| <= reach, so S_Q acts as the
// identity on it and on its quadratic products when lambda_{Q+1} >= 4 reach
Field tight_band_field(const Grid& g, int reach, std::uint64_t seed) {
    Rng rng(seed);
    Field u = Field::spectral_zeros(g, g.dim());
    const int d = g.dim();
    for (int m0 = -reach; m0 <= reach; ++m0)
        for (int m1 = -reach; m1 <= reach; ++m1)
            for (int m2 = d == 2 ? 0 : -reach; m2 <= (d == 2 ? 0 : reach); ++m2) {
                if (m0 == 0 && m1 == 0 && m2 == 0) continue;
                if (m0 * m0 + m1 * m1 + m2 * m2 > reach * reach) continue;
                if (m0 < 0 || (m0 == 0 && (m1 < 0 || (m1 == 0 && m2 < 0)))) continue;
                const std::size_t ip =
                    g.flat_index(g.index_of_mode(0, m0), g.index_of_mode(1, m1),
                                 d == 2 ? 0 : g.index_of_mode(2, m2));
                const std::size_t im =
                    g.flat_index(g.index_of_mode(0, -m0), g.index_of_mode(1, -m1),
                                 d == 2 ? 0 : g.index_of_mode(2, -m2));
                for (int c = 0; c < d; ++c) {
                    const std::complex<double> a(rng.normal(), rng.normal());
                    u.spec(c)[ip] = a;
                    u.spec(c)[im] = std::conj(a);
                }
            }
    return leray_project(u);
}

} // namespace

TEST_SUITE("flux") {

TEST_CASE("zero fields and input checks") {
    Grid g(3, {32, 32, 32}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Field z = Field::spectral_zeros(g, 3);
    FluxAnalyzer a(z, bank);
    CHECK(a.energy_flux(1) == 0.0);
    CHECK(a.helicity_flux(1) == 0.0);
    CHECK(a.shell_flux(1, 2) == 0.0);
    CHECK(a.energy_bound(1) == 0.0);

    // non-divergence-free input is rejected
    Field bad = Field::spectral_zeros(g, 3);
    bad.spec(0)[g.flat_index(g.index_of_mode(0, 2), 0, 0)] = 1.0;
    bad.spec(0)[g.flat_index(g.index_of_mode(0, -2), 0, 0)] = 1.0;
    CHECK_THROWS_AS(FluxAnalyzer(bad, bank), Error);

    // index range excludes the top dyadic index
    Field u = tight_band_field(g, 3, 1);
    FluxAnalyzer au(u, bank);
    CHECK_THROWS_AS(au.energy_flux(bank.q_max()), Error);
    CHECK_THROWS_AS(au.energy_flux(-1), Error);

    // dimension gates
    CHECK_THROWS_AS(a.enstrophy_flux(1), Error);
    Grid g2(2, {32, 32}, 1);
    FilterBank bank2(g2, chi);
    FluxAnalyzer a2(Field::spectral_zeros(g2, 2), bank2);
    CHECK_THROWS_AS(a2.helicity_flux(1), Error);
}

TEST_CASE("conservation degeneracy for fully resolved fields") {
    // S_Q is the identity on u and u x u: integration by parts makes every
    // flux vanish to rounding
    ChiProfile chi;
    {
        Grid g(3, {64, 64, 64}, 1);
        FilterBank bank(g, chi);
        Field u = tight_band_field(g, 4, 2);
        FluxAnalyzer a(u, bank);
        const double scale =
            lp_norm(u, 3.0) * lp_norm(u, 3.0) * lp_norm(gradient(component(u, 0)), 3.0);
        CHECK(std::abs(a.energy_flux(3)) <= 1e-10 * scale);
        CHECK(std::abs(a.helicity_flux(3)) <=
              1e-10 * scale * 8.0); // omega carries one more derivative
    }
    {
        Grid g(2, {128, 128}, 1);
        FilterBank bank(g, chi);
        Field u = tight_band_field(g, 4, 3);
        FluxAnalyzer a(u, bank);
        const double wscale = lp_norm(curl(u), 3.0);
        CHECK(std::abs(a.enstrophy_flux(3)) <= 1e-10 * lp_norm(u, 3.0) * wscale * wscale * 8.0);
    }
}

TEST_CASE("shell flux conventions and identity") {
    Grid g(3, {32, 32, 32}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Field u = random_divergence_free_field(g, 4);
    FluxAnalyzer a(u, bank);

    // extended convention: the band from Q0 = -1 is all of S_{Q1}
    CHECK(a.shell_flux(-1, 2) == a.energy_flux(2));

    // the decomposition via the bar block is an exact multiplier identity
    for (int Q0 = 1; Q0 <= bank.q_max() - 1; ++Q0)
        for (int Q1 = Q0; Q1 <= bank.q_max() - 1; ++Q1) {
            const double scale =
                std::abs(a.energy_flux(Q1)) + std::abs(a.energy_flux(Q0 - 1)) + 1.0;
            CHECK(a.shell_identity_residual(Q0, Q1) <= 1e-9 * scale);
        }

    // a band holding the whole spectrum and its products conserves energy
    Field tight = tight_band_field(g, 2, 5);
    FluxAnalyzer at(tight, bank);
    const double scale = lp_norm(tight, 3.0) * lp_norm(tight, 3.0) *
                         lp_norm(gradient(component(tight, 0)), 3.0);
    CHECK(std::abs(at.shell_flux(0, bank.q_max() - 1)) <= 1e-9 * scale);
}

TEST_CASE("kernel convolution against pinned values") {
    // delta sequences pick out single kernel values
    DyadicCoefficients d;
    d.s = 1.0 / 3.0;
    d.p = 3.0;
    d.values.assign(7, 0.0); // q = -1..5
    d.values[(std::size_t)(3 + 1)] = 2.0; // d_3 = 2
    LocalityKernel K{KernelKind::energy_K};
    CHECK(kernel_convolution(K, d, 3) == doctest::Approx(4.0));            // K(0) d^2
    CHECK(kernel_convolution(K, d, 5) == doctest::Approx(4.0 * std::pow(2.0, -8.0 / 3.0)));
    CHECK(kernel_convolution(K, d, 0) == doctest::Approx(4.0 * 0.25));     // K(-3)
}

TEST_CASE("bounds: single-block field") {
    // modes exactly on the |k| = lambda_2 sphere, so only d_2 is populated
    Grid g(3, {64, 64, 64}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Field u = Field::spectral_zeros(g, 3);
    auto put = [&](int m0, int m1, int m2, int comp) {
        u.spec(comp)[g.flat_index(g.index_of_mode(0, m0), g.index_of_mode(1, m1),
                                  g.index_of_mode(2, m2))] = 0.7;
        u.spec(comp)[g.flat_index(g.index_of_mode(0, -m0), g.index_of_mode(1, -m1),
                                  g.index_of_mode(2, -m2))] = 0.7;
    };
    put(4, 0, 0, 1);
    put(0, 4, 0, 2);
    put(0, 0, 4, 0);
    FluxAnalyzer a(u, bank);
    DyadicCoefficients d = a.energy_coefficients();
    for (int q = -1; q <= d.q_max(); ++q)
        if (q != 2) CHECK(d.at(q) == 0.0);
    LocalityKernel K{KernelKind::energy_K};
    for (int Q = 0; Q <= bank.q_max() - 1; ++Q) {
        const double expected = std::pow(K(Q - 2) * d.at(2) * d.at(2), 1.5);
        CHECK(a.energy_bound(Q) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("bound dominates flux across a small survey") {
    ChiProfile chi;
    Grid g(3, {32, 32, 32}, 1);
    FilterBank bank(g, chi);
    double c_emp = 0.0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        Field u = random_divergence_free_field(g, 700 + s);
        FluxAnalyzer a(u, bank);
        for (int Q = 0; Q <= bank.q_max() - 1; ++Q) {
            const double bound = a.energy_bound(Q);
            CHECK(bound > 0.0);
            c_emp = std::max(c_emp, std::abs(a.energy_flux(Q)) / g.volume() / bound);
        }
    }
    CHECK(std::isfinite(c_emp));
    MESSAGE("empirical energy locality constant (32^3, 5 seeds): ", c_emp);
}

TEST_CASE("series match one-shot calls bit-exactly") {
    Grid g(3, {32, 32, 32}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Field u = random_divergence_free_field(g, 7);
    FluxSeries s = flux_series(u, FluxKind::energy, 0, bank.q_max() - 1, bank);
    BoundSeries b = bound_series(u, FluxKind::energy, 0, bank.q_max() - 1, bank);
    for (std::size_t i = 0; i < s.Q.size(); ++i) {
        CHECK(s.flux[i] == energy_flux(u, s.Q[i], bank));
        CHECK(b.bound[i] == energy_bound(u, s.Q[i], bank));
    }
    Field z = Field::spectral_zeros(g, 3);
    FluxSeries zs = flux_series(z, FluxKind::energy, 0, 1, bank);
    for (double v : zs.flux) CHECK(v == 0.0);
}

TEST_CASE("endpoint control of shell fluxes") {
    // |shell flux| <= C [(K*d^2)^{3/2}(Q0) + (K*d^2)^{3/2}(Q1)] over a survey
    Grid g(3, {32, 32, 32}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    double c_emp = 0.0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        Field u = random_divergence_free_field(g, 900 + s);
        FluxAnalyzer a(u, bank);
        for (int Q0 = 1; Q0 <= bank.q_max() - 1; ++Q0)
            for (int Q1 = Q0; Q1 <= bank.q_max() - 1; ++Q1) {
                const double rhs = a.energy_bound(Q0) + a.energy_bound(Q1);
                c_emp = std::max(c_emp, std::abs(a.shell_flux(Q0, Q1)) / g.volume() / rhs);
            }
    }
    CHECK(std::isfinite(c_emp));
    MESSAGE("endpoint-control constant: ", c_emp);
}

TEST_CASE("flux decays with the coefficient tail") {
    // prescribed decaying d_q: the measured flux beyond the plateau decays at
    // least as fast as the cubed tail, up to the locality constant
    Grid g(3, {64, 64, 64}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    std::vector<double> profile;
    for (int q = 0; q <= bank.q_max() - 1; ++q) profile.push_back(std::pow(2.0, -q));
    Field u = random_spectrum_field(g, profile, 8);
    FluxAnalyzer a(u, bank);
    for (int Q = 1; Q <= bank.q_max() - 1; ++Q) {
        const double tail = tail_sup(u, 1.0 / 3.0, 3.0, Q - 1, bank);
        CHECK(std::abs(a.energy_flux(Q)) / g.volume() <= 40.0 * tail * tail * tail);
    }
}

} // TEST_SUITE
