#include <doctest.h>

#include <cmath>

#include "lpflux/bilinear.hpp"
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
} // namespace

TEST_SUITE("triad_oracle") {

TEST_CASE("oracle agrees with the FFT pathway") {
    ChiProfile chi;
    SUBCASE("3D fluxes") {
        Grid g(3, {16, 16, 16}, 1);
        FilterBank bank(g, chi);
        for (std::uint64_t s = 1; s <= 3; ++s) {
            Field u = random_divergence_free_field(g, 100 + s);
            FluxAnalyzer a(u, bank);
            for (int Q = 0; Q <= bank.q_max() - 1; ++Q) {
                CHECK(rel_diff(a.energy_flux(Q), oracle::triad_energy_flux(u, Q, bank)) <= 1e-8);
                CHECK(rel_diff(a.helicity_flux(Q), oracle::triad_helicity_flux(u, Q, bank)) <=
                      1e-8);
            }
            for (int Q0 = 1; Q0 <= bank.q_max() - 1; ++Q0)
                CHECK(rel_diff(a.shell_flux(Q0, bank.q_max() - 1),
                               oracle::triad_shell_flux(u, Q0, bank.q_max() - 1, bank)) <= 1e-8);
        }
    }
    SUBCASE("2D enstrophy, tensor vs scalar route") {
        Grid g(2, {64, 64}, 1);
        FilterBank bank(g, chi);
        for (std::uint64_t s = 1; s <= 3; ++s) {
            Field u = random_divergence_free_field(g, 200 + s);
            FluxAnalyzer a(u, bank);
            for (int Q = 0; Q <= bank.q_max() - 1; ++Q)
                CHECK(rel_diff(a.enstrophy_flux(Q), oracle::triad_enstrophy_flux(u, Q, bank)) <=
                      1e-8);
        }
    }
    SUBCASE("trilinear") {
        Grid g(3, {16, 16, 16}, 1);
        Field u = random_divergence_free_field(g, 301);
        Field v = random_divergence_free_field(g, 302);
        Field w = random_divergence_free_field(g, 303);
        CHECK(rel_diff(trilinear(u, v, w), oracle::triad_trilinear(u, v, w)) <= 1e-8);
        Field c = Field::spectral_zeros(g, 3);
        c.spec(0)[0] = 1.0;
        CHECK(std::abs(oracle::triad_trilinear(u, c, w)) <= 1e-14);
        CHECK(oracle::triad_energy_flux(Field::spectral_zeros(g, 3), 1,
                                        FilterBank(g, ChiProfile{})) == 0.0);
    }
}

TEST_CASE("active-mode size gate") {
    Grid g(3, {32, 32, 32}, 1);
    Rng rng(304);
    Field u = Field::physical_zeros(g, 3); // dense spectrum: ~32^3 active modes
    for (int c = 0; c < 3; ++c)
        for (double& v : u.phys(c)) v = rng.normal();
    Field us = leray_project(to_spectral(u));
    ChiProfile chi;
    FilterBank bank(g, chi);
    CHECK_THROWS_AS(oracle::triad_energy_flux(us, 1, bank), Error);
}

TEST_CASE("table flux equals the synthesized torus flux") {
    Grid g(3, {64, 64, 4}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Envelope env = envelope_rho({EnvelopeVariant::torus, g});
    Field u = eyink_energy_field(g, 1, 4, env);
    FluxAnalyzer a(u, bank);
    ModeTable tab = eyink_energy_table(1, 4, 1);
    for (int Q = 1; Q <= 3; ++Q) {
        CHECK(a.energy_flux(Q) / g.volume() ==
              doctest::Approx(oracle::table_flux(tab, 1, Q, chi)).epsilon(1e-9));
    }
}

TEST_CASE("triad sparsity of the eyink construction is Q-independent") {
    ChiProfile chi;
    ModeTable tab = eyink_energy_table(0, 7, 1);
    const int c2 = oracle::table_flux_triad_count(tab, 1, 2, chi, 1e-12);
    const int c3 = oracle::table_flux_triad_count(tab, 1, 3, chi, 1e-12);
    const int c4 = oracle::table_flux_triad_count(tab, 1, 4, chi, 1e-12);
    CHECK(c2 > 0);
    CHECK(c2 == c3);
    CHECK(c3 == c4);
    MESSAGE("contributing triads per interior Q: ", c2);
}

TEST_CASE("modulated projection lemma") {
    Grid g(3, {192, 32, 32}, 8);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Envelope env = envelope_rho({EnvelopeVariant::localized, g});
    Field phi = Field::spectral_zeros(g, 3);
    std::copy(env.rho.spec(0).begin(), env.rho.spec(0).end(), phi.spec(2).begin());

    SUBCASE("torus envelope: both errors vanish") {
        // Phi with spectrum only at xi = 0 makes Psi_k exactly the projected wave
        Field cphi = Field::spectral_zeros(g, 3);
        cphi.spec(2)[0] = 1.0;
        auto rep = oracle::lemma_local_check(cphi, {{4, 0, 0}, 1}, 2, bank);
        CHECK(rep.projection_error <= 1e-12);
        CHECK(rep.lowpass_error <= 1e-12);
    }
    SUBCASE("localized envelope: measured below bound, strictly") {
        auto rep = oracle::lemma_local_check(phi, {{8, 0, 0}, 1}, 2, bank);
        CHECK(rep.pass);
        CHECK(rep.projection_error < rep.projection_bound);
        CHECK(rep.lowpass_error < rep.lowpass_bound);
        CHECK(rep.I_k > 0.0);
    }
    SUBCASE("error decays with |k| near the 1/|k| rate") {
        auto r1 = oracle::lemma_local_check(phi, {{4, 0, 0}, 1}, 2, bank);
        auto r2 = oracle::lemma_local_check(phi, {{8, 0, 0}, 1}, 2, bank);
        const double rate = r1.projection_error / r2.projection_error;
        CHECK(rate >= 1.0);
        CHECK(rate <= 4.0);
    }
    SUBCASE("unresolved modulation is rejected") {
        CHECK_THROWS_AS(oracle::lemma_local_check(phi, {{16, 0, 0}, 1}, 2, bank), Error);
    }
}

} // TEST_SUITE
