#include <doctest.h>

#include <cmath>

#include "lpflux/besov.hpp"
#include "lpflux/example_fields.hpp"
#include "lpflux/flux.hpp"
#include "lpflux/spectral_ops.hpp"
#include "lpflux/triad_oracle.hpp"

using namespace lpflux;
using cd = std::complex<double>;

TEST_SUITE("example_fields") {

TEST_CASE("envelope") {
    SUBCASE("torus variant") {
        Grid g(3, {32, 32, 32}, 1);
        Envelope env = envelope_rho({EnvelopeVariant::torus, g});
        CHECK(env.A == doctest::Approx(g.volume()));
        Field rho = to_physical(env.rho);
        for (double v : rho.phys(0)) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("localized variant is real with positive cubic integral") {
        Grid g(3, {32, 32, 32}, 8);
        Envelope env = envelope_rho({EnvelopeVariant::localized, g});
        CHECK(env.A > 0.0);
        auto c = complex_physical(g, env.rho.spec(0));
        double max_re = 0.0, max_im = 0.0;
        for (auto z : c) {
            max_re = std::max(max_re, std::abs(z.real()));
            max_im = std::max(max_im, std::abs(z.imag()));
        }
        CHECK(max_im <= 1e-12 * max_re);
    }
    SUBCASE("localized variant requires a fine lattice") {
        Grid g(3, {32, 32, 32}, 4);
        CHECK_THROWS_AS(envelope_rho({EnvelopeVariant::localized, g}), Error);
    }
    SUBCASE("2D delta envelope A independent of delta") {
        Grid g(2, {256, 256}, 1);
        const double a4 = envelope_delta(g, 4.0).A;
        const double a8 = envelope_delta(g, 8.0).A;
        CHECK(a4 > 0.0);
        CHECK(a8 == doctest::Approx(a4).epsilon(0.05));
        CHECK_THROWS_AS(envelope_delta(g, 2.0), Error);
    }
}

TEST_CASE("mode tables are Hermitian and synthesize real fields") {
    ModeTable t = eyink_energy_table(1, 3, 1);
    t.check_hermitian(); // does not throw
    // conj(i lambda^{-1/3} (0,0,-1)) = i lambda^{-1/3} (0,0,1) pairing
    ModeTable broken = t;
    broken.entries.pop_back();
    CHECK_THROWS_AS(broken.check_hermitian(), Error);

    Grid g(3, {64, 64, 4}, 1);
    Envelope env = envelope_rho({EnvelopeVariant::torus, g});
    for (Field u : {eyink_energy_field(g, 1, 4, env), eyink_helicity_field(g, 1, 4, env)}) {
        CHECK(divergence_ratio(u) <= 1e-12);
        auto c = complex_physical(g, u.spec(2));
        double max_re = 0.0, max_im = 0.0;
        for (auto z : c) {
            max_re = std::max(max_re, std::abs(z.real()));
            max_im = std::max(max_im, std::abs(z.imag()));
        }
        CHECK(max_im <= 1e-12 * max_re);
    }
    CHECK_THROWS_AS(eyink_energy_field(g, 1, 6, env), Error); // 2 lambda_6 > Nyquist
}

TEST_CASE("eyink plateaus") {
    Grid g(3, {128, 128, 4}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Envelope env = envelope_rho({EnvelopeVariant::torus, g});

    Field ue = eyink_energy_field(g, 1, 5, env);
    DyadicCoefficients d = dyadic_coefficients(ue, 1.0 / 3.0, 3.0, bank);
    double lo = 1e300, hi = 0.0;
    for (int q = 1; q <= 5; ++q) {
        lo = std::min(lo, d.at(q));
        hi = std::max(hi, d.at(q));
    }
    CHECK(hi / lo <= 1.5);

    Field uh = eyink_helicity_field(g, 1, 5, env);
    DyadicCoefficients b = dyadic_coefficients(uh, 2.0 / 3.0, 3.0, bank);
    lo = 1e300;
    hi = 0.0;
    for (int q = 1; q <= 5; ++q) {
        lo = std::min(lo, b.at(q));
        hi = std::max(hi, b.at(q));
    }
    CHECK(hi / lo <= 1.5);
}

TEST_CASE("eyink torus flux meets the lower bounds") {
    Grid g(3, {128, 128, 4}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Envelope env = envelope_rho({EnvelopeVariant::torus, g});

    Field ue = eyink_energy_field(g, 1, 5, env);
    FluxAnalyzer a(ue, bank);
    CHECK(a.energy_flux(3) / g.volume() >= 4.0 * (1.0 - 1e-3));

    Field uh = eyink_helicity_field(g, 1, 5, env);
    FluxAnalyzer ah(uh, bank);
    CHECK(std::abs(ah.helicity_flux(3)) / g.volume() >= 4.0 * 0.9);
}

TEST_CASE("enveloped variant satisfies the modulation lemma bounds") {
    Grid g(3, {192, 32, 32}, 8);
    ChiProfile chi;
    FilterBank bank(g, chi);
    Envelope env = envelope_rho({EnvelopeVariant::localized, g});
    // Phi_k = |k|^{1/3} U(k) rho for the k = (lambda_q, 0, 0) family
    const double lam = 4.0;
    Field phi = Field::spectral_zeros(g, 3);
    const cd amp = cd(0.0, 1.0) * std::pow(lam, -1.0 / 3.0) * std::pow(lam, 1.0 / 3.0);
    for (std::size_t s = 0; s < env.offsets.size(); ++s) {
        const auto& off = env.offsets[s];
        const std::size_t idx = g.flat_index(g.index_of_mode(0, off[0]),
                                             g.index_of_mode(1, off[1]),
                                             g.index_of_mode(2, off[2]));
        phi.spec(2)[idx] = -amp * env.coeffs[s]; // U = i a (0,0,-1)
    }
    WaveVector k{{4, 0, 0}, 1};
    auto rep = oracle::lemma_local_check(phi, k, 2, bank);
    CHECK(rep.projection_error < rep.projection_bound);
    CHECK(rep.lowpass_error < rep.lowpass_bound);
}

TEST_CASE("enstrophy construction") {
    Grid g(2, {256, 256}, 1);
    const int Q = 3;
    Field u = enstrophy_nonlocal_field(g, Q, 4.0);
    CHECK(divergence_ratio(u) <= 1e-12);
    // resolution guard
    CHECK_THROWS_AS(enstrophy_nonlocal_field(g, 6, 4.0), Error);
    CHECK_THROWS_AS(enstrophy_nonlocal_field(g, Q, 0.5), Error);

    // the lambda_{Q+2} band is populated through the exact pair-sum snapping
    ChiProfile chi;
    FilterBank bank(g, chi);
    DyadicCoefficients n3 = dyadic_coefficients(u, 0.0, 3.0, bank);
    CHECK(n3.at(Q + 2) > 0.0);
    for (int q = 0; q <= Q; ++q) CHECK(n3.at(q) > 0.0);
}

TEST_CASE("paraproduct sequence") {
    Grid g(3, {160, 32, 32}, 8);
    ParaproductSequence seq = paraproduct_sequence(g, 3, 41);
    CHECK(seq.A > 0.0);
    CHECK(divergence_ratio(seq.u) <= 1e-12);
    for (const Field& v : seq.v) CHECK(divergence_ratio(v) <= 1e-12);

    // u's spectrum inside B(0, 1/4): every nonzero mode below |xi| <= 1/4
    const Grid& gr = seq.u.grid();
    for (int i0 = 0; i0 < gr.size(0); ++i0)
        for (int i1 = 0; i1 < gr.size(1); ++i1)
            for (int i2 = 0; i2 < gr.size(2); ++i2) {
                const std::size_t idx = gr.flat_index(i0, i1, i2);
                double mag = 0.0;
                for (int c = 0; c < 3; ++c) mag += std::abs(seq.u.spec(c)[idx]);
                if (mag == 0.0) continue;
                const double f0 = gr.freq_of_index(0, i0), f1 = gr.freq_of_index(1, i1),
                             f2 = gr.freq_of_index(2, i2);
                CHECK(std::sqrt(f0 * f0 + f1 * f1 + f2 * f2) <= 0.25 + 1e-12);
            }

    // v_n - v_{n-1} lives in B(+-lambda_n, 1/4): disjoint supports across n
    Field t2 = subtract(seq.v[1], seq.v[0]);
    for (int i0 = 0; i0 < gr.size(0); ++i0)
        for (int i1 = 0; i1 < gr.size(1); ++i1)
            for (int i2 = 0; i2 < gr.size(2); ++i2) {
                const std::size_t idx = gr.flat_index(i0, i1, i2);
                double mag = 0.0;
                for (int c = 0; c < 3; ++c) mag += std::abs(t2.spec(c)[idx]);
                if (mag == 0.0) continue;
                CHECK(std::abs(std::abs(gr.freq_of_index(0, i0)) - 4.0) <= 0.25 + 1e-12);
            }

    // resolution guard: lambda_n beyond axis 1
    CHECK_THROWS_AS(paraproduct_sequence(Grid(3, {64, 32, 32}, 8), 3, 41), Error);

    // determinism
    ParaproductSequence seq2 = paraproduct_sequence(g, 3, 41);
    CHECK(seq.A == seq2.A);
}

TEST_CASE("random spectrum fields") {
    Grid g(3, {32, 32, 32}, 1);
    ChiProfile chi;
    FilterBank bank(g, chi);

    SUBCASE("flat profile plateau within 10%") {
        std::vector<double> profile(3, 1.0);
        Field u = random_spectrum_field(g, profile, 50);
        DyadicCoefficients d = dyadic_coefficients(u, 1.0 / 3.0, 3.0, bank);
        for (int q = 0; q < 3; ++q) CHECK(std::abs(d.at(q) - 1.0) <= 0.1);
        CHECK(divergence_ratio(u) <= 1e-12);
    }
    SUBCASE("zero profile gives the zero field") {
        std::vector<double> profile(3, 0.0);
        Field u = random_spectrum_field(g, profile, 51);
        CHECK(l2_norm(u) == 0.0);
    }
    SUBCASE("same seed reproduces the field bit for bit") {
        std::vector<double> profile = {1.0, 0.5, 0.25};
        Field a = random_spectrum_field(g, profile, 52);
        Field b = random_spectrum_field(g, profile, 52);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < a.spec(c).size(); ++i)
                CHECK(a.spec(c)[i] == b.spec(c)[i]);
    }
    SUBCASE("profile longer than the usable range is rejected") {
        std::vector<double> profile(bank.q_max() + 2, 1.0);
        CHECK_THROWS_AS(random_spectrum_field(g, profile, 53), Error);
    }
}

} // TEST_SUITE
