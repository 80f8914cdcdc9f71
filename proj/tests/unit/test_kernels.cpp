#include <doctest.h>

#include <random>
#include <vector>

#include "lpflux/kernels.hpp"

using namespace lpflux;

TEST_SUITE("kernels") {

TEST_CASE("serial and parallel sums are bit-identical") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    // sizes straddling the block size and the power-of-two padding
    for (std::size_t n : {1ul, 7ul, 4096ul, 4097ul, 100000ul, 1048577ul}) {
        std::vector<double> x(n);
        for (double& v : x) v = dist(rng);
        const double serial = kernels::sum(x, false);
        const double parallel = kernels::sum(x, true);
        CHECK(serial == parallel);
        const double gen_s = kernels::sum_generate(n, [&](std::size_t i) { return x[i]; }, false);
        const double gen_p = kernels::sum_generate(n, [&](std::size_t i) { return x[i]; }, true);
        CHECK(gen_s == serial);
        CHECK(gen_p == serial);
    }
}

TEST_CASE("pairwise sum is accurate on long constant data") {
    const std::size_t n = 1 << 20;
    std::vector<double> x(n, 1.0 / 3.0);
    const double s = kernels::sum(x, true);
    CHECK(s == doctest::Approx((double)n / 3.0).epsilon(1e-12));
}

TEST_CASE("elementwise kernels match their serial reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t n = 30000;
    std::vector<std::complex<double>> a(n), a2(n);
    std::vector<double> m(n), o1(n), o2(n), p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = {dist(rng), dist(rng)};
        a2[i] = a[i];
        m[i] = dist(rng);
        p[i] = dist(rng);
        q[i] = dist(rng);
    }
    kernels::apply_multiplier(a, m, false);
    kernels::apply_multiplier(a2, m, true);
    CHECK(a == a2);
    kernels::multiply_assign(o1, p, q, false);
    kernels::multiply_assign(o2, p, q, true);
    CHECK(o1 == o2);
}

TEST_CASE("empty input") {
    CHECK(kernels::sum({}, true) == 0.0);
    CHECK(kernels::sum_generate(0, [](std::size_t) { return 1.0; }) == 0.0);
}

} // TEST_SUITE
