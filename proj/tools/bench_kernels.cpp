// Times the OpenMP kernels against their serial reference paths and checks
// that both produce identical bits (the fixed reduction tree at work).

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "lpflux/example_fields.hpp"
#include "lpflux/filter_bank.hpp"
#include "lpflux/flux.hpp"
#include "lpflux/kernels.hpp"
#include "lpflux/spectral_ops.hpp"
#include "lpflux/triad_oracle.hpp"

using namespace lpflux;
using clock_type = std::chrono::steady_clock;

namespace {

template <class F>
double time_of(F&& f, int reps) {
    auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) f();
    auto t1 = clock_type::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", kernels::max_threads());
    std::printf("%-34s %12s %12s %9s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
                "bitwise");

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    {
        const std::size_t n = 1 << 24;
        std::vector<double> x(n);
        for (double& v : x) v = dist(rng);
        double rs = 0, rp = 0;
        const double ts = time_of([&] { rs = kernels::sum(x, false); }, 5);
        const double tp = time_of([&] { rp = kernels::sum(x, true); }, 5);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "deterministic sum (16M)", ts, tp, ts / tp,
                    rs == rp ? "ok" : "MISMATCH");
    }
    {
        const std::size_t n = 1 << 23;
        std::vector<std::complex<double>> a(n), b(n);
        std::vector<double> m(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = {dist(rng), dist(rng)};
            m[i] = dist(rng);
        }
        b = a;
        const double ts = time_of([&] { kernels::apply_multiplier(a, m, false); }, 5);
        const double tp = time_of([&] { kernels::apply_multiplier(b, m, true); }, 5);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "multiplier apply (8M complex)", ts, tp,
                    ts / tp, a == b ? "ok" : "MISMATCH");
    }
    {
        Grid g(3, {64, 64, 64}, 1);
        Field u = random_divergence_free_field(g, 9);
        ChiProfile chi;
        FilterBank bank(g, chi);
        double fs = 0, fp = 0;
        const double ts = time_of(
            [&] {
                kernels::set_parallel_default(false);
                fs = energy_flux(u, 2, bank);
            },
            3);
        const double tp = time_of(
            [&] {
                kernels::set_parallel_default(true);
                fp = energy_flux(u, 2, bank);
            },
            3);
        kernels::set_parallel_default(true);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "energy flux pipeline (64^3)", ts, tp,
                    ts / tp, fs == fp ? "ok" : "MISMATCH");
    }
    {
        // FFT pathway against the O(M^2) reference implementation
        Grid g(3, {16, 16, 16}, 1);
        Field u = random_divergence_free_field(g, 10);
        ChiProfile chi;
        FilterBank bank(g, chi);
        double ff = 0, fo = 0;
        const double tf = time_of([&] { ff = energy_flux(u, 1, bank); }, 3);
        const double to = time_of([&] { fo = oracle::triad_energy_flux(u, 1, bank); }, 3);
        const double rel = std::abs(ff - fo) / std::max(std::abs(ff), 1e-300);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s (rel %.1e)\n",
                    "flux: FFT vs triad reference", tf, to, to / tf,
                    rel <= 1e-8 ? "ok" : "MISMATCH", rel);
    }
    return 0;
}
