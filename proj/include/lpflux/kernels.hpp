#ifndef LPFLUX_KERNELS_HPP
#define LPFLUX_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lpflux::kernels {

// All reductions use a fixed blocked pairwise tree: serial in-order sums over
// blocks of kSumBlock elements, then pairwise halving of the block partials.
// The tree shape depends only on the element count, so serial and OpenMP
// execution produce bit-identical results at any thread count.
inline constexpr std::size_t kSumBlock = 4096;

bool parallel_default();
void set_parallel_default(bool on);
int max_threads();

// Pairwise halving of a partials buffer (destructive). Exposed for tests.
double pairwise_reduce(std::vector<double>& partials, bool parallel);

double sum(std::span<const double> x, bool parallel);
inline double sum(std::span<const double> x) { return sum(x, parallel_default()); }

/// Deterministic sum of f(i) for i in [0, n). F is invoked exactly once per index.
template <class F>
double sum_generate(std::size_t n, F&& f, bool parallel) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<double> partials(nblocks);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long b = 0; b < (long long)nblocks; ++b) {
        const std::size_t lo = (std::size_t)b * kSumBlock;
        const std::size_t hi = lo + kSumBlock < n ? lo + kSumBlock : n;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        partials[(std::size_t)b] = acc;
    }
    return pairwise_reduce(partials, parallel);
}

template <class F>
double sum_generate(std::size_t n, F&& f) {
    return sum_generate(n, static_cast<F&&>(f), parallel_default());
}

// Elementwise kernels. Each output element depends only on same-index inputs,
// so the OpenMP and serial paths are bit-identical by construction.

void apply_multiplier(std::span<std::complex<double>> data, std::span<const double> mult,
                      bool parallel);
void multiply_assign(std::span<double> out, std::span<const double> a, std::span<const double> b,
                     bool parallel);
void multiply_add(std::span<double> out, std::span<const double> a, std::span<const double> b,
                  bool parallel);
void scale(std::span<std::complex<double>> data, double factor, bool parallel);

inline void apply_multiplier(std::span<std::complex<double>> d, std::span<const double> m) {
    apply_multiplier(d, m, parallel_default());
}
inline void multiply_assign(std::span<double> o, std::span<const double> a,
                            std::span<const double> b) {
    multiply_assign(o, a, b, parallel_default());
}
inline void multiply_add(std::span<double> o, std::span<const double> a,
                         std::span<const double> b) {
    multiply_add(o, a, b, parallel_default());
}
inline void scale(std::span<std::complex<double>> d, double f) { scale(d, f, parallel_default()); }

} // namespace lpflux::kernels

#endif
