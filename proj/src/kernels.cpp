#include "lpflux/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lpflux::kernels {

namespace {
bool g_parallel_default = true;
}

bool parallel_default() { return g_parallel_default; }
void set_parallel_default(bool on) { g_parallel_default = on; }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double pairwise_reduce(std::vector<double>& partials, bool parallel) {
    std::size_t n = partials.size();
    if (n == 0) return 0.0;
    // pad to a power of two so every level is a clean stride halving; the
    // stride pattern writes [0, stride) and reads [stride, 2*stride), so the
    // parallel loop touches disjoint slots
    std::size_t m = 1;
    while (m < n) m *= 2;
    partials.resize(m, 0.0);
    for (std::size_t stride = m / 2; stride >= 1; stride /= 2) {
#pragma omp parallel for schedule(static) if (parallel && stride > 1024)
        for (long long i = 0; i < (long long)stride; ++i)
            partials[(std::size_t)i] += partials[(std::size_t)i + stride];
    }
    return partials[0];
}

double sum(std::span<const double> x, bool parallel) {
    return sum_generate(x.size(), [&](std::size_t i) { return x[i]; }, parallel);
}

void apply_multiplier(std::span<std::complex<double>> data, std::span<const double> mult,
                      bool parallel) {
    const long long n = (long long)data.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < n; ++i) data[(std::size_t)i] *= mult[(std::size_t)i];
}

void multiply_assign(std::span<double> out, std::span<const double> a, std::span<const double> b,
                     bool parallel) {
    const long long n = (long long)out.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < n; ++i) out[(std::size_t)i] = a[(std::size_t)i] * b[(std::size_t)i];
}

void multiply_add(std::span<double> out, std::span<const double> a, std::span<const double> b,
                  bool parallel) {
    const long long n = (long long)out.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < n; ++i) out[(std::size_t)i] += a[(std::size_t)i] * b[(std::size_t)i];
}

void scale(std::span<std::complex<double>> data, double factor, bool parallel) {
    const long long n = (long long)data.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < n; ++i) data[(std::size_t)i] *= factor;
}

} // namespace lpflux::kernels
