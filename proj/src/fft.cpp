#include "lpflux/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace lpflux::fft {

namespace {

struct PlanEntry {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::size_t n = 0;

    ~PlanEntry() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
};

std::mutex g_mutex;
std::map<std::tuple<int, int, int>, PlanEntry> g_cache;

PlanEntry& entry_for(const Grid& g) {
    const auto key = std::make_tuple(g.size(0), g.size(1), g.size(2));
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    PlanEntry& e = g_cache[key];
    e.n = g.num_points();
    e.buf = fftw_alloc_complex(e.n);
    // 2D grids carry n2 = 1; a rank-3 plan over (n0, n1, 1) is equivalent.
    e.fwd = fftw_plan_dft_3d(g.size(0), g.size(1), g.size(2), e.buf, e.buf, FFTW_FORWARD,
                             FFTW_ESTIMATE);
    e.bwd = fftw_plan_dft_3d(g.size(0), g.size(1), g.size(2), e.buf, e.buf, FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    return e;
}

void execute(const Grid& g, std::span<std::complex<double>> data, int sign) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanEntry& e = entry_for(g);
    // std::complex<double> is layout-compatible with fftw_complex
    std::memcpy(e.buf, reinterpret_cast<const double*>(data.data()),
                sizeof(fftw_complex) * e.n);
    fftw_execute(sign == FFTW_FORWARD ? e.fwd : e.bwd);
    std::memcpy(reinterpret_cast<double*>(data.data()), e.buf, sizeof(fftw_complex) * e.n);
}

} // namespace

void forward(const Grid& g, std::span<std::complex<double>> data) {
    execute(g, data, FFTW_FORWARD);
}

void backward(const Grid& g, std::span<std::complex<double>> data) {
    execute(g, data, FFTW_BACKWARD);
}

void clear_cache() {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_cache.clear();
}

} // namespace lpflux::fft
