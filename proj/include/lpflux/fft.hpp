#ifndef LPFLUX_FFT_HPP
#define LPFLUX_FFT_HPP

#include <complex>
#include <span>

#include "lpflux/grid.hpp"

namespace lpflux::fft {

// Unnormalized c2c transforms on row-major (n0, n1, n2) data. forward uses the
// exp(-i k.x) sign, backward exp(+i k.x). Plans are FFTW_ESTIMATE and executed
// on an internal aligned buffer, so results are reproducible run to run and
// independent of the caller's allocation. Not re-entrant; calls are serialized.
void forward(const Grid& g, std::span<std::complex<double>> data);
void backward(const Grid& g, std::span<std::complex<double>> data);

/// Release cached plans and buffers.
void clear_cache();

} // namespace lpflux::fft

#endif
