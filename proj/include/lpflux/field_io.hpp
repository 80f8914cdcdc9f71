#ifndef LPFLUX_FIELD_IO_HPP
#define LPFLUX_FIELD_IO_HPP

#include <iosfwd>
#include <string>

#include "lpflux/field.hpp"

namespace lpflux {

// Binary field container, little-endian throughout:
//   magic "LPF1", u32 version (= 1), u32 dim, u32 ncomp, u32 sizes[dim],
//   u32 lattice_denominator, u32 representation (0 spectral, 1 physical),
// then the payload: components outermost, row-major over the DFT index order
// 0..N/2-1, -N/2..-1 per axis, 64-bit floats ((re, im) pairs when spectral).
// Round trips are bit-exact.

void write_field(const Field& f, std::ostream& sink);
Field read_field(std::istream& source);

void write_field_file(const Field& f, const std::string& path);
Field read_field_file(const std::string& path);

} // namespace lpflux

#endif
