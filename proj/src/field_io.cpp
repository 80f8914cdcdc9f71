#include "lpflux/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace lpflux {

namespace {

constexpr char kMagic[4] = {'L', 'P', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back((unsigned char)(v & 0xff));
    out.push_back((unsigned char)((v >> 8) & 0xff));
    out.push_back((unsigned char)((v >> 16) & 0xff));
    out.push_back((unsigned char)((v >> 24) & 0xff));
}

void put_f64(std::vector<unsigned char>& out, double d) {
    const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    for (int b = 0; b < 8; ++b) out.push_back((unsigned char)((v >> (8 * b)) & 0xff));
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    require(in.gcount() == 4, errc::format, "truncated header");
    return (std::uint32_t)b[0] | ((std::uint32_t)b[1] << 8) | ((std::uint32_t)b[2] << 16) |
           ((std::uint32_t)b[3] << 24);
}

double get_f64(const unsigned char* b) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= (std::uint64_t)b[i] << (8 * i);
    return std::bit_cast<double>(v);
}

} // namespace

void write_field(const Field& f, std::ostream& sink) {
    const Grid& g = f.grid();
    std::vector<unsigned char> buf;
    buf.reserve(64 + f.grid().num_points() * 16);
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u32(buf, kVersion);
    put_u32(buf, (std::uint32_t)g.dim());
    put_u32(buf, (std::uint32_t)f.ncomp());
    for (int a = 0; a < g.dim(); ++a) put_u32(buf, (std::uint32_t)g.size(a));
    put_u32(buf, (std::uint32_t)g.lattice_denominator());
    put_u32(buf, f.is_spectral() ? 0u : 1u);
    for (int c = 0; c < f.ncomp(); ++c) {
        if (f.is_spectral()) {
            for (const auto& z : f.spec(c)) {
                put_f64(buf, z.real());
                put_f64(buf, z.imag());
            }
        } else {
            for (double v : f.phys(c)) put_f64(buf, v);
        }
    }
    sink.write(reinterpret_cast<const char*>(buf.data()), (std::streamsize)buf.size());
}

Field read_field(std::istream& source) {
    char magic[4];
    source.read(magic, 4);
    require(source.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0, errc::format,
            "bad magic");
    require(get_u32(source) == kVersion, errc::format, "unsupported version");
    const int dim = (int)get_u32(source);
    require(dim == 2 || dim == 3, errc::format, "bad dimension");
    const int ncomp = (int)get_u32(source);
    require(ncomp >= 1 && ncomp <= 3, errc::format, "bad component count");
    std::vector<int> sizes;
    for (int a = 0; a < dim; ++a) sizes.push_back((int)get_u32(source));
    const int denom = (int)get_u32(source);
    const std::uint32_t rep = get_u32(source);
    require(rep == 0 || rep == 1, errc::format, "bad representation flag");

    Grid g;
    try {
        g = Grid(dim, sizes, denom);
    } catch (const Error&) {
        fail(errc::format, "invalid grid parameters in header");
    }

    const std::size_t n = g.num_points();
    const std::size_t per_comp = n * (rep == 0 ? 16 : 8);
    std::vector<unsigned char> payload((std::size_t)ncomp * per_comp);
    source.read(reinterpret_cast<char*>(payload.data()), (std::streamsize)payload.size());
    require((std::size_t)source.gcount() == payload.size(), errc::format, "truncated payload");
    source.peek();
    require(source.eof(), errc::format, "trailing bytes after payload");

    Field f = rep == 0 ? Field::spectral_zeros(g, ncomp) : Field::physical_zeros(g, ncomp);
    const unsigned char* p = payload.data();
    for (int c = 0; c < ncomp; ++c) {
        if (rep == 0) {
            auto dst = f.spec(c);
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = {get_f64(p), get_f64(p + 8)};
                p += 16;
            }
        } else {
            auto dst = f.phys(c);
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = get_f64(p);
                p += 8;
            }
        }
    }
    return f;
}

void write_field_file(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::format, "cannot open " + path + " for writing");
    write_field(f, out);
    require(out.good(), errc::format, "write failed for " + path);
}

Field read_field_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::format, "cannot open " + path);
    return read_field(in);
}

} // namespace lpflux
