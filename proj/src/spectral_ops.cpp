#include "lpflux/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "lpflux/fft.hpp"
#include "lpflux/kernels.hpp"

namespace lpflux {

using cd = std::complex<double>;

// ---- transforms ------------------------------------------------------------

Field to_spectral(const Field& f) {
    require(f.is_physical(), errc::representation, "to_spectral expects a physical field");
    const Grid& g = f.grid();
    Field out = Field::spectral_zeros(g, f.ncomp());
    const double inv_n = 1.0 / (double)g.num_points();
    for (int c = 0; c < f.ncomp(); ++c) {
        auto dst = out.spec(c);
        auto src = f.phys(c);
        const long long n = (long long)g.num_points();
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) dst[(std::size_t)i] = cd(src[(std::size_t)i], 0.0);
        fft::forward(g, dst);
        kernels::scale(dst, inv_n);
    }
    return out;
}

Field to_physical(const Field& f) {
    require(f.is_spectral(), errc::representation, "to_physical expects a spectral field");
    const Grid& g = f.grid();
    Field out = Field::physical_zeros(g, f.ncomp());
    std::vector<cd> buf(g.num_points());
    for (int c = 0; c < f.ncomp(); ++c) {
        auto src = f.spec(c);
        std::copy(src.begin(), src.end(), buf.begin());
        fft::backward(g, buf);
        auto dst = out.phys(c);
        const long long n = (long long)g.num_points();
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) dst[(std::size_t)i] = buf[(std::size_t)i].real();
    }
    return out;
}

Field ensure_spectral(const Field& f) { return f.is_spectral() ? f : to_spectral(f); }

// ---- differential operators -------------------------------------------------

void differentiate_inplace(const Grid& g, std::span<cd> spec, int axis) {
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0) {
        for (int i1 = 0; i1 < n1; ++i1) {
            std::size_t base = ((std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1) * (std::size_t)n2;
            for (int i2 = 0; i2 < n2; ++i2) {
                const double k =
                    axis == 0 ? f0[(std::size_t)i0] : axis == 1 ? f1[(std::size_t)i1] : f2[(std::size_t)i2];
                spec[base + (std::size_t)i2] *= cd(0.0, k);
            }
        }
    }
}

Field gradient(const Field& f_in) {
    Field f = ensure_spectral(f_in);
    require(f.is_scalar(), errc::arity, "gradient expects a scalar field");
    const Grid& g = f.grid();
    Field out = Field::spectral_zeros(g, g.dim());
    for (int a = 0; a < g.dim(); ++a) {
        auto dst = out.spec(a);
        auto src = f.spec(0);
        std::copy(src.begin(), src.end(), dst.begin());
        differentiate_inplace(g, dst, a);
    }
    return out;
}

Field divergence(const Field& u_in) {
    Field u = ensure_spectral(u_in);
    require(u.is_vector(), errc::arity, "divergence expects a vector field");
    const Grid& g = u.grid();
    Field out = Field::spectral_zeros(g, 1);
    auto dst = out.spec(0);
    std::vector<cd> buf(g.num_points());
    for (int a = 0; a < g.dim(); ++a) {
        auto src = u.spec(a);
        std::copy(src.begin(), src.end(), buf.begin());
        differentiate_inplace(g, buf, a);
        for (std::size_t i = 0; i < buf.size(); ++i) dst[i] += buf[i];
    }
    return out;
}

Field curl(const Field& u_in) {
    Field u = ensure_spectral(u_in);
    require(u.is_vector(), errc::arity, "curl expects a vector field");
    const Grid& g = u.grid();
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);

    if (g.dim() == 2) {
        // scalar vorticity d1 u2 - d2 u1
        Field out = Field::spectral_zeros(g, 1);
        auto w = out.spec(0);
        auto u0 = u.spec(0);
        auto u1 = u.spec(1);
#pragma omp parallel for schedule(static)
        for (long long i0 = 0; i0 < n0; ++i0)
            for (int i1 = 0; i1 < n1; ++i1) {
                const std::size_t i = (std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1;
                w[i] = cd(0.0, f0[(std::size_t)i0]) * u1[i] - cd(0.0, f1[(std::size_t)i1]) * u0[i];
            }
        return out;
    }

    Field out = Field::spectral_zeros(g, 3);
    auto o0 = out.spec(0);
    auto o1 = out.spec(1);
    auto o2 = out.spec(2);
    auto u0 = u.spec(0);
    auto u1 = u.spec(1);
    auto u2 = u.spec(2);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1) {
            std::size_t base = ((std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1) * (std::size_t)n2;
            for (int i2 = 0; i2 < n2; ++i2) {
                const std::size_t i = base + (std::size_t)i2;
                const cd ik0(0.0, f0[(std::size_t)i0]);
                const cd ik1(0.0, f1[(std::size_t)i1]);
                const cd ik2(0.0, f2[(std::size_t)i2]);
                o0[i] = ik1 * u2[i] - ik2 * u1[i];
                o1[i] = ik2 * u0[i] - ik0 * u2[i];
                o2[i] = ik0 * u1[i] - ik1 * u0[i];
            }
        }
    return out;
}

Field perp_gradient(const Field& f_in) {
    Field f = ensure_spectral(f_in);
    require(f.grid().dim() == 2, errc::dimension, "perp_gradient is 2D only");
    require(f.is_scalar(), errc::arity, "perp_gradient expects a scalar field");
    const Grid& g = f.grid();
    Field out = Field::spectral_zeros(g, 2);
    auto o0 = out.spec(0);
    auto o1 = out.spec(1);
    auto s = f.spec(0);
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1);
    const int n0 = g.size(0), n1 = g.size(1);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1) {
            const std::size_t i = (std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1;
            o0[i] = -cd(0.0, f1[(std::size_t)i1]) * s[i];
            o1[i] = cd(0.0, f0[(std::size_t)i0]) * s[i];
        }
    return out;
}

Field leray_project(const Field& u_in) {
    Field u = ensure_spectral(u_in);
    require(u.is_vector(), errc::arity, "leray_project expects a vector field");
    const Grid& g = u.grid();
    const int d = g.dim();
    Field out = u;
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
    std::array<std::span<cd>, 3> comp;
    for (int c = 0; c < d; ++c) comp[(std::size_t)c] = out.spec(c);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
                const std::size_t i =
                    ((std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1) * (std::size_t)n2 + (std::size_t)i2;
                const double k[3] = {f0[(std::size_t)i0], f1[(std::size_t)i1], f2[(std::size_t)i2]};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue; // mean mode passes through
                cd kdotu(0.0, 0.0);
                for (int c = 0; c < d; ++c) kdotu += k[c] * comp[(std::size_t)c][i];
                const cd f = kdotu / k2;
                for (int c = 0; c < d; ++c) comp[(std::size_t)c][i] -= f * k[c];
            }
    return out;
}

// ---- integrals ----------------------------------------------------------------

double integrate(const Field& f_in) {
    require(f_in.ncomp() == 1, errc::arity, "integrate expects a scalar field");
    Field f = f_in.is_physical() ? f_in : to_physical(f_in);
    auto s = f.phys(0);
    return f.grid().cell_volume() *
           kernels::sum_generate(s.size(), [&](std::size_t i) { return s[i]; });
}

double inner_product(const Field& a_in, const Field& b_in) {
    require(a_in.grid() == b_in.grid(), errc::grid_mismatch, "inner_product: grid mismatch");
    require(a_in.ncomp() == b_in.ncomp(), errc::grid_mismatch,
            "inner_product: component count mismatch");
    Field a = a_in.is_physical() ? a_in : to_physical(a_in);
    Field b = b_in.is_physical() ? b_in : to_physical(b_in);
    const double cv = a.grid().cell_volume();
    double total = 0.0;
    for (int c = 0; c < a.ncomp(); ++c) {
        auto x = a.phys(c);
        auto y = b.phys(c);
        total += cv * kernels::sum_generate(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
    }
    return total;
}

double total_energy(const Field& u) {
    require(u.is_vector(), errc::arity, "total_energy expects a vector field");
    return 0.5 * inner_product(u, u);
}

double total_helicity(const Field& u) {
    require(u.grid().dim() == 3, errc::dimension, "helicity requires a 3D grid");
    require(u.is_vector(), errc::arity, "total_helicity expects a vector field");
    return inner_product(u, curl(u));
}

double l2_norm(const Field& f_in) {
    Field f = ensure_spectral(f_in);
    double acc = 0.0;
    for (int c = 0; c < f.ncomp(); ++c) {
        auto s = f.spec(c);
        acc += kernels::sum_generate(s.size(), [&](std::size_t i) { return std::norm(s[i]); });
    }
    return std::sqrt(acc * f.grid().volume());
}

// ---- divergence diagnostic -----------------------------------------------------

double divergence_ratio(const Field& u_in) {
    Field u = ensure_spectral(u_in);
    require(u.is_vector(), errc::arity, "divergence_ratio expects a vector field");
    const Grid& g = u.grid();
    const int d = g.dim();
    const auto f0 = g.freq_table(0), f1 = g.freq_table(1), f2 = g.freq_table(2);
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
    double max_div = 0.0, max_ku = 0.0;
    std::array<std::span<const cd>, 3> comp;
    for (int c = 0; c < d; ++c) comp[(std::size_t)c] = u.spec(c);
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
                const std::size_t i =
                    ((std::size_t)i0 * (std::size_t)n1 + (std::size_t)i1) * (std::size_t)n2 + (std::size_t)i2;
                const double k[3] = {f0[(std::size_t)i0], f1[(std::size_t)i1], f2[(std::size_t)i2]};
                const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
                cd kdotu(0.0, 0.0);
                double un = 0.0;
                for (int c = 0; c < d; ++c) {
                    kdotu += k[c] * comp[(std::size_t)c][i];
                    un += std::norm(comp[(std::size_t)c][i]);
                }
                max_div = std::max(max_div, std::abs(kdotu));
                max_ku = std::max(max_ku, kn * std::sqrt(un));
            }
    if (max_ku == 0.0) return 0.0;
    return max_div / max_ku;
}

bool is_divergence_free(const Field& u) { return divergence_ratio(u) <= 1e-12; }

void require_divergence_free(const Field& u, const char* who) {
    require(is_divergence_free(u), errc::flagged_input,
            std::string(who) + ": input field is not divergence-free");
}

// ---- field arithmetic -----------------------------------------------------------

Field add(const Field& a_in, const Field& b_in) {
    require(a_in.grid() == b_in.grid() && a_in.ncomp() == b_in.ncomp(), errc::grid_mismatch,
            "add: field mismatch");
    Field a = ensure_spectral(a_in);
    Field b = ensure_spectral(b_in);
    for (int c = 0; c < a.ncomp(); ++c) {
        auto x = a.spec(c);
        auto y = b.spec(c);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    }
    return a;
}

Field subtract(const Field& a_in, const Field& b_in) {
    return add(a_in, scaled(b_in, -1.0));
}

Field scaled(const Field& a_in, double s) {
    Field a = ensure_spectral(a_in);
    for (int c = 0; c < a.ncomp(); ++c) kernels::scale(a.spec(c), s);
    return a;
}

Field component(const Field& u_in, int c) {
    Field u = ensure_spectral(u_in);
    Field out = Field::spectral_zeros(u.grid(), 1);
    auto src = u.spec(c);
    auto dst = out.spec(0);
    std::copy(src.begin(), src.end(), dst.begin());
    return out;
}

// ---- padding / products -----------------------------------------------------------

Grid padded_grid(const Grid& g) {
    std::vector<int> sizes;
    for (int a = 0; a < g.dim(); ++a) sizes.push_back(2 * g.size(a));
    return Grid(g.dim(), sizes, g.lattice_denominator());
}

std::vector<cd> embed_spectrum(const Grid& g, std::span<const cd> spec, const Grid& pg) {
    std::vector<cd> out(pg.num_points());
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0) {
        const int j0 = pg.index_of_mode(0, g.mode_of_index(0, (int)i0));
        for (int i1 = 0; i1 < n1; ++i1) {
            const int j1 = pg.index_of_mode(1, g.mode_of_index(1, i1));
            for (int i2 = 0; i2 < n2; ++i2) {
                const int j2 = g.dim() == 2 ? 0 : pg.index_of_mode(2, g.mode_of_index(2, i2));
                out[pg.flat_index(j0, j1, j2)] = spec[g.flat_index((int)i0, i1, i2)];
            }
        }
    }
    return out;
}

std::vector<cd> truncate_spectrum(const Grid& pg, std::span<const cd> pspec, const Grid& g) {
    std::vector<cd> out(g.num_points());
    const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < n0; ++i0) {
        const int j0 = pg.index_of_mode(0, g.mode_of_index(0, (int)i0));
        for (int i1 = 0; i1 < n1; ++i1) {
            const int j1 = pg.index_of_mode(1, g.mode_of_index(1, i1));
            for (int i2 = 0; i2 < n2; ++i2) {
                const int j2 = g.dim() == 2 ? 0 : pg.index_of_mode(2, g.mode_of_index(2, i2));
                out[g.flat_index((int)i0, i1, i2)] = pspec[pg.flat_index(j0, j1, j2)];
            }
        }
    }
    return out;
}

std::vector<double> padded_physical(const Grid& g, std::span<const cd> spec) {
    const Grid pg = padded_grid(g);
    std::vector<cd> buf = embed_spectrum(g, spec, pg);
    fft::backward(pg, buf);
    std::vector<double> out(pg.num_points());
    const long long n = (long long)out.size();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) out[(std::size_t)i] = buf[(std::size_t)i].real();
    return out;
}

std::vector<cd> complex_physical(const Grid& g, std::span<const cd> spec) {
    std::vector<cd> buf(spec.begin(), spec.end());
    fft::backward(g, buf);
    return buf;
}

std::vector<cd> complex_physical_padded(const Grid& g, std::span<const cd> spec) {
    const Grid pg = padded_grid(g);
    std::vector<cd> buf = embed_spectrum(g, spec, pg);
    fft::backward(pg, buf);
    return buf;
}

std::vector<cd> product_spectrum(const Grid& g, std::span<const double> pa,
                                 std::span<const double> pb) {
    const Grid pg = padded_grid(g);
    std::vector<cd> buf(pg.num_points());
    const long long n = (long long)buf.size();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i)
        buf[(std::size_t)i] = cd(pa[(std::size_t)i] * pb[(std::size_t)i], 0.0);
    fft::forward(pg, buf);
    kernels::scale(buf, 1.0 / (double)pg.num_points());
    return truncate_spectrum(pg, buf, g);
}

} // namespace lpflux
