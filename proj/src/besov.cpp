#include "lpflux/besov.hpp"

#include <cmath>

#include "lpflux/kernels.hpp"
#include "lpflux/spectral_ops.hpp"

namespace lpflux {

namespace {

// |f| magnitude samples on the 2x grid.
std::vector<double> oversampled_magnitude(const Field& f_in) {
    Field f = ensure_spectral(f_in);
    const Grid& g = f.grid();
    std::vector<double> mag2;
    for (int c = 0; c < f.ncomp(); ++c) {
        std::vector<double> pc = padded_physical(g, f.spec(c));
        if (c == 0) {
            mag2.assign(pc.size(), 0.0);
        }
        const long long n = (long long)pc.size();
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i)
            mag2[(std::size_t)i] += pc[(std::size_t)i] * pc[(std::size_t)i];
    }
    return mag2; // squared magnitudes
}

} // namespace

double lp_norm(const Field& f, double p) {
    require(p >= 1.0, errc::parameter, "lp_norm requires p >= 1");
    std::vector<double> mag2 = oversampled_magnitude(f);
    if (p == lp_infinity) {
        double m = 0.0;
        for (double v : mag2) m = std::max(m, v);
        return std::sqrt(m);
    }
    const Grid pg = padded_grid(f.grid());
    const double cv = pg.cell_volume();
    const double half_p = 0.5 * p;
    const double integral = kernels::sum_generate(
        mag2.size(), [&](std::size_t i) { return std::pow(mag2[i], half_p); });
    return std::pow(cv * integral, 1.0 / p);
}

DyadicCoefficients dyadic_coefficients(const Field& u_in, double s, double p,
                                       const FilterBank& bank) {
    require(p >= 1.0, errc::parameter, "dyadic_coefficients requires p >= 1");
    require(u_in.grid() == bank.grid(), errc::grid_mismatch,
            "dyadic_coefficients: bank grid mismatch");
    Field u = ensure_spectral(u_in);
    DyadicCoefficients out;
    out.s = s;
    out.p = p;
    out.values.resize((std::size_t)bank.q_max() + 2);
    for (int q = -1; q <= bank.q_max(); ++q) {
        const double weight = std::pow(dyadic_scale(q), s);
        out.values[(std::size_t)(q + 1)] = weight * lp_norm(dyadic_block(u, q, bank), p);
    }
    return out;
}

double besov_norm(const Field& u, const BesovParams& params, const FilterBank& bank) {
    require(params.p >= 1.0 && params.r >= 1.0, errc::parameter,
            "besov_norm requires p, r >= 1");
    DyadicCoefficients c = dyadic_coefficients(u, params.s, params.p, bank);
    const double low = lp_norm(dyadic_block(ensure_spectral(u), -1, bank), params.p);
    double tail = 0.0;
    if (params.r == lp_infinity) {
        for (int q = 0; q <= c.q_max(); ++q) tail = std::max(tail, c.at(q));
    } else {
        double acc = 0.0;
        for (int q = 0; q <= c.q_max(); ++q) acc += std::pow(c.at(q), params.r);
        tail = std::pow(acc, 1.0 / params.r);
    }
    return low + tail;
}

double tail_sup(const Field& u, double s, double p, int Q, const FilterBank& bank) {
    require(Q <= bank.q_max(), errc::index, "tail_sup: Q beyond q_max");
    DyadicCoefficients c = dyadic_coefficients(u, s, p, bank);
    double m = 0.0;
    for (int q = Q + 1; q <= c.q_max(); ++q) m = std::max(m, c.at(q));
    return m;
}

} // namespace lpflux
