#ifndef LPFLUX_BESOV_HPP
#define LPFLUX_BESOV_HPP

#include <limits>
#include <vector>

#include "lpflux/field.hpp"
#include "lpflux/filter_bank.hpp"

namespace lpflux {

inline constexpr double lp_infinity = std::numeric_limits<double>::infinity();

/// L^p norm of |f(x)| (Euclidean magnitude across components), by quadrature
/// on the 2x oversampled physical grid. p = infinity returns the max sample.
/// |f|^p is not band-limited for p outside {2}, so this is an approximation;
/// tolerances downstream account for it.
double lp_norm(const Field& f, double p);

/// The sequence lambda_q^s ||Delta_q u||_p for q = -1..q_max.
/// The q = -1 entry uses the literal weight 2^{-s}.
struct DyadicCoefficients {
    double s = 0.0;
    double p = 2.0;
    std::vector<double> values; // index q+1

    double at(int q) const { return values[(std::size_t)(q + 1)]; }
    int q_max() const { return (int)values.size() - 2; }
};

DyadicCoefficients dyadic_coefficients(const Field& u, double s, double p, const FilterBank& bank);

struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double r = 2.0; // lp_infinity for the sup norm
};

/// ||Delta_{-1}u||_p + l^r over q = 0..q_max of lambda_q^s ||Delta_q u||_p.
double besov_norm(const Field& u, const BesovParams& params, const FilterBank& bank);

/// sup over Q < q <= q_max of lambda_q^s ||Delta_q u||_p.
double tail_sup(const Field& u, double s, double p, int Q, const FilterBank& bank);

} // namespace lpflux

#endif
