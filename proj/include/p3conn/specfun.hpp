// Complex special functions: log-Gamma, Barnes log-G, the ratio G-hat, and the
// dilogarithm. All functions use the principal logarithm with continuity on the
// cut plane C \ (-inf, 0] enforced by argument-shift recurrences.
#ifndef P3CONN_SPECFUN_HPP
#define P3CONN_SPECFUN_HPP

#include <array>
#include <cmath>

#include "types.hpp"

namespace p3conn {

namespace detail {

// Bernoulli numbers B_2, B_4, ..., B_30.
inline constexpr std::array<double, 15> bernoulli2 = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
    -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
    854513.0 / 138, -236364091.0 / 2730, 8553103.0 / 6,
    -23749461029.0 / 870, 8615841276005.0 / 14322};

// zeta'(-1) = 1/12 - ln A (A the Glaisher-Kinkelin constant).
inline constexpr double zeta_prime_m1 = -0.16542114370045092921391966024278064276;

inline bool near_nonpositive_integer(cplx z, double tol = 1e-12) {
    if (z.real() > 0.5 || std::abs(z.imag()) > tol) return false;
    return std::abs(z.real() - std::round(z.real())) < tol;
}

}  // namespace detail

// log Gamma(z), continuous on C \ (-inf, 0]. Recurrence-shift to Re z >= 10,
// then the Stirling series with Bernoulli-number corrections.
inline cplx log_gamma(cplx z) {
    if (detail::near_nonpositive_integer(z))
        throw validation_error("log_gamma: pole of Gamma at non-positive integer");
    cplx shift = 0.0;
    while (z.real() < 10.0) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi);
    cplx zp = z;
    const cplx z2 = z * z;
    for (std::size_t k = 0; k < detail::bernoulli2.size(); ++k) {
        s += detail::bernoulli2[k] / ((2.0 * k + 1.0) * (2.0 * k + 2.0)) / zp;
        zp *= z2;
    }
    return s - shift;
}

// log G(z) for the Barnes G-function, continuous on C \ (-inf, 0].
// Shift with log G(z) = log G(z+1) - log Gamma(z) to Re z >= 10, then the
// asymptotic series at w = z - 1:
//   ln G(1+w) = (w^2/2 - 1/12) ln w - 3w^2/4 + (w/2) ln 2pi + zeta'(-1)
//               + sum_{k>=1} B_{2k+2} / (2k (2k+2)) w^{-2k}.
inline cplx log_barnes_g(cplx z) {
    if (detail::near_nonpositive_integer(z))
        throw validation_error("log_barnes_g: zero of G at non-positive integer");
    cplx shift = 0.0;
    while (z.real() < 10.0) {
        shift += log_gamma(z);
        z += 1.0;
    }
    const cplx w = z - 1.0;
    cplx s = (w * w / 2.0 - 1.0 / 12.0) * std::log(w) - 3.0 * w * w / 4.0 +
             w / 2.0 * std::log(2.0 * pi) + detail::zeta_prime_m1;
    cplx wp = w * w;
    const cplx w2 = w * w;
    for (int k = 1; k <= 8; ++k) {
        s += detail::bernoulli2[k] / (2.0 * k * (2.0 * k + 2.0)) / wp;
        wp *= w2;
    }
    return s - shift;
}

// log G-hat(z) = log G(1+z) - log G(1-z).
inline cplx log_g_hat(cplx z) {
    return log_barnes_g(1.0 + z) - log_barnes_g(1.0 - z);
}

namespace detail {

// Power series sum_{k>=1} z^k / k^2, for |z| <= 1/2.
inline cplx dilog_series(cplx z) {
    cplx sum = 0.0, term = z;
    for (int k = 1; k < 200; ++k) {
        const cplx add = term / double(k * k);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        term *= z;
    }
    return sum;
}

// Bernoulli series in u = -ln(1-z):
//   Li2(z) = u - u^2/4 + sum_{k>=1} B_{2k} u^{2k+1} / (2k+1)!.
// After the inversion/reflection reductions |u| < 2 pi / 4, so the tail decays
// geometrically with ratio < 1/4.
inline cplx dilog_bernoulli(cplx z) {
    const cplx u = -std::log(1.0 - z);
    const cplx u2 = u * u;
    cplx sum = u - u2 / 4.0;
    cplx up = u * u2;   // u^{2k+1}
    double fact = 6.0;  // (2k+1)!
    for (std::size_t k = 1; k <= bernoulli2.size(); ++k) {
        const cplx add = bernoulli2[k - 1] * up / fact;
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        up *= u2;
        fact *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    return sum;
}

}  // namespace detail

// Dilogarithm Li_2(z), principal branch (cut along [1, inf)).
// Reduction to the region |z| <= 1, Re z <= 1/2 by inversion and reflection
// (each shrinks the argument, so the recursion depth is at most 2), then the
// power series for small |z| or the Bernoulli series in -ln(1-z) otherwise.
inline cplx dilog(cplx z) {
    const double pi2_6 = pi * pi / 6.0;
    if (std::abs(z) > 1.0) {
        // Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - ln^2(-z)/2.
        const cplx lnz = std::log(-z);
        return -dilog(1.0 / z) - pi2_6 - 0.5 * lnz * lnz;
    }
    if (std::abs(1.0 - z) < 1e-14) return pi2_6;
    if (z.real() > 0.5) {
        // Reflection: Li2(z) = pi^2/6 - ln z ln(1-z) - Li2(1-z); for |z| <= 1
        // with Re z > 1/2 the reflected point has |1-z| <= 1, Re(1-z) < 1/2.
        return pi2_6 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
    }
    if (std::abs(z) <= 0.5) return detail::dilog_series(z);
    return detail::dilog_bernoulli(z);
}

}  // namespace p3conn

#endif
