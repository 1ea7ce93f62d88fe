// Hamiltonian and tau-function machinery: the regularized quadrature and
// action representations of ln(C_inf / C_0), the closed-form evaluation, the
// generating-function decomposition, and the chi constant.
#ifndef P3CONN_TAU_HPP
#define P3CONN_TAU_HPP

#include <cmath>
#include <string>

#include "mbform.hpp"
#include "monodromy.hpp"
#include "ode.hpp"
#include "specfun.hpp"
#include "types.hpp"

namespace p3conn {

struct HamiltonianSample {
    double x;
    cplx H, v;  // H = v^2/(2x) - x cos u, v = x u_x; d ln tau / dx = -H/4
};

inline HamiltonianSample hamiltonian(double x, cplx u, cplx ux) {
    if (x <= 0.0) throw validation_error("hamiltonian: require x > 0");
    const cplx v = x * ux;
    return {x, v * v / (2.0 * x) - x * std::cos(u), v};
}

enum class TauMethod { quadrature, action, closed_form };

struct TauRatioResult {
    cplx log_ratio;
    double error_estimate = 0.0;
    TauMethod method = TauMethod::quadrature;
};

// ln c1 for c1 = 2^{3/2} e^{-i pi/4} / (pi G(1/2)^4).
inline cplx log_c1() {
    return 1.5 * std::log(2.0) - cplx(0, 1) * pi / 4.0 - std::log(pi) -
           4.0 * log_barnes_g(0.5);
}

namespace tau_detail {

// The regularized Ghat-ratio term 2 appearances of which enter the closed form:
//   gh = ln Ghat(sigma+eta+(1-i nu)/2) - ln Ghat(sigma+eta+(1+i nu)/2)
// with principal-branch Barnes factors, corrected by +2 pi i sign(Re nu) when
// Re(1/2 - sigma - eta) < 0 so that exp matches the quadrature value. On the
// removable singular line nu = 0, sigma + eta = 1/2 the limit is
// 2 i atan(-cot 2 pi sigma).
inline cplx gh_term(const MonodromyData& m, cplx nu) {
    if (std::abs(nu) < 1e-13) {
        const cplx w = 0.5 - m.sigma - m.eta;
        if (std::abs(w) < 1e-12)
            return 2.0 * cplx(0, 1) * std::atan(-1.0 / std::tan(2.0 * pi * m.sigma.real()));
        return 0.0;
    }
    const cplx am = m.sigma + m.eta + (1.0 - cplx(0, 1) * nu) / 2.0;
    const cplx ap = m.sigma + m.eta + (1.0 + cplx(0, 1) * nu) / 2.0;
    cplx gh = log_g_hat(am) - log_g_hat(ap);
    if ((0.5 - m.sigma - m.eta).real() < 0.0)
        gh += 2.0 * pi * cplx(0, 1) * (nu.real() > 0 ? 1.0 : -1.0);
    return gh;
}

// Oscillatory tail of the regularized integral after one integration by parts,
// evaluated at the truncation point T:
//   -(b+^2/16) e^{2iT} T^{2 i nu - 1} - (b-^2/16) e^{-2iT} T^{-2 i nu - 1}.
inline cplx tail_correction(const AsymptoticData& a, double T) {
    const cplx I(0, 1);
    return -(a.b_plus * a.b_plus / 16.0) * std::exp(2.0 * I * T) *
               std::pow(T, 2.0 * I * a.nu - 1.0) -
           (a.b_minus * a.b_minus / 16.0) * std::exp(-2.0 * I * T) *
               std::pow(T, -2.0 * I * a.nu - 1.0);
}

struct LegResult {
    cplx u, ux, z;          // state and accumulated integral at the endpoint
    cplx u_mid, ux_mid, z_mid;  // ... and at the interior checkpoint
    double mid = 0.0;
};

// Integrate u together with z' = integrand from xa to xb; `alpha_counter`
// adds the alpha^2/(8x) counterterm (small-x leg), `action_form` switches the
// integrand from omega_x = -H/4 - x/4 to (H - v u_x)/4.
inline LegResult quad_leg(cplx u, cplx ux, cplx alpha, double xa, double xb,
                          double tol, bool alpha_counter, bool action_form,
                          double mid = 0.0) {
    std::vector<double> y = {u.real(), u.imag(), ux.real(), ux.imag(), 0.0, 0.0};
    const cplx a2_8 = alpha * alpha / 8.0;
    auto rhs = [&](double x, const std::vector<double>& yy, std::vector<double>& dy) {
        const cplx uu(yy[0], yy[1]), uux(yy[2], yy[3]);
        if (std::abs(uu.imag()) > 30.0)
            throw convergence_error("log_tau_ratio: |Im u| guard exceeded at x = " +
                                    std::to_string(x));
        const cplx upp = -uux / x - std::sin(uu);
        cplx integ;
        if (action_form) {
            const cplx v = x * uux;
            const cplx H = v * v / (2.0 * x) - x * std::cos(uu);
            integ = (H - v * uux) / 4.0;
        } else {
            integ = -x * uux * uux / 8.0 + x / 4.0 * (std::cos(uu) - 1.0);
        }
        if (alpha_counter) integ += a2_8 / x;
        dy[0] = yy[2];
        dy[1] = yy[3];
        dy[2] = upp.real();
        dy[3] = upp.imag();
        dy[4] = integ.real();
        dy[5] = integ.imag();
    };
    LegResult r;
    r.mid = mid;
    std::vector<double> cps;
    if (mid > xa && mid < xb) cps.push_back(mid);
    dop853_integrate(
        rhs, xa, xb, y, tol, tol,
        [&](double x, const std::vector<double>& yy) {
            if (mid > 0.0 && std::abs(x - mid) < 1e-12 * mid) {
                r.u_mid = cplx(yy[0], yy[1]);
                r.ux_mid = cplx(yy[2], yy[3]);
                r.z_mid = cplx(yy[4], yy[5]);
            }
        },
        cps);
    r.u = cplx(y[0], y[1]);
    r.ux = cplx(y[2], y[3]);
    r.z = cplx(y[4], y[5]);
    return r;
}

}  // namespace tau_detail

// Regularized quadrature of ln(C_inf/C_0):
//   z = int_{t0}^{t1} omega_x dx with the alpha^2/(8x) counterterm on
//   [t0, x_switch]; result = z - (alpha^2/8) ln x_switch - t0^2/8 - 2 nu t1
//   - nu^2 ln t1 + tail(t1).
// The error estimate compares the same assembly truncated at t1/2.
inline TauRatioResult log_tau_ratio_quadrature(const MonodromyData& m, double t0 = 1e-4,
                                               double t1 = 200.0, double tol = 1e-12) {
    if (t0 > 1e-3 || t1 < 100.0)
        throw validation_error("log_tau_ratio_quadrature: require t0 <= 1e-3, t1 >= 100");
    require_valid(m);
    const CauchyData c = cauchy_from_monodromy(m);
    const AsymptoticData a = amplitudes_from_monodromy(m);
    const double xsw = 1.0;
    cplx u, ux;
    seed_series(c, t0, u, ux);
    const auto leg1 = tau_detail::quad_leg(u, ux, c.alpha, t0, xsw, tol, true, false);
    const auto leg2 =
        tau_detail::quad_leg(leg1.u, leg1.ux, c.alpha, xsw, t1, tol, false, false, t1 / 2.0);
    auto assemble = [&](double T, cplx z) {
        return z - c.alpha * c.alpha / 8.0 * std::log(xsw) - t0 * t0 / 8.0 -
               2.0 * a.nu * T - a.nu * a.nu * std::log(T) +
               tau_detail::tail_correction(a, T);
    };
    const cplx full = assemble(t1, leg1.z + leg2.z);
    const cplx half = assemble(t1 / 2.0, leg1.z + leg2.z_mid);
    TauRatioResult r;
    r.method = TauMethod::quadrature;
    r.log_ratio = full;
    r.error_estimate = 2.0 * std::abs(full - half) + 100.0 * tol * (t1 - t0);
    return r;
}

// Regularized action representation:
//   S = int_{t0}^{t1} (H - v u_x)/4 dx  (alpha^2/(8x) counterterm on the small
//   leg), result = S - (alpha^2/8) ln x_switch - (1/4)[x H]_{t0}^{t1} - t1^2/8
//   - 2 nu t1 - nu^2 ln t1 + tail(t1).
inline TauRatioResult log_tau_ratio_action(const MonodromyData& m, double t0 = 1e-4,
                                           double t1 = 200.0, double tol = 1e-12) {
    if (t0 > 1e-3 || t1 < 100.0)
        throw validation_error("log_tau_ratio_action: require t0 <= 1e-3, t1 >= 100");
    require_valid(m);
    const CauchyData c = cauchy_from_monodromy(m);
    const AsymptoticData a = amplitudes_from_monodromy(m);
    const double xsw = 1.0;
    cplx u0, ux0;
    seed_series(c, t0, u0, ux0);
    const auto leg1 = tau_detail::quad_leg(u0, ux0, c.alpha, t0, xsw, tol, true, true);
    const auto leg2 =
        tau_detail::quad_leg(leg1.u, leg1.ux, c.alpha, xsw, t1, tol, false, true, t1 / 2.0);
    const cplx H0 = hamiltonian(t0, u0, ux0).H;
    auto assemble = [&](double T, cplx z, cplx uT, cplx uxT) {
        const cplx HT = hamiltonian(T, uT, uxT).H;
        return z - c.alpha * c.alpha / 8.0 * std::log(xsw) -
               (T * HT - t0 * H0) / 4.0 - T * T / 8.0 - 2.0 * a.nu * T -
               a.nu * a.nu * std::log(T) + tau_detail::tail_correction(a, T);
    };
    const cplx full = assemble(t1, leg1.z + leg2.z, leg2.u, leg2.ux);
    const cplx half = assemble(t1 / 2.0, leg1.z + leg2.z_mid, leg2.u_mid, leg2.ux_mid);
    TauRatioResult r;
    r.method = TauMethod::action;
    r.log_ratio = full;
    r.error_estimate = 2.0 * std::abs(full - half) + 100.0 * tol * (t1 - t0);
    return r;
}

// Closed form of Theorem 1:
//   ln(C_inf/C_0) = ln c1 + i nu ln 2pi + (2 nu^2 + 24 sigma^2 - 12 sigma) ln 2
//     + 2 pi i (eta^2 - 2 sigma eta - sigma^2 + 2 eta - sigma)
//     + ln Gamma(1-2sigma) - ln Gamma(2sigma)
//     + 2 [ln G(1+i nu) + ln G(1+2sigma) + ln G(1-2sigma) + gh].
inline TauRatioResult log_tau_ratio_closed_form(const MonodromyData& m) {
    require_valid(m);
    cplx nu = nu_from_monodromy(m);
    if (std::abs(nu) < 1e-13) nu = 0.0;
    const cplx gh = tau_detail::gh_term(m, nu);
    const cplx s = m.sigma, e = m.eta;
    TauRatioResult r;
    r.method = TauMethod::closed_form;
    r.log_ratio = log_c1() + cplx(0, 1) * nu * std::log(2.0 * pi) +
                  (2.0 * nu * nu + 24.0 * s * s - 12.0 * s) * std::log(2.0) +
                  2.0 * pi * cplx(0, 1) * (e * e - 2.0 * s * e - s * s + 2.0 * e - s) +
                  log_gamma(1.0 - 2.0 * s) - log_gamma(2.0 * s) +
                  2.0 * (log_barnes_g(1.0 + cplx(0, 1) * nu) + log_barnes_g(1.0 + 2.0 * s) +
                         log_barnes_g(1.0 - 2.0 * s) + gh);
    r.error_estimate = 1e-12;
    return r;
}

struct DecompositionTerms {
    cplx elementary;    // polynomial/log part of the split
    cplx gamma_term_8;  // the first Gamma-integral contribution
    cplx gamma_term_9;  // the second Gamma-integral contribution (0 at nu = 0)
    cplx dilog_term_10; // -8 pi i (sigma eta + i nu rho - W) + i pi/6
    cplx sum() const { return elementary + gamma_term_8 + gamma_term_9 + dilog_term_10; }
};

// Decomposition of ln(C_inf/C_0) - ln c1 into the bracketed contributions of
// the derivation (elementary part, two Gamma-integral terms, dilogarithm
// term). The dilogarithm term carries the +i pi/6 constant that the assembled
// first integral requires.
inline DecompositionTerms generating_function_terms(const MonodromyData& m) {
    require_valid(m);
    const cplx nu = nu_from_monodromy(m);
    const cplx s = m.sigma, e = m.eta;
    const cplx I(0, 1);
    const cplx rho = rho_from_monodromy(m).rho;
    const cplx W = generating_function_W(s, e, nu);
    DecompositionTerms t;
    t.elementary = nu * nu + 4.0 * s - 8.0 * s * s - I * nu + 2.0 * I * pi * e -
                   12.0 * s * std::log(2.0) + 24.0 * s * s * std::log(2.0) +
                   0.5 * I * pi * nu * nu + 2.0 * nu * nu * std::log(2.0);
    t.gamma_term_8 = log_gamma(1.0 - 2.0 * s) - log_gamma(2.0 * s) - 4.0 * s +
                     8.0 * s * s +
                     2.0 * (log_barnes_g(1.0 - 2.0 * s) + log_barnes_g(1.0 + 2.0 * s));
    t.gamma_term_9 = I * nu - nu * nu - I * nu * std::log(2.0 * pi) +
                     2.0 * log_barnes_g(1.0 + I * nu);
    t.dilog_term_10 = -8.0 * pi * I * (s * e + I * nu * rho - W) + I * pi / 6.0;
    return t;
}

// chi = (2 pi)^{i nu - 1/2} e^{i pi (eta^2 - 2 sigma eta - sigma^2 + eta -
//       sigma - nu^2/4 + 1/8)} 2^{-1/4} G(1/2)^{-2} Ghat(am)/Ghat(ap).
inline cplx log_chi_constant(const MonodromyData& m) {
    require_valid(m);
    cplx nu = nu_from_monodromy(m);
    if (std::abs(nu) < 1e-13) nu = 0.0;
    const cplx gh = tau_detail::gh_term(m, nu);
    const cplx s = m.sigma, e = m.eta;
    return (cplx(0, 1) * nu - 0.5) * std::log(2.0 * pi) +
           cplx(0, 1) * pi *
               (e * e - 2.0 * s * e - s * s + e - s - nu * nu / 4.0 + 0.125) -
           0.25 * std::log(2.0) - 2.0 * log_barnes_g(0.5) + gh;
}

inline cplx chi_constant(const MonodromyData& m) { return std::exp(log_chi_constant(m)); }

// chi re-assembled from the closed-form tau ratio (the "(19) route"); must
// agree with chi_constant. The nu^2 phase here is e^{-i pi nu^2 / 4}.
inline cplx log_chi_via_ratio(const MonodromyData& m) {
    require_valid(m);
    cplx nu = nu_from_monodromy(m);
    if (std::abs(nu) < 1e-13) nu = 0.0;
    const cplx s = m.sigma, e = m.eta;
    const cplx lr = log_tau_ratio_closed_form(m).log_ratio;
    return 0.5 * lr + 0.5 * cplx(0, 1) * nu * std::log(2.0 * pi) +
           (-1.5 - nu * nu - 12.0 * s * s + 6.0 * s) * std::log(2.0) -
           0.25 * cplx(0, 1) * pi * nu * nu - cplx(0, 1) * pi * e +
           0.25 * cplx(0, 1) * pi - log_barnes_g(1.0 + cplx(0, 1) * nu) -
           log_barnes_g(1.0 + 2.0 * s) - log_barnes_g(1.0 - 2.0 * s) -
           0.5 * (log_gamma(1.0 - 2.0 * s) - log_gamma(2.0 * s));
}

}  // namespace p3conn

#endif
