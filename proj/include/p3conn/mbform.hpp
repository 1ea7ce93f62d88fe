// The localized Malgrange-Bertola 1-form, its closure and symplectic
// identities, its small-x / large-x asymptotic forms, and the dilogarithmic
// generating function W(sigma, nu).
#ifndef P3CONN_MBFORM_HPP
#define P3CONN_MBFORM_HPP

#include <cmath>
#include <vector>

#include "ode.hpp"
#include "specfun.hpp"
#include "types.hpp"

namespace p3conn {

struct FormSample {
    double x;
    cplx p, q;
    cplx omega_x, omega_p, omega_q;
    cplx bracket;          // v_p u_q - v_q u_p (x-independent along solutions)
    double residual_bound; // sensitivity error estimate carried along
};

namespace mbform_detail {

inline FormSample assemble(double x, const StokesData& st, const SensitivitySample& s) {
    FormSample f;
    f.x = x;
    f.p = st.p;
    f.q = st.q;
    const double x2 = x * x;
    f.omega_x = -x * s.ux * s.ux / 8.0 + x / 4.0 * (std::cos(s.u) - 1.0);
    f.omega_p = -(x2 / 4.0 * s.u_p * std::sin(s.u) + x2 / 4.0 * s.ux * s.u_px +
                  x / 4.0 * s.ux * s.u_p);
    f.omega_q = -(x2 / 4.0 * s.u_q * std::sin(s.u) + x2 / 4.0 * s.ux * s.u_qx +
                  x / 4.0 * s.ux * s.u_q);
    f.bracket = x * s.u_px * s.u_q - x * s.u_qx * s.u_p;
    f.residual_bound = s.error_estimate;
    return f;
}

}  // namespace mbform_detail

// Components of omega at the points x_list (Proposition representation):
//   omega_x = -x u_x^2/8 + (x/4)(cos u - 1),
//   omega_p = -[(x^2/4) u_p sin u + (x^2/4) u_x u_px + (x/4) u_x u_p],
// and omega_q analogously.
inline std::vector<FormSample> omega_at(const std::vector<double>& x_list,
                                        const MonodromyData& m, double h = 1e-3,
                                        double tol = 1e-12) {
    const StokesData st = stokes_from_monodromy(m);
    const auto sens = sensitivities(m, x_list, h, tol);
    std::vector<FormSample> out;
    for (const auto& s : sens) out.push_back(mbform_detail::assemble(s.x, st, s));
    return out;
}

struct ClosureReport {
    std::vector<double> x_list;
    // (i) |d omega(d_p, d_q) + (v_p u_q - v_q u_p)/4| per x (dq^dp orientation)
    std::vector<double> domega_defect;
    // (ii) max relative drift of the bracket across x_list
    double bracket_drift = 0.0;
    // (iii) |bracket - (alpha_p beta_q - alpha_q beta_p)| per x
    std::vector<double> bracket_vs_limit;
    // (iv) |d_x w_p - d_p w_x| per x for w = omega + (x/4) dx + (alpha/4) dbeta
    std::vector<double> w_closure_defect;
    double max_defect() const {
        double d = bracket_drift;
        for (double v : domega_defect) d = std::max(d, v);
        for (double v : bracket_vs_limit) d = std::max(d, v);
        for (double v : w_closure_defect) d = std::max(d, v);
        return d;
    }
};

// The four closure / symplectic identities of d omega, checked by finite
// differences with step h in (p, q).
inline ClosureReport closure_check(const std::vector<double>& x_list,
                                   const MonodromyData& m, double h = 1e-3,
                                   double tol = 1e-12) {
    const StokesData st = stokes_from_monodromy(m);
    auto omega_pq = [&](cplx p, cplx q) {
        const MonodromyData mm = monodromy_from_stokes({p, q});
        return omega_at(x_list, mm, h, tol);
    };
    const auto base = omega_at(x_list, m, h, tol);
    const auto op = omega_pq(st.p + h, st.q), om = omega_pq(st.p - h, st.q);
    const auto oq = omega_pq(st.p, st.q + h), oqm = omega_pq(st.p, st.q - h);

    // x -> 0 limit of the bracket from the closed-form Cauchy maps.
    auto ab = [&](cplx p, cplx q) {
        return cauchy_from_monodromy(monodromy_from_stokes({p, q}));
    };
    const CauchyData cp = ab(st.p + h, st.q), cm = ab(st.p - h, st.q);
    const CauchyData cq = ab(st.p, st.q + h), cqm = ab(st.p, st.q - h);
    const cplx alpha_p = (cp.alpha - cm.alpha) / (2.0 * h);
    const cplx beta_p = (cp.beta - cm.beta) / (2.0 * h);
    const cplx alpha_q = (cq.alpha - cqm.alpha) / (2.0 * h);
    const cplx beta_q = (cq.beta - cqm.beta) / (2.0 * h);
    const cplx limit0 = alpha_p * beta_q - alpha_q * beta_p;

    ClosureReport rep;
    rep.x_list = x_list;
    double bmin = 1e300, bmax = 0.0;
    for (std::size_t i = 0; i < x_list.size(); ++i) {
        // d omega = (v_p u_q - v_q u_p)/4 dq ^ dp, i.e. the dp^dq coefficient
        // d_p omega_q - d_q omega_p must equal -(bracket)/4.
        const cplx domega = (op[i].omega_q - om[i].omega_q) / (2.0 * h) -
                            (oq[i].omega_p - oqm[i].omega_p) / (2.0 * h);
        rep.domega_defect.push_back(std::abs(domega + base[i].bracket / 4.0));
        rep.bracket_vs_limit.push_back(std::abs(base[i].bracket - limit0));
        bmin = std::min(bmin, std::abs(base[i].bracket));
        bmax = std::max(bmax, std::abs(base[i].bracket - base[0].bracket));
    }
    rep.bracket_drift = bmax / std::max(bmin, 1e-300);

    // (iv) closure of w in the (x, p) plane: d_x w_p vs d_p w_x, with
    // w_p = omega_p + (alpha/4) beta_p (x-independent shift) and
    // w_x = omega_x + x/4.  d_x w_p is taken by a central difference in x.
    const double dx = 1e-3;
    for (double x : x_list) {
        const auto o2 = omega_at({x - dx, x + dx}, m, h, tol);
        const cplx dwp_dx = (o2[1].omega_p - o2[0].omega_p) / (2.0 * dx);
        const auto oxp = omega_at({x}, monodromy_from_stokes({st.p + h, st.q}), h, tol);
        const auto oxm = omega_at({x}, monodromy_from_stokes({st.p - h, st.q}), h, tol);
        const cplx dwx_dp = (oxp[0].omega_x - oxm[0].omega_x) / (2.0 * h);
        rep.w_closure_defect.push_back(std::abs(dwp_dx - dwx_dp));
    }
    return rep;
}

struct FormComponents {
    cplx dx, dp, dq;
};

// Large-x asymptotic form (omega at x -> infinity):
//   dx part: d(2 nu x + nu^2 ln x + nu^2)/dx + (i b+^2/8) e^{2ix} x^{2 i nu - 1}
//            - (i b-^2/8) e^{-2ix} x^{-2 i nu - 1},
//   dp/dq parts: -(i/4)(b+ db- - b- db+) via central differences of the
//   closed-form maps b+-(p, q).
inline FormComponents omega_asymptotic_infty(double x, const MonodromyData& m,
                                             double h = 1e-6) {
    if (x < 50.0) throw validation_error("omega_asymptotic_infty: require x >= 50");
    const AsymptoticData a = amplitudes_from_monodromy(m);
    const cplx I(0, 1);
    FormComponents f;
    f.dx = 2.0 * a.nu + a.nu * a.nu / x +
           I * a.b_plus * a.b_plus / 8.0 * std::exp(2.0 * I * x) * std::pow(x, 2.0 * I * a.nu - 1.0) -
           I * a.b_minus * a.b_minus / 8.0 * std::exp(-2.0 * I * x) * std::pow(x, -2.0 * I * a.nu - 1.0);
    const StokesData st = stokes_from_monodromy(m);
    auto amps = [&](cplx p, cplx q) {
        return amplitudes_from_monodromy(monodromy_from_stokes({p, q}));
    };
    const AsymptoticData app = amps(st.p + h, st.q), apm = amps(st.p - h, st.q);
    const AsymptoticData aqp = amps(st.p, st.q + h), aqm = amps(st.p, st.q - h);
    const cplx dbp_dp = (app.b_plus - apm.b_plus) / (2.0 * h);
    const cplx dbm_dp = (app.b_minus - apm.b_minus) / (2.0 * h);
    const cplx dbp_dq = (aqp.b_plus - aqm.b_plus) / (2.0 * h);
    const cplx dbm_dq = (aqp.b_minus - aqm.b_minus) / (2.0 * h);
    f.dp = -I / 4.0 * (a.b_plus * dbm_dp - a.b_minus * dbp_dp);
    f.dq = -I / 4.0 * (a.b_plus * dbm_dq - a.b_minus * dbp_dq);
    return f;
}

// Small-x asymptotic form, omega = d(-alpha^2/8 ln x - alpha^2/8) -
// (alpha/4) d beta + o(1):
//   dx part: -alpha^2/(8x);
//   dp part: -(alpha alpha_p ln x)/4 - (alpha alpha_p)/4 - (alpha beta_p)/4,
// dq analogously, with the Jacobians by central differences of the closed-form
// Cauchy maps.
inline FormComponents omega_asymptotic_zero(double x, const MonodromyData& m,
                                            double h = 1e-6) {
    if (x > 0.05) throw validation_error("omega_asymptotic_zero: require x <= 0.05");
    const CauchyData c = cauchy_from_monodromy(m);
    const StokesData st = stokes_from_monodromy(m);
    auto ab = [&](cplx p, cplx q) {
        return cauchy_from_monodromy(monodromy_from_stokes({p, q}));
    };
    const CauchyData cp = ab(st.p + h, st.q), cm = ab(st.p - h, st.q);
    const CauchyData cq = ab(st.p, st.q + h), cqm = ab(st.p, st.q - h);
    const cplx alpha_p = (cp.alpha - cm.alpha) / (2.0 * h);
    const cplx beta_p = (cp.beta - cm.beta) / (2.0 * h);
    const cplx alpha_q = (cq.alpha - cqm.alpha) / (2.0 * h);
    const cplx beta_q = (cq.beta - cqm.beta) / (2.0 * h);
    FormComponents f;
    f.dx = -c.alpha * c.alpha / (8.0 * x);
    f.dp = -c.alpha * alpha_p * (std::log(x) + 1.0) / 4.0 - c.alpha * beta_p / 4.0;
    f.dq = -c.alpha * alpha_q * (std::log(x) + 1.0) / 4.0 - c.alpha * beta_q / 4.0;
    return f;
}

struct GeneratingFunctionValue {
    cplx sigma, nu, W;
    cplx eta, rho;  // the branch-resolved eta(sigma, nu) and matching rho
};

// eta(sigma, nu) solving sin 2pi eta = e^{pi nu} sin 2pi sigma, by the
// principal arcsine. (This is the branch continuous from eta = 1/4 at nu = 0
// on the valid set; the two candidate roots eta and 1/2 - eta are always
// equidistant from 1/4, so "nearest 1/4" cannot disambiguate -- the principal
// arcsine does, and makes the gradient identities of W hold.)
inline cplx eta_from_sigma_nu(cplx sigma, cplx nu) {
    const cplx sv = std::exp(pi * nu) * std::sin(2.0 * pi * sigma);
    const cplx eta = std::asin(sv) / (2.0 * pi);
    require_valid({sigma, eta});
    return eta;
}

// Explicit evaluation of the generating function for given (sigma, eta, nu):
//   8 pi^2 W = Li2(-e^{2 pi i (sigma+eta - i nu/2)})
//            + Li2(-e^{-2 pi i (sigma+eta + i nu/2)}) - 4 pi^2 eta^2 + pi^2 nu^2.
inline cplx generating_function_W(cplx sigma, cplx eta, cplx nu) {
    const cplx I(0, 1);
    const cplx t1 = dilog(-std::exp(2.0 * pi * I * (sigma + eta - I * nu / 2.0)));
    const cplx t2 = dilog(-std::exp(-2.0 * pi * I * (sigma + eta + I * nu / 2.0)));
    return (t1 + t2 - 4.0 * pi * pi * eta * eta + pi * pi * nu * nu) / (8.0 * pi * pi);
}

inline GeneratingFunctionValue generating_function(cplx sigma, cplx nu) {
    GeneratingFunctionValue g;
    g.sigma = sigma;
    g.nu = nu;
    g.eta = eta_from_sigma_nu(sigma, nu);
    g.rho = rho_from_monodromy({sigma, g.eta}).rho;
    g.W = generating_function_W(sigma, g.eta, nu);
    return g;
}

}  // namespace p3conn

#endif
