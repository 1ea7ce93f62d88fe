// High-accuracy integration of the radial sine-Gordon equation
//   u'' + u'/x + sin u = 0
// for complex u: small-x seed series, trajectory recording, asymptotic
// amplitude extraction at large x, and parameter sensitivities in (p, q).
#ifndef P3CONN_ODE_HPP
#define P3CONN_ODE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "dop853.hpp"
#include "monodromy.hpp"
#include "types.hpp"

namespace p3conn {

struct TrajectorySample {
    double x;
    cplx u, ux;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // x strictly increasing
    double x0 = 0.0;                        // seed point
    double tol = 0.0;                       // requested local tolerance
    double residual_bound = 0.0;            // max accepted local-defect estimate
    const TrajectorySample& at_x(double x, double tol_x = 1e-9) const {
        for (const auto& s : samples)
            if (std::abs(s.x - x) <= tol_x * std::max(1.0, std::abs(x))) return s;
        throw validation_error("Trajectory: no sample at requested x");
    }
};

// Small-x seed: u = alpha ln x + beta + A x^{2+i alpha} + B x^{2-i alpha},
// A = i e^{i beta} / (2 (2+i alpha)^2), B = -i e^{-i beta} / (2 (2-i alpha)^2).
inline void seed_series(const CauchyData& c, double x0, cplx& u, cplx& ux) {
    if (x0 <= 0.0 || x0 > 0.01)
        throw validation_error("seed_series: require 0 < x0 <= 0.01");
    if (std::abs(c.alpha.imag()) >= 2.0)
        throw validation_error("seed_series: |Im alpha| >= 2");
    const cplx ia = cplx(0, 1) * c.alpha;
    const cplx A = cplx(0, 1) * std::exp(cplx(0, 1) * c.beta) / (2.0 * (2.0 + ia) * (2.0 + ia));
    const cplx B = -cplx(0, 1) * std::exp(-cplx(0, 1) * c.beta) / (2.0 * (2.0 - ia) * (2.0 - ia));
    const cplx w = A * std::pow(x0, 2.0 + ia) + B * std::pow(x0, 2.0 - ia);
    if (std::abs(w) > 1e-4)
        throw validation_error("seed_series: correction term too large, move x0 closer to 0");
    u = c.alpha * std::log(x0) + c.beta + w;
    ux = c.alpha / x0 + A * (2.0 + ia) * std::pow(x0, 1.0 + ia) +
         B * (2.0 - ia) * std::pow(x0, 1.0 - ia);
}

namespace ode_detail {

// Real 4-vector RHS for the complex sine-Gordon ODE; throws past the
// movable-singularity guard.
struct SineGordonRHS {
    double im_guard = 30.0;
    void operator()(double x, const std::vector<double>& y, std::vector<double>& dy) const {
        const cplx u(y[0], y[1]);
        if (std::abs(u.imag()) > im_guard)
            throw convergence_error(
                "integrate: |Im u| guard exceeded (movable singularity?) at x = " +
                std::to_string(x));
        const cplx ux(y[2], y[3]);
        const cplx upp = -ux / x - std::sin(u);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = upp.real();
        dy[3] = upp.imag();
    }
};

}  // namespace ode_detail

// Integrate from the seed at x0 up to x1. Samples are recorded at every
// accepted step; `sample_points` (strictly increasing, within (x0, x1]) are hit
// exactly.
inline Trajectory integrate(const CauchyData& c, double x0, double x1, double tol,
                            const std::vector<double>& sample_points = {}) {
    if (!(x0 < x1)) throw validation_error("integrate: require x0 < x1");
    cplx u, ux;
    seed_series(c, x0, u, ux);
    std::vector<double> y = {u.real(), u.imag(), ux.real(), ux.imag()};
    Trajectory t;
    t.x0 = x0;
    t.tol = tol;
    t.samples.push_back({x0, u, ux});
    ode_detail::SineGordonRHS rhs;
    auto stats = dop853_integrate(
        rhs, x0, x1, y, tol, tol,
        [&](double x, const std::vector<double>& yy) {
            t.samples.push_back({x, cplx(yy[0], yy[1]), cplx(yy[2], yy[3])});
        },
        sample_points);
    t.residual_bound = stats.max_local_error;
    return t;
}

struct AmplitudeFit {
    AsymptoticData data;
    double residual = 0.0;       // rms misfit over the window
    double condition = 0.0;      // condition estimate of the normal matrix
};

// Least-squares extraction of (b+, b-) from trajectory samples in the window,
// against the six-term large-x basis
//   u ~ b+ e^{ix} x^{i nu - 1/2} + b- e^{-ix} x^{-i nu - 1/2}
//     + (i b+/8)(6 nu^2 + 4 i nu - 1) e^{ix} x^{i nu - 3/2}
//     - (i b-/8)(6 nu^2 - 4 i nu - 1) e^{-ix} x^{-i nu - 3/2}
//     - (b+^3/48) e^{3ix} x^{3 i nu - 3/2} - (b-^3/48) e^{-3ix} x^{-3 i nu - 3/2}.
// Solved by iterating a linear fit for the two leading coefficients with the
// higher-order terms subtracted from the current (b+, b-) estimate.
inline AmplitudeFit fit_amplitudes(const Trajectory& t, cplx nu,
                                   double x_lo, double x_hi) {
    if (x_lo < 30.0) throw validation_error("fit_amplitudes: window must start at x >= 30");
    std::vector<TrajectorySample> pts;
    for (const auto& s : t.samples)
        if (s.x >= x_lo && s.x <= x_hi) pts.push_back(s);
    if (pts.size() < 8) throw validation_error("fit_amplitudes: too few samples in window");

    const cplx I(0, 1);
    // value and x-derivative of c * e^{i w x} x^{pw}
    auto term = [&](double x, cplx coef, double w, cplx pw, cplx& v, cplx& vx) {
        const cplx e = coef * std::exp(I * w * x) * std::pow(x, pw);
        v = e;
        vx = e * (I * w + pw / x);
    };

    cplx bp = 0.0, bm = 0.0;
    double cond = 0.0, resid = 0.0;
    for (int iter = 0; iter < 8; ++iter) {
        // Normal equations for the 2 leading coefficients (conjugate-linear LS).
        cplx g11 = 0, g12 = 0, g22 = 0, r1 = 0, r2 = 0;
        double rms = 0.0;
        for (const auto& s : pts) {
            cplx c1v, c1x, c2v, c2x, hv, hx, tv, tx;
            term(s.x, 1.0, 1.0, I * nu - 0.5, c1v, c1x);
            term(s.x, 1.0, -1.0, -I * nu - 0.5, c2v, c2x);
            cplx corr_v = 0, corr_x = 0;
            term(s.x, I * bp / 8.0 * (6.0 * nu * nu + 4.0 * I * nu - 1.0), 1.0,
                 I * nu - 1.5, hv, hx);
            corr_v += hv; corr_x += hx;
            term(s.x, -I * bm / 8.0 * (6.0 * nu * nu - 4.0 * I * nu - 1.0), -1.0,
                 -I * nu - 1.5, hv, hx);
            corr_v += hv; corr_x += hx;
            term(s.x, -bp * bp * bp / 48.0, 3.0, 3.0 * I * nu - 1.5, hv, hx);
            corr_v += hv; corr_x += hx;
            term(s.x, -bm * bm * bm / 48.0, -3.0, -3.0 * I * nu - 1.5, hv, hx);
            corr_v += hv; corr_x += hx;
            const cplx f1[2] = {c1v, c1x}, f2[2] = {c2v, c2x};
            const cplx rhs[2] = {s.u - corr_v, s.ux - corr_x};
            for (int row = 0; row < 2; ++row) {
                g11 += std::conj(f1[row]) * f1[row];
                g12 += std::conj(f1[row]) * f2[row];
                g22 += std::conj(f2[row]) * f2[row];
                r1 += std::conj(f1[row]) * rhs[row];
                r2 += std::conj(f2[row]) * rhs[row];
                const cplx fitval = bp * f1[row] + bm * f2[row] + (row == 0 ? corr_v : corr_x);
                rms += std::norm((row == 0 ? s.u : s.ux) - fitval);
            }
        }
        const cplx det = g11 * g22 - g12 * std::conj(g12);
        const double tr = std::abs(g11) + std::abs(g22);
        cond = tr * tr / std::max(std::abs(det), 1e-300);
        if (cond > 1e12)
            throw convergence_error("fit_amplitudes: ill-conditioned normal matrix");
        bp = (g22 * r1 - g12 * r2) / det;
        bm = (g11 * r2 - std::conj(g12) * r1) / det;
        resid = std::sqrt(rms / (2.0 * double(pts.size())));
    }
    return {{bp, bm, nu}, resid, cond};
}

struct SensitivitySample {
    double x;
    cplx u, ux;              // base solution
    cplx u_p, u_q, u_px, u_qx;
    double error_estimate;   // Richardson disagreement bound
};

// Central finite differences of full re-solves in the Stokes coordinates
// (p, q), Richardson-extrapolated from steps h and h/2.
inline std::vector<SensitivitySample> sensitivities(const MonodromyData& m,
                                                    const std::vector<double>& xs,
                                                    double h = 1e-3,
                                                    double tol = 1e-12,
                                                    double x0 = 1e-3) {
    require_valid(m);
    const StokesData st = stokes_from_monodromy(m);
    std::vector<double> pts(xs);
    std::sort(pts.begin(), pts.end());
    const double x1 = pts.back();

    auto solve_at = [&](cplx p, cplx q) {
        const MonodromyData mm = monodromy_from_stokes({p, q});
        const CauchyData cc = cauchy_from_monodromy(mm);
        Trajectory t = integrate(cc, x0, x1, tol, pts);
        std::vector<std::pair<cplx, cplx>> vals;
        for (double x : pts) {
            const auto& s = t.at_x(x);
            vals.emplace_back(s.u, s.ux);
        }
        return vals;
    };

    const auto base = solve_at(st.p, st.q);
    // Real parameter displacements along Re p / Re q (the maps are holomorphic,
    // so real-direction derivatives give the complex partials).
    struct Pair { std::vector<std::pair<cplx, cplx>> plus, minus; };
    auto diff = [&](bool in_p, double step) {
        Pair pr;
        const cplx dp = in_p ? cplx(step, 0) : cplx(0, 0);
        const cplx dq = in_p ? cplx(0, 0) : cplx(step, 0);
        pr.plus = solve_at(st.p + dp, st.q + dq);
        pr.minus = solve_at(st.p - dp, st.q - dq);
        return pr;
    };
    const Pair ph = diff(true, h), ph2 = diff(true, h / 2);
    const Pair qh = diff(false, h), qh2 = diff(false, h / 2);

    std::vector<SensitivitySample> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto richardson = [&](const Pair& big, const Pair& small, bool dx_part,
                              double& err) {
            auto get = [&](const std::vector<std::pair<cplx, cplx>>& v) {
                return dx_part ? v[i].second : v[i].first;
            };
            const cplx d1 = (get(big.plus) - get(big.minus)) / (2.0 * h);
            const cplx d2 = (get(small.plus) - get(small.minus)) / h;
            err = std::max(err, std::abs(d2 - d1) / 3.0);
            return (4.0 * d2 - d1) / 3.0;
        };
        SensitivitySample s;
        s.x = pts[i];
        s.u = base[i].first;
        s.ux = base[i].second;
        s.error_estimate = 0.0;
        s.u_p = richardson(ph, ph2, false, s.error_estimate);
        s.u_px = richardson(ph, ph2, true, s.error_estimate);
        s.u_q = richardson(qh, qh2, false, s.error_estimate);
        s.u_qx = richardson(qh, qh2, true, s.error_estimate);
        out.push_back(s);
    }
    return out;
}

}  // namespace p3conn

#endif
