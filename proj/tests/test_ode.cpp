#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "p3conn/ode.hpp"
#include "p3conn/tau.hpp"

using namespace p3conn;

namespace {
const MonodromyData kM{0.3, 0.15};
}

TEST_CASE("seed_series: trivial and residual") {
    cplx u, ux;
    seed_series({0, 0}, 1e-3, u, ux);
    CHECK(std::abs(u) < 1e-15);
    CHECK(std::abs(ux) < 1e-12);

    // (alpha, beta) = (0, beta): w = -(sin beta / 4) x^2 at leading order.
    const double beta = 0.7, x0 = 1e-3;
    seed_series({0, beta}, x0, u, ux);
    CHECK(std::abs(u - (beta - std::sin(beta) / 4.0 * x0 * x0)) < 1e-12);

    // Generic data: ODE residual of the seed shrinks like the dropped
    // next-order term (~ x^{2 - |Im alpha|} relative to sin u).
    const CauchyData c = cauchy_from_monodromy(kM);
    const cplx ia = cplx(0, 1) * c.alpha;
    auto residual = [&](double x) {
        cplx uu, uux;
        seed_series(c, x, uu, uux);
        const cplx A =
            cplx(0, 1) * std::exp(cplx(0, 1) * c.beta) / (2.0 * (2.0 + ia) * (2.0 + ia));
        const cplx B = -cplx(0, 1) * std::exp(-cplx(0, 1) * c.beta) /
                       (2.0 * (2.0 - ia) * (2.0 - ia));
        const cplx upp = -c.alpha / (x * x) +
                         A * (2.0 + ia) * (1.0 + ia) * std::pow(x, ia) +
                         B * (2.0 - ia) * (1.0 - ia) * std::pow(x, -ia);
        return std::abs(upp + uux / x + std::sin(uu));
    };
    CHECK(residual(1e-3) < 1e-4);
    CHECK(residual(1e-4) < 1e-5);
    CHECK(residual(1e-4) < residual(1e-3) / 5.0);

    CHECK_THROWS_AS(seed_series(c, 0.5, u, ux), validation_error);
}

TEST_CASE("integrate: fixed point u == 0") {
    const Trajectory t = integrate({0, 0}, 1e-3, 100.0, 1e-12);
    for (const auto& s : t.samples) {
        CHECK(std::abs(s.u) < 1e-12);
        CHECK(std::abs(s.ux) < 1e-12);
    }
    CHECK(t.residual_bound <= 10.0 * t.tol);
}

TEST_CASE("integrate: oscillatory large-x behavior and tol convergence") {
    const CauchyData c = cauchy_from_monodromy(kM);
    const Trajectory t = integrate(c, 1e-3, 200.0, 1e-12, {100.0});
    // |u| x^{1/2} bounded on [50, 200] (real nu here).
    double worst = 0.0;
    for (const auto& s : t.samples)
        if (s.x >= 50.0) worst = std::max(worst, std::abs(s.u) * std::sqrt(s.x));
    CHECK(worst < 2.0);
    CHECK(worst > 0.1);  // and genuinely oscillatory, not decaying away

    // Self-difference at x = 100 shrinks under tolerance halving.
    auto u_at = [&](double tol) {
        return integrate(c, 1e-3, 100.0, tol).samples.back().u;
    };
    const double d1 = std::abs(u_at(1e-9) - u_at(1e-11));
    const double d2 = std::abs(u_at(1e-11) - u_at(1e-13));
    CHECK(d2 < d1);
    CHECK(d2 < 1e-9);
}

TEST_CASE("integrate: residual bound and small/large-x laws") {
    const CauchyData c = cauchy_from_monodromy(kM);
    const Trajectory t = integrate(c, 1e-3, 200.0, 1e-12);
    // The scaled local error stays below tol * (1 + max |y|); |u_x| ~ 400 at
    // the seed, so the absolute bound is ~ 1e-9 here.
    CHECK(t.residual_bound <= 1e-8);
    // Small-x law |u - alpha ln x - beta| <= C x^{2 - |Im alpha|} near the seed.
    for (const auto& s : t.samples) {
        if (s.x > 1e-2) break;
        const double dev = std::abs(s.u - c.alpha * std::log(s.x) - c.beta);
        CHECK(dev <= 1.0 * std::pow(s.x, 2.0 - std::abs(c.alpha.imag())));
    }
}

TEST_CASE("Hamiltonian identity x H_x + v u_x = H along the trajectory") {
    const CauchyData c = cauchy_from_monodromy(kM);
    std::vector<double> pts;
    for (int i = 0; i <= 40; ++i) pts.push_back(5.0 + 0.01 * i);
    const Trajectory t = integrate(c, 1e-3, 6.0, 1e-13, pts);
    for (int i = 1; i + 1 < int(pts.size()); ++i) {
        const auto &sm = t.at_x(pts[i - 1]), &s0 = t.at_x(pts[i]), &sp = t.at_x(pts[i + 1]);
        const cplx Hm = hamiltonian(sm.x, sm.u, sm.ux).H;
        const cplx H0 = hamiltonian(s0.x, s0.u, s0.ux).H;
        const cplx Hp = hamiltonian(sp.x, sp.u, sp.ux).H;
        const cplx Hx = (Hp - Hm) / (sp.x - sm.x);
        const cplx v = s0.x * s0.ux;
        CHECK(std::abs(s0.x * Hx + v * s0.ux - H0) / std::abs(H0) < 1e-4);
    }
}

TEST_CASE("fit_amplitudes: trivial, synthetic round trip, and connection oracle") {
    // u == 0 trajectory (force samples in the fit window; the adaptive grid is
    // very coarse for the trivial solution).
    std::vector<double> win;
    for (int i = 0; i <= 20; ++i) win.push_back(120.0 + 4.0 * i);
    const Trajectory t0 = integrate({0, 0}, 1e-3, 200.0, 1e-12, win);
    const auto f0 = fit_amplitudes(t0, 0.0, 120.0, 200.0);
    CHECK(std::abs(f0.data.b_plus) < 1e-10);
    CHECK(std::abs(f0.data.b_minus) < 1e-10);

    // Synthetic trajectory generated from the six-term basis.
    const cplx I(0, 1);
    const cplx bp(0.2, -0.1);
    const cplx nu(0.013, 0.005);
    const cplx bm = -4.0 * nu / bp;
    Trajectory synth;
    synth.x0 = 120.0;
    synth.tol = 0.0;
    auto add = [&](double x) {
        cplx u = 0, ux = 0;
        auto term = [&](cplx coef, double w, cplx pw) {
            const cplx e = coef * std::exp(I * w * x) * std::pow(x, pw);
            u += e;
            ux += e * (I * w + pw / x);
        };
        term(bp, 1.0, I * nu - 0.5);
        term(bm, -1.0, -I * nu - 0.5);
        term(I * bp / 8.0 * (6.0 * nu * nu + 4.0 * I * nu - 1.0), 1.0, I * nu - 1.5);
        term(-I * bm / 8.0 * (6.0 * nu * nu - 4.0 * I * nu - 1.0), -1.0, -I * nu - 1.5);
        term(-bp * bp * bp / 48.0, 3.0, 3.0 * I * nu - 1.5);
        term(-bm * bm * bm / 48.0, -3.0, -3.0 * I * nu - 1.5);
        synth.samples.push_back({x, u, ux});
    };
    for (int i = 0; i <= 300; ++i) add(120.0 + 80.0 * i / 300.0);
    const auto fs = fit_amplitudes(synth, nu, 120.0, 200.0);
    CHECK(std::abs(fs.data.b_plus - bp) < 1e-8);
    CHECK(std::abs(fs.data.b_minus - bm) < 1e-8);

    // Real trajectory vs the connection formulae.
    const CauchyData c = cauchy_from_monodromy(kM);
    const AsymptoticData ref = amplitudes_from_monodromy(kM);
    const Trajectory t = integrate(c, 1e-3, 200.0, 1e-12);
    const auto fit = fit_amplitudes(t, ref.nu, 120.0, 200.0);
    CHECK(std::abs(fit.data.b_plus - ref.b_plus) / std::abs(ref.b_plus) < 1e-4);
    CHECK(std::abs(fit.data.b_minus - ref.b_minus) / std::abs(ref.b_minus) < 1e-4);
}

TEST_CASE("sensitivities: order and bracket x-independence") {
    const std::vector<double> xs{1.0, 5.0};
    const auto sens = sensitivities(kM, xs, 1e-3, 1e-12);
    REQUIRE(sens.size() == 2);
    for (const auto& s : sens) {
        CHECK(is_finite(s.u_p));
        CHECK(is_finite(s.u_q));
        CHECK(s.error_estimate < 1e-6);
    }
    // v_p u_q - v_q u_p is x-independent.
    auto bracket = [](const SensitivitySample& s) {
        return s.x * s.u_px * s.u_q - s.x * s.u_qx * s.u_p;
    };
    CHECK(std::abs(bracket(sens[0]) - bracket(sens[1])) /
              std::abs(bracket(sens[0])) < 1e-6);
}
