#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "p3conn/monodromy.hpp"

using namespace p3conn;

namespace {
// Frozen oracle values at (sigma, eta) = (0.3, 0.15).
const cplx kBeta{-1.256637061435917295385, 0.03488869740683663744492};
const cplx kNu{-0.05148775904918575634016, 0.0};
const cplx kP{0.0, -0.3819660112501051517954};
const cplx kQ{0.0, 1.0};
const cplx kRho{0.0, -0.07658724063250828052892};
const cplx kBPlus{-0.4642013434819263495094, 0.568949844442291547193};
const cplx kBMinus{-0.1773091355867314057931, -0.2173195026829899091885};
const MonodromyData kM{0.3, 0.15};
}  // namespace

TEST_CASE("cauchy_from_monodromy: normalization point and oracle") {
    const auto c0 = cauchy_from_monodromy({0.25, 0.25});
    CHECK(std::abs(c0.alpha) < 1e-14);
    CHECK(std::abs(c0.beta) < 1e-13);
    const auto c = cauchy_from_monodromy(kM);
    CHECK(std::abs(c.alpha - cplx(0, -0.4)) < 1e-14);
    CHECK(std::abs(c.beta - kBeta) < 1e-13);
}

TEST_CASE("cauchy <-> monodromy round trip") {
    CHECK(std::abs(cauchy_to_monodromy({0, 0}).sigma - 0.25) < 1e-14);
    CHECK(std::abs(cauchy_to_monodromy({0, 0}).eta - 0.25) < 1e-13);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const MonodromyData m{cplx(0.18 + 0.2 * uni(rng), 0.03 * (uni(rng) - 0.5)),
                              cplx(0.08 + 0.15 * uni(rng), 0.03 * (uni(rng) - 0.5))};
        const auto back = cauchy_to_monodromy(cauchy_from_monodromy(m));
        CHECK(std::abs(back.sigma - m.sigma) < 1e-12);
        CHECK(std::abs(back.eta - m.eta) < 1e-12);
    }
}

TEST_CASE("stokes_from_monodromy and its inverse") {
    const auto st0 = stokes_from_monodromy({0.25, 0.25});
    CHECK(std::abs(st0.p) < 1e-14);
    CHECK(std::abs(st0.q) < 1e-14);
    const auto st = stokes_from_monodromy(kM);
    CHECK(std::abs(st.p - kP) < 1e-13);
    CHECK(std::abs(st.q - kQ) < 1e-13);
    const auto m2 = monodromy_from_stokes(st);
    CHECK(std::abs(m2.sigma - kM.sigma) < 1e-13);
    CHECK(std::abs(m2.eta - kM.eta) < 1e-13);
    // invariant 1 + pq = sin^2 2pi sigma / sin^2 2pi eta
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const MonodromyData m{0.18 + 0.2 * uni(rng), 0.08 + 0.15 * uni(rng)};
        const auto s = stokes_from_monodromy(m);
        const cplx lhs = 1.0 + s.p * s.q;
        const cplx rhs = std::pow(sin2pi(m.sigma) / sin2pi(m.eta), 2);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("nu_from_monodromy") {
    CHECK(std::abs(nu_from_monodromy({0.25, 0.25})) < 1e-14);
    CHECK(std::abs(nu_from_monodromy(kM) - kNu) < 1e-14);
    // sin 0.4 pi = sin 0.6 pi forces nu = 0 at (0.3, 0.2).
    CHECK(std::abs(nu_from_monodromy({0.3, 0.2})) < 1e-14);
    // agreement with -(1/2pi) log(1+pq)
    const auto st = stokes_from_monodromy(kM);
    const cplx alt = -std::log(1.0 + st.p * st.q) / (2.0 * pi);
    CHECK(std::abs(alt - kNu) < 1e-12);
    // first connection relation e^{pi nu} sin 2pi sigma = sin 2pi eta
    const cplx nu = nu_from_monodromy(kM);
    CHECK(std::abs(std::exp(pi * nu) * sin2pi(kM.sigma) - sin2pi(kM.eta)) < 1e-12);
}

TEST_CASE("amplitudes_from_monodromy") {
    const auto a0 = amplitudes_from_monodromy({0.25, 0.25});
    CHECK(std::abs(a0.b_plus) < 1e-14);
    CHECK(std::abs(a0.b_minus) < 1e-14);
    const auto a = amplitudes_from_monodromy(kM);
    CHECK(std::abs(a.b_plus - kBPlus) < 1e-12);
    CHECK(std::abs(a.b_minus - kBMinus) < 1e-12);
    // product identity b+ b- = -4 nu on random valid data
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const MonodromyData m{cplx(0.18 + 0.2 * uni(rng), 0.02 * (uni(rng) - 0.5)),
                              cplx(0.08 + 0.15 * uni(rng), 0.02 * (uni(rng) - 0.5))};
        const auto aa = amplitudes_from_monodromy(m);
        CHECK(std::abs(aa.b_plus * aa.b_minus + 4.0 * aa.nu) < 1e-10);
    }
    // For real (sigma, eta) with real nu, |b+ b-| = 4 |nu| and the product is
    // real negative times sign(nu) -- verified numerically, not assumed.
    CHECK(std::abs(std::abs(a.b_plus * a.b_minus) - 4.0 * std::abs(a.nu)) < 1e-10);
    CHECK(std::abs(std::arg(-a.b_plus * a.b_minus / a.nu)) < 1e-10);
}

TEST_CASE("rho_from_monodromy") {
    const auto r = rho_from_monodromy(kM);
    CHECK(std::abs(r.rho - kRho) < 1e-13);
    // defining relation e^{-4 pi i rho} = sin 2pi(sigma+eta)/sin 2pi eta
    const cplx lhs = std::exp(-4.0 * pi * cplx(0, 1) * r.rho);
    const cplx rhs = sin2pi(kM.sigma + kM.eta) / sin2pi(kM.eta);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    // identity (6): 2 cos pi(sigma+eta +- i nu/2) = e^{i pi(+-sigma -+ eta - i nu/2 - 4 rho)}
    const cplx nu = nu_from_monodromy(kM);
    for (int sg : {+1, -1}) {
        const cplx lhs6 =
            2.0 * std::cos(pi * (kM.sigma + kM.eta + double(sg) * cplx(0, 0.5) * nu));
        const cplx rhs6 = std::exp(cplx(0, 1) * pi *
                                   (double(sg) * kM.sigma - double(sg) * kM.eta -
                                    cplx(0, 0.5) * nu - 4.0 * r.rho));
        CHECK(std::abs(lhs6 - rhs6) < 1e-10);
    }
    CHECK_THROWS_AS(rho_from_monodromy({0.25, 0.25}), validation_error);
}

TEST_CASE("validate") {
    CHECK(validate({0.25, 0.25}).all_pass());
    CHECK_FALSE(validate({0.25, 0.5}).all_pass());   // sin 2pi eta = 0
    CHECK_FALSE(validate({0.6, 0.25}).all_pass());   // Re sigma >= 1/2
    // |Im nu| >= 1/2 at strongly complex sigma
    const MonodromyData bad{cplx(0.25, 0.3), 0.25};
    const cplx ratio = sin2pi(bad.eta) / sin2pi(bad.sigma);
    if (std::abs(std::arg(ratio)) >= pi / 2.0) CHECK_FALSE(validate(bad).all_pass());
}
