#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "p3conn/specfun.hpp"

using namespace p3conn;
using doctest::Approx;

namespace {
// Frozen high-precision oracle values (independent multi-precision evaluation).
const cplx kLogGamma_1p2i{-1.87607878643092934123, 0.1296463163097883113837};
const cplx kLogGamma_half{0.5723649429247000870717, 0.0};
const cplx kLogGamma_3m15i{0.2711351784983639107564, -1.46335506256049042833};
const cplx kLogGamma_m25p05i{-0.9350856212982774786826, -8.870962885247459198646};
const cplx kLogG_half{-0.5054330544896953827977, 0.0};
const cplx kLogG_37{0.3852902057046427195988, 0.0};
const cplx kLogG_13p04i{0.130892206267144324091, 0.007516132651322813315577};
const cplx kLogG_025m03i{-0.6853457658527029819616, -0.9629992241711172837472};
const cplx kLi2_03p04i{0.2665968667427404341612, 0.4613628918191089731891};
const cplx kLi2_m25p1i{-1.74097672339148175616, 0.4952497888922603196104};
const cplx kLi2_3p05i{1.811987306770073431571, 3.376032085855236994402};
const cplx kLi2_half{0.5822405264650125059027, 0.0};
}  // namespace

TEST_CASE("log_gamma: trivial and oracle values") {
    CHECK(std::abs(log_gamma(cplx(1, 0))) < 1e-13);
    CHECK(std::abs(log_gamma(cplx(0.5, 0)) - kLogGamma_half) < 1e-13);
    CHECK(std::abs(log_gamma(cplx(1, 2)) - kLogGamma_1p2i) < 1e-13);
    CHECK(std::abs(log_gamma(cplx(3, -1.5)) - kLogGamma_3m15i) < 1e-13);
    // Continuity across Re z < 0 (no principal-branch wrap in the strip).
    CHECK(std::abs(log_gamma(cplx(-2.5, 0.5)) - kLogGamma_m25p05i) < 1e-12);
}

TEST_CASE("log_gamma: recurrence and poles") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        cplx z(4.0 * uni(rng), 4.0 * uni(rng));
        if (z.real() < 0.2 && std::abs(z.imag()) < 0.2) z += cplx(1.0, 0.5);
        CHECK(std::abs(log_gamma(z + 1.0) - log_gamma(z) - std::log(z)) < 1e-12);
    }
    CHECK_THROWS_AS(log_gamma(cplx(0, 0)), validation_error);
    CHECK_THROWS_AS(log_gamma(cplx(-3, 0)), validation_error);
}

TEST_CASE("log_barnes_g: trivial and oracle values") {
    CHECK(std::abs(log_barnes_g(cplx(1, 0))) < 1e-12);
    CHECK(std::abs(log_barnes_g(cplx(2, 0))) < 1e-12);
    CHECK(std::abs(log_barnes_g(cplx(4, 0)) - std::log(2.0)) < 1e-12);
    CHECK(std::abs(log_barnes_g(cplx(0.5, 0)) - kLogG_half) < 1e-12);
    CHECK(std::abs(log_barnes_g(cplx(3.7, 0)) - kLogG_37) < 1e-12);
    CHECK(std::abs(log_barnes_g(cplx(1.3, 0.4)) - kLogG_13p04i) < 1e-12);
    CHECK(std::abs(log_barnes_g(cplx(0.25, -0.3)) - kLogG_025m03i) < 1e-12);
    CHECK_THROWS_AS(log_barnes_g(cplx(0, 0)), validation_error);
    CHECK_THROWS_AS(log_barnes_g(cplx(-2, 0)), validation_error);
}

TEST_CASE("log_g_hat: symmetry") {
    CHECK(std::abs(log_g_hat(cplx(0, 0))) < 1e-12);
    // G(3/2) = Gamma(1/2) G(1/2)  =>  Ghat(1/2) = sqrt(pi).
    CHECK(std::abs(log_g_hat(cplx(0.5, 0)) - 0.5 * std::log(pi)) < 1e-12);
    const cplx z(0.3, 0.1);
    CHECK(std::abs(log_g_hat(z) + log_g_hat(-z)) < 1e-12);
}

TEST_CASE("dilog: classical and oracle values") {
    CHECK(std::abs(dilog(cplx(0, 0))) < 1e-15);
    CHECK(std::abs(dilog(cplx(1, 0)) - pi * pi / 6.0) < 1e-13);
    const double l2 = std::log(2.0);
    CHECK(std::abs(dilog(cplx(0.5, 0)) - (pi * pi / 12.0 - l2 * l2 / 2.0)) < 1e-14);
    CHECK(std::abs(dilog(cplx(0.5, 0)) - kLi2_half) < 1e-14);
    CHECK(std::abs(dilog(cplx(0.3, 0.4)) - kLi2_03p04i) < 1e-13);
    CHECK(std::abs(dilog(cplx(-2.5, 1)) - kLi2_m25p1i) < 1e-13);
    CHECK(std::abs(dilog(cplx(3, 0.5)) - kLi2_3p05i) < 1e-13);
}

TEST_CASE("dilog: derivative relation Li2'(z) = -ln(1-z)/z") {
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.2, 0.7), cplx(0.8, -0.5), cplx(1.4, 0.9)}) {
        const double h = 1e-6;
        const cplx d = (dilog(z + h) - dilog(z - h)) / (2.0 * h);
        CHECK(std::abs(d + std::log(1.0 - z) / z) < 1e-8);
    }
}

TEST_CASE("specfun invariants on random samples") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        cplx z(5.0 * uni(rng), 5.0 * uni(rng));
        if (z.real() < 0.1 && std::abs(z.imag()) < 0.1) z += cplx(0.5, 0.3);
        CHECK(std::abs(log_barnes_g(z + 1.0) - log_gamma(z) - log_barnes_g(z)) < 1e-11);
    }
    for (int i = 0; i < 1000; ++i) {
        const cplx z(0.02 + 0.96 * std::abs(uni(rng)), 0.1 * uni(rng));
        const cplx defect = dilog(z) + dilog(1.0 - z) - pi * pi / 6.0 +
                            std::log(z) * std::log(1.0 - z);
        CHECK(std::abs(defect) < 1e-11);
    }
}
