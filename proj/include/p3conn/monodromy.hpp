// Parameter maps among Cauchy data (alpha, beta), monodromy data (sigma, eta),
// Stokes multipliers (p, q), asymptotic amplitudes (b+, b-), the exponent nu,
// and rho, with domain-validity checks.
#ifndef P3CONN_MONODROMY_HPP
#define P3CONN_MONODROMY_HPP

#include <cmath>
#include <string>
#include <vector>

#include "specfun.hpp"
#include "types.hpp"

namespace p3conn {

struct CauchyData {
    cplx alpha, beta;  // u ~ alpha ln x + beta as x -> 0, |Im alpha| < 2
};

struct MonodromyData {
    cplx sigma, eta;
};

struct StokesData {
    cplx p, q;
};

struct AsymptoticData {
    cplx b_plus, b_minus, nu;  // nu = -(1/4) b+ b-
};

struct RhoValue {
    cplx rho;  // e^{-4 pi i rho} = sin 2pi(sigma+eta) / sin 2pi eta
};

struct ValidityCheck {
    std::string name;
    bool pass;
    double margin;  // distance from the constraint boundary (>=0 means pass)
};

struct ValidityReport {
    std::vector<ValidityCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return c.name;
        return {};
    }
};

inline cplx sin2pi(cplx z) { return std::sin(2.0 * pi * z); }

// nu = (1/pi) Log(sin 2pi eta / sin 2pi sigma), principal log, so |Im nu| < 1/2.
inline cplx nu_from_monodromy(const MonodromyData& m) {
    const cplx ratio = sin2pi(m.eta) / sin2pi(m.sigma);
    if (std::abs(std::arg(ratio)) >= pi / 2.0)
        throw validation_error("nu_from_monodromy: |arg(sin2pi eta / sin2pi sigma)| >= pi/2");
    return std::log(ratio) / pi;
}

// Diagnostic report for the validity inequalities of (sigma, eta) and the
// induced (p, q) conditions. Margins below 1e-10 count as violations.
inline ValidityReport validate(const MonodromyData& m) {
    constexpr double min_margin = 1e-10;
    ValidityReport r;
    const double re_s = m.sigma.real();
    r.checks.push_back({"0 < Re sigma", re_s > min_margin, re_s});
    r.checks.push_back({"Re sigma < 1/2", 0.5 - re_s > min_margin, 0.5 - re_s});
    const double s_eta = std::abs(sin2pi(m.eta));
    r.checks.push_back({"sin 2pi eta != 0", s_eta > min_margin, s_eta});
    const double s_sig = std::abs(sin2pi(m.sigma));
    r.checks.push_back({"sin 2pi sigma != 0", s_sig > min_margin, s_sig});
    if (s_eta > min_margin && s_sig > min_margin) {
        const double a = std::abs(std::arg(sin2pi(m.eta) / sin2pi(m.sigma)));
        r.checks.push_back(
            {"|arg(sin2pi eta / sin2pi sigma)| < pi/2 (|Im nu| < 1/2)",
             pi / 2.0 - a > min_margin, pi / 2.0 - a});
    } else {
        r.checks.push_back({"|arg(sin2pi eta / sin2pi sigma)| < pi/2 (|Im nu| < 1/2)",
                            false, -1.0});
    }
    return r;
}

inline void require_valid(const MonodromyData& m) {
    const auto rep = validate(m);
    if (!rep.all_pass())
        throw validation_error("monodromy data invalid: " + rep.first_failure());
}

// alpha = i(2 - 8 sigma);
// beta  = -pi + 4 pi eta - alpha ln 8 - 2i Log(Gamma(1-2sigma)/Gamma(2sigma)).
inline CauchyData cauchy_from_monodromy(const MonodromyData& m) {
    require_valid(m);
    const cplx a = cplx(0, 1) * (2.0 - 8.0 * m.sigma);
    const cplx b = -pi + 4.0 * pi * m.eta - a * std::log(8.0) -
                   cplx(0, 2) * (log_gamma(1.0 - 2.0 * m.sigma) - log_gamma(2.0 * m.sigma));
    return {a, b};
}

// sigma = 1/4 + i alpha / 8;
// eta   = 1/4 + (beta + alpha ln 8)/(4 pi)
//         + (i / 2pi) Log(Gamma(1/2 - i alpha/4)/Gamma(1/2 + i alpha/4)).
inline MonodromyData cauchy_to_monodromy(const CauchyData& c) {
    if (std::abs(c.alpha.imag()) >= 2.0)
        throw validation_error("cauchy_to_monodromy: |Im alpha| >= 2");
    const cplx s = 0.25 + cplx(0, 1) * c.alpha / 8.0;
    const cplx e = 0.25 + (c.beta + c.alpha * std::log(8.0)) / (4.0 * pi) +
                   cplx(0, 1) / (2.0 * pi) *
                       (log_gamma(0.5 - cplx(0, 0.25) * c.alpha) -
                        log_gamma(0.5 + cplx(0, 0.25) * c.alpha));
    const MonodromyData m{s, e};
    require_valid(m);
    return m;
}

// p = -i sin 2pi(sigma+eta)/sin 2pi eta, q = i sin 2pi(sigma-eta)/sin 2pi eta.
inline StokesData stokes_from_monodromy(const MonodromyData& m) {
    if (std::abs(sin2pi(m.eta)) < 1e-14)
        throw validation_error("stokes_from_monodromy: sin 2pi eta = 0");
    const cplx se = sin2pi(m.eta);
    return {-cplx(0, 1) * sin2pi(m.sigma + m.eta) / se,
            cplx(0, 1) * sin2pi(m.sigma - m.eta) / se};
}

// Inverse map (p, q) -> (sigma, eta):
//   cos 2pi sigma = i(p+q)/2 (principal arccos),
//   2pi eta = pi/2 - arctan( i(p-q) / (2 sin 2pi sigma) ).
inline MonodromyData monodromy_from_stokes(const StokesData& st) {
    const cplx c2s = cplx(0, 1) * (st.p + st.q) / 2.0;
    const cplx s = std::acos(c2s) / (2.0 * pi);
    const cplx cot2e = cplx(0, 1) * (st.p - st.q) / (2.0 * sin2pi(s));
    const cplx e = (pi / 2.0 - std::atan(cot2e)) / (2.0 * pi);
    return {s, e};
}

// b+- = -e^{pi nu/2 -+ i pi/4} 2^{1 +- 2 i nu} (2 pi)^{-1/2} Gamma(1 -+ i nu)
//       * sin 2pi(sigma -+ eta) / sin 2pi eta.
inline AsymptoticData amplitudes_from_monodromy(const MonodromyData& m) {
    if (std::abs(sin2pi(m.eta)) < 1e-14)
        throw validation_error("amplitudes_from_monodromy: sin 2pi eta = 0");
    const cplx nu = nu_from_monodromy(m);
    AsymptoticData a;
    a.nu = nu;
    const cplx se = sin2pi(m.eta);
    for (int sg : {+1, -1}) {
        const cplx val = -std::exp(pi * nu / 2.0 - double(sg) * cplx(0, 1) * pi / 4.0) *
                         std::pow(2.0, 1.0 + double(sg) * cplx(0, 2) * nu) /
                         std::sqrt(2.0 * pi) *
                         std::exp(log_gamma(1.0 - double(sg) * cplx(0, 1) * nu)) *
                         sin2pi(m.sigma - double(sg) * m.eta) / se;
        (sg > 0 ? a.b_plus : a.b_minus) = val;
    }
    return a;
}

// rho = (i / 4pi) Log(sin 2pi(sigma+eta) / sin 2pi eta), principal branch.
inline RhoValue rho_from_monodromy(const MonodromyData& m) {
    const cplx num = sin2pi(m.sigma + m.eta);
    if (std::abs(num) < 1e-14)
        throw validation_error("rho_from_monodromy: sin 2pi(sigma+eta) = 0");
    return {cplx(0, 1) / (4.0 * pi) * std::log(num / sin2pi(m.eta))};
}

}  // namespace p3conn

#endif
