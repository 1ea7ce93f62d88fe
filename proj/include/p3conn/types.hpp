// Core scalar type and error taxonomy shared by all modules.
#ifndef P3CONN_TYPES_HPP
#define P3CONN_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace p3conn {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Domain/validation failures (CLI exit code 1).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical non-convergence (CLI exit code 2).
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace p3conn

#endif
