#pragma once

#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <string>

#include "critline/errors.hpp"

namespace critline {

using ComplexValue = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr ComplexValue kI{0.0, 1.0};

/// Truncation control shared by every evaluator.
struct EvalAccuracy {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_terms = 100000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_terms < 1)
            throw ValidationError("special_functions", "EvalAccuracy",
                                  "abs_tol, rel_tol must be > 0 and max_terms >= 1");
    }
    double bound(double magnitude) const { return abs_tol + rel_tol * magnitude; }
};

inline bool is_finite(ComplexValue z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Returns z unchanged, or throws if either component is NaN/inf.
inline ComplexValue require_finite(ComplexValue z, const char* module, const char* op) {
    if (!is_finite(z))
        throw NonFiniteError(module, op, "non-finite result");
    return z;
}

inline bool is_nonpositive_integer(ComplexValue z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

/// sin(pi z) with exact argument reduction on the real part, so that
/// sin_pi(n + iy) has a real part that is exactly zero.
inline ComplexValue sin_pi(ComplexValue z) {
    const double x = z.real();
    const double n = std::round(x);
    const double r = x - n;  // |r| <= 1/2, exact
    const double sign = (std::fmod(std::abs(n), 2.0) == 1.0) ? -1.0 : 1.0;
    const double py = kPi * z.imag();
    const double s = (r == 0.0) ? 0.0 : std::sin(kPi * r);
    const double c = std::cos(kPi * r);
    return sign * ComplexValue(s * std::cosh(py), c * std::sinh(py));
}

/// sin(pi z) / (pi (z - n)) near an integer n, stable as z -> n.
inline ComplexValue sinc_pi_shifted(ComplexValue w) {
    // sin(pi w) / (pi w)
    if (std::abs(w) < 1e-4) {
        const ComplexValue pw2 = kPi * kPi * w * w;
        return 1.0 - pw2 / 6.0 + pw2 * pw2 / 120.0;
    }
    return sin_pi(w) / (kPi * w);
}

/// Principal Log(sin(pi z)), evaluated without overflow for large |Im z|.
inline ComplexValue log_sin_pi(ComplexValue z) {
    const double y = z.imag();
    if (std::abs(y) < 20.0) return std::log(sin_pi(z));
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); factor out the dominant exponential.
    const ComplexValue ipz = kI * kPi * z;
    ComplexValue log_val;
    if (y > 0.0)
        log_val = -ipz + std::log((std::exp(2.0 * ipz) - 1.0) / (2.0 * kI));
    else
        log_val = ipz + std::log((1.0 - std::exp(-2.0 * ipz)) / (2.0 * kI));
    // fold the imaginary part back into the principal range
    double im = std::remainder(log_val.imag(), 2.0 * kPi);
    return {log_val.real(), im};
}

inline std::string to_string(ComplexValue z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.15g%+.15gi)", z.real(), z.imag());
    return buf;
}

}  // namespace critline
