#pragma once

// Complex Γ, ζ, Riemann-Siegel θ and Hardy Z in double precision, plus the
// auxiliary Mellin integral I(s) evaluated by quadrature.

#include <array>
#include <cmath>

#include "critline/complex.hpp"
#include "critline/quadrature.hpp"

namespace critline {

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// B_2 .. B_30
inline constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

inline constexpr int kEulerMaclaurinOrder = 10;

inline ComplexValue ln_gamma_lanczos(ComplexValue z) {
    // valid for Re z >= 1/2
    const ComplexValue zm = z - 1.0;
    ComplexValue series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (zm + static_cast<double>(i));
    const ComplexValue t = zm + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace detail

/// Log-gamma on the standard branch: real on the positive axis and
/// continuous in the cut plane, so Im ln_gamma(1/4 + it/2) is the smooth
/// phase used by θ. For Re z <= 0 the reflection formula is used and the
/// result is only defined modulo 2πi.
inline ComplexValue ln_gamma(ComplexValue z) {
    if (is_nonpositive_integer(z))
        throw PoleError("special_functions", "ln_gamma", "pole at " + to_string(z));
    if (!is_finite(z))
        throw DomainError("special_functions", "ln_gamma", "non-finite argument");
    ComplexValue out;
    if (z.real() >= 0.5) {
        out = detail::ln_gamma_lanczos(z);
    } else if (z.real() > 0.0) {
        out = detail::ln_gamma_lanczos(z + 1.0) - std::log(z);
    } else {
        out = std::log(kPi) - log_sin_pi(z) - detail::ln_gamma_lanczos(1.0 - z);
    }
    return require_finite(out, "special_functions", "ln_gamma");
}

inline ComplexValue gamma(ComplexValue z) { return std::exp(ln_gamma(z)); }

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
inline ComplexValue reciprocal_gamma(ComplexValue z) {
    if (is_nonpositive_integer(z)) return {0.0, 0.0};
    return std::exp(-ln_gamma(z));
}

/// ζ(s) by Euler-Maclaurin summation with cutoff N = max(12, ⌈1.3|Im s|⌉)
/// and 10 Bernoulli corrections. N is doubled until the first omitted
/// correction is below the requested tolerance.
inline ComplexValue zeta(ComplexValue s, const EvalAccuracy& acc = {}) {
    acc.validate();
    if (s == ComplexValue(1.0, 0.0))
        throw PoleError("special_functions", "zeta", "simple pole at s = 1");
    if (!is_finite(s)) throw DomainError("special_functions", "zeta", "non-finite argument");
    if (s.real() <= -(2.0 * detail::kEulerMaclaurinOrder - 1.0))
        throw AccuracyError("special_functions", "zeta",
                            "Re s outside the Euler-Maclaurin region for order 10");

    int cutoff = std::max(12, static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))));
    for (;;) {
        const double n_big = cutoff;
        const double log_n = std::log(n_big);
        ComplexValue sum{};
        for (int n = 1; n < cutoff; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
        const ComplexValue n_pow = std::exp(-s * log_n);  // N^{-s}
        sum += n_big * n_pow / (s - 1.0) + 0.5 * n_pow;

        // Σ B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
        ComplexValue rising = s;  // s(s+1)...(s+2k-2)
        ComplexValue power = n_pow / n_big;
        double fact = 2.0;
        ComplexValue next_term{};
        for (int k = 1; k <= detail::kEulerMaclaurinOrder + 1; ++k) {
            const ComplexValue term = detail::kBernoulli[k - 1] / fact * rising * power;
            if (k <= detail::kEulerMaclaurinOrder)
                sum += term;
            else
                next_term = term;
            rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
            power /= n_big * n_big;
            fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        }
        if (std::abs(next_term) <= acc.bound(std::abs(sum)))
            return require_finite(sum, "special_functions", "zeta");
        if (2 * cutoff > acc.max_terms)
            throw AccuracyError("special_functions", "zeta",
                                "tolerance unattainable within max_terms at s = " + to_string(s));
        cutoff *= 2;
    }
}

/// I(s) = ∫_0^∞ dt/t [1/(1-e^{-t}) - 1/t - 1] e^{-t} t^s, by rotated-ray
/// quadrature; satisfies ζ(s) = 1 + 1/(s-1) + I(s)/Γ(s) for Re s > 0.
inline ComplexValue mellin_I(ComplexValue s, const EvalAccuracy& acc = {}) {
    acc.validate();
    if (!(s.real() > 0.0))
        throw DomainError("special_functions", "mellin_I", "requires Re s > 0, got " + to_string(s));
    const auto r = quad::mellin_transform(quad::subtracted_bose_kernel(), s,
                                          std::min(1e-13, acc.rel_tol));
    if (!r.converged && r.error > acc.bound(std::abs(r.value)))
        throw AccuracyError("special_functions", "mellin_I", "quadrature did not converge");
    return require_finite(r.value, "special_functions", "mellin_I");
}

/// Γ(s) from its Euler integral (Re s > 0); an oracle independent of Lanczos.
inline ComplexValue gamma_quadrature(ComplexValue s, const EvalAccuracy& acc = {}) {
    if (!(s.real() > 0.0))
        throw DomainError("special_functions", "gamma_quadrature", "requires Re s > 0");
    const auto r = quad::mellin_transform(quad::gamma_kernel(), s, std::min(1e-13, acc.rel_tol));
    if (!r.converged && r.error > acc.bound(std::abs(r.value)))
        throw AccuracyError("special_functions", "gamma_quadrature", "quadrature did not converge");
    return require_finite(r.value, "special_functions", "gamma_quadrature");
}

/// Γ(s)ζ(s) = ∫_0^∞ dt/t t^s e^{-t}/(1-e^{-t}) for Re s > 1, by quadrature.
inline ComplexValue gamma_zeta_quadrature(ComplexValue s, const EvalAccuracy& acc = {}) {
    if (!(s.real() > 1.0))
        throw DomainError("special_functions", "gamma_zeta_quadrature", "requires Re s > 1");
    const auto r = quad::mellin_transform(quad::bose_kernel(), s, std::min(1e-13, acc.rel_tol));
    if (!r.converged && r.error > acc.bound(std::abs(r.value)))
        throw AccuracyError("special_functions", "gamma_zeta_quadrature",
                            "quadrature did not converge");
    return require_finite(r.value, "special_functions", "gamma_zeta_quadrature");
}

enum class ThetaRoute { automatic, exact, asymptotic };

/// Riemann-Siegel θ(t) = Im ln Γ(1/4 + it/2) - (t/2) ln π. The automatic
/// route switches to the asymptotic series at t >= 10.
inline double riemann_siegel_theta(double t, ThetaRoute route = ThetaRoute::automatic) {
    if (!(t >= 0.0)) throw DomainError("special_functions", "riemann_siegel_theta", "requires t >= 0");
    const bool asymptotic =
        route == ThetaRoute::asymptotic || (route == ThetaRoute::automatic && t >= 10.0);
    if (asymptotic) {
        if (t == 0.0)
            throw DomainError("special_functions", "riemann_siegel_theta",
                              "asymptotic route undefined at t = 0");
        const double t3 = t * t * t;
        return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
               7.0 / (5760.0 * t3);
    }
    return ln_gamma({0.25, 0.5 * t}).imag() - 0.5 * t * std::log(kPi);
}

struct HardyZValue {
    double value;
    double imag_residue;
};

/// e^{iθ(t)} ζ(1/2 + it) with both parts; Z(t) is the real part.
inline HardyZValue hardy_z_components(double t, const EvalAccuracy& acc = {}) {
    if (!(t >= 0.0)) throw DomainError("special_functions", "hardy_z", "requires t >= 0");
    const double theta = riemann_siegel_theta(t, ThetaRoute::exact);
    const ComplexValue z = std::polar(1.0, theta) * zeta({0.5, t}, acc);
    return {z.real(), z.imag()};
}

inline double hardy_z(double t, const EvalAccuracy& acc = {}) {
    const auto z = hardy_z_components(t, acc);
    if (std::abs(z.imag_residue) >= 1e-9)
        throw AccuracyError("special_functions", "hardy_z",
                            "imaginary residue " + std::to_string(z.imag_residue) + " at t = " +
                                std::to_string(t));
    return z.value;
}

}  // namespace critline
