#pragma once

// Double-exponential (tanh-sinh) quadrature and the rotated-ray Mellin
// integrals built on it. Nothing here touches the Euler-Maclaurin zeta path.

#include <algorithm>
#include <cmath>
#include <vector>

#include "critline/complex.hpp"

namespace critline::quad {

struct QuadResult {
    ComplexValue value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Tanh-sinh rule on [a, b] with level doubling. Convergence is declared
/// when successive levels differ by less than rel_tol * |S|, or by less than
/// a roundoff floor proportional to the L1 mass of the integrand (which is
/// all that can be resolved when the integral is a cancellation).
template <class F>
QuadResult tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-13, int max_level = 14) {
    constexpr double t_max = 3.2;
    const double hw = 0.5 * (b - a);
    QuadResult out;

    auto node = [&](double t, ComplexValue& acc, double& l1) {
        const double v = 0.5 * kPi * std::sinh(t);
        const double ch = std::cosh(v);
        const double w = hw * 0.5 * kPi * std::cosh(t) / (ch * ch);
        if (w == 0.0) return;
        // distance from the nearer endpoint, computed without cancellation
        const double comp = 2.0 / (std::exp(2.0 * std::abs(v)) + 1.0);
        const double x = (t >= 0.0) ? b - hw * comp : a + hw * comp;
        const ComplexValue fx = f(x);
        ++out.evaluations;
        acc += w * fx;
        l1 += w * std::abs(fx);
    };

    ComplexValue sum{};
    double l1 = 0.0;
    node(0.0, sum, l1);
    for (int k = 1; k <= static_cast<int>(t_max); ++k) {
        node(k, sum, l1);
        node(-k, sum, l1);
    }
    double h = 1.0;
    ComplexValue prev = sum * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            node(t, sum, l1);
            node(-t, sum, l1);
        }
        const ComplexValue cur = sum * h;
        const double diff = std::abs(cur - prev);
        const double noise = 64.0 * 2.2e-16 * l1 * h;
        out.value = cur;
        out.error = diff;
        if (level >= 3 && (diff <= rel_tol * std::abs(cur) || diff <= noise)) {
            out.converged = true;
            return out;
        }
        prev = cur;
    }
    return out;
}

/// Taylor coefficients of N(t)/D(t) given the coefficients of both series
/// (D[0] != 0).
inline std::vector<double> series_divide(const std::vector<double>& num,
                                         const std::vector<double>& den, std::size_t terms) {
    std::vector<double> q(terms, 0.0);
    for (std::size_t j = 0; j < terms; ++j) {
        double acc = j < num.size() ? num[j] : 0.0;
        for (std::size_t i = 0; i < j; ++i)
            if (j - i < den.size()) acc -= q[i] * den[j - i];
        q[j] = acc / den[0];
    }
    return q;
}

/// Kernel of a Mellin integral  M(s) = ∫_0^∞ t^{s-1} g(t) dt  split into a
/// near-origin Taylor part t^{power} Σ a_k t^k (|t| <= 1) and a far-field
/// evaluator for |t| >= 1.
struct MellinKernel {
    std::vector<double> taylor;  // a_k
    int power = 0;               // g(t) = t^power Σ a_k t^k near 0
    ComplexValue (*far)(ComplexValue t) = nullptr;
};

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline ComplexValue far_exp(ComplexValue t) { return std::exp(-t); }

inline ComplexValue far_bose(ComplexValue t) {
    const ComplexValue e = std::exp(-t);
    return e / (1.0 - e);
}

inline ComplexValue far_subtracted_bose(ComplexValue t) {
    const ComplexValue e = std::exp(-t);
    return e * (e / (1.0 - e) - 1.0 / t);
}

}  // namespace detail

/// e^{-t}: M(s) = Γ(s).
inline const MellinKernel& gamma_kernel() {
    static const MellinKernel k = [] {
        MellinKernel m;
        for (int i = 0; i < 30; ++i) m.taylor.push_back((i % 2 ? -1.0 : 1.0) / detail::factorial(i));
        m.far = detail::far_exp;
        return m;
    }();
    return k;
}

/// e^{-t}/(1-e^{-t}) = t^{-1} · t/(e^t-1): M(s) = Γ(s)ζ(s) for Re s > 1.
inline const MellinKernel& bose_kernel() {
    static const MellinKernel k = [] {
        std::vector<double> den;  // (e^t - 1)/t = Σ t^j/(j+1)!
        for (int j = 0; j < 60; ++j) den.push_back(1.0 / detail::factorial(j + 1));
        MellinKernel m;
        m.taylor = series_divide({1.0}, den, 48);
        m.power = -1;
        m.far = detail::far_bose;
        return m;
    }();
    return k;
}

/// [1/(1-e^{-t}) - 1/t - 1] e^{-t}: M(s) = I(s), normalized so that
/// ζ(s) = 1 + 1/(s-1) + I(s)/Γ(s). Near the origin the kernel is
/// (t - 1 + e^{-t}) / (t (e^t - 1)) - e^{-t}.
inline const MellinKernel& subtracted_bose_kernel() {
    static const MellinKernel k = [] {
        std::vector<double> num, den;
        for (int j = 0; j < 60; ++j) {
            num.push_back((j % 2 ? -1.0 : 1.0) / detail::factorial(j + 2));
            den.push_back(1.0 / detail::factorial(j + 1));
        }
        MellinKernel m;
        m.taylor = series_divide(num, den, 48);
        for (std::size_t k = 0; k < m.taylor.size(); ++k)
            m.taylor[k] -= (k % 2 ? -1.0 : 1.0) / detail::factorial(static_cast<int>(k));
        m.far = detail::far_subtracted_bose;
        return m;
    }();
    return k;
}

/// Angle of the integration ray t = r e^{iφ}. Rotating towards the
/// imaginary axis extracts the e^{-π|Im s|/2} decay of the result
/// analytically instead of through cancellation; the Bose poles at 2πik
/// stay off the ray because |φ| < π/2.
inline double ray_angle(double im_s) {
    const double ay = std::abs(im_s);
    if (ay < 1e-300) return 0.0;
    const double gap = std::clamp(4.0 / ay, 0.02, 0.5 * kPi);
    return std::copysign(0.5 * kPi - gap, im_s);
}

/// Evaluates ∫_0^∞ t^{s-1} g(t) dt along the ray of angle ray_angle(Im s):
/// exact Taylor integration on |t| <= 1, tanh-sinh in u = log|t| beyond.
inline QuadResult mellin_transform(const MellinKernel& kernel, ComplexValue s,
                                   double rel_tol = 1e-13) {
    const double phi = ray_angle(s.imag());
    const ComplexValue log_tau{0.0, phi};  // τ = e^{iφ}, |τ| = 1

    ComplexValue near{};
    for (std::size_t k = 0; k < kernel.taylor.size(); ++k) {
        const ComplexValue e = s + static_cast<double>(kernel.power) + static_cast<double>(k);
        near += kernel.taylor[k] * std::exp(e * log_tau) / e;
    }

    // Upper cut: integrand magnitude ~ exp(x u - φ y - e^u cos φ); stop
    // 45 e-folds below the e^{-φ y} scale.
    const double x = s.real();
    const double cphi = std::cos(phi);
    double upper = 0.5;
    while (upper < 14.0 && x * upper - std::exp(upper) * cphi > -45.0) upper += 0.05;

    auto integrand = [&](double u) {
        const ComplexValue w{u, phi};
        return std::exp(s * w) * kernel.far(std::exp(w));
    };
    QuadResult far = tanh_sinh(integrand, 0.0, upper, rel_tol);
    far.value += near;
    return far;
}

}  // namespace critline::quad
