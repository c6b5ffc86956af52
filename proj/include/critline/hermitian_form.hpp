#pragma once

// Coherent-state eigenfunctions Ψ_z(t) = t^z F(t), F² = e^{-t}/(1-e^{-t}),
// and the Hermitian form G(z12) = <Ψ_z1|Ψ_z2>, z12 = conj(z1) + z2.
//
// Branch convention: every complex power is exp(z Log(.)) with the principal
// Log. The contour over both lips of the positive axis then evaluates to
// (K/π) sin(πz) Γ(z) ζ(z); the normative quadrature route uses the
// subtracted Mellin representation, and the closed form is tied to it by a
// calibration constant fixed once at construction.

#include <cmath>

#include "critline/complex.hpp"
#include "critline/special_functions.hpp"

namespace critline {

enum class LabelRole { vacuum, critical_line, generic };

inline const char* to_string(LabelRole r) {
    switch (r) {
        case LabelRole::vacuum: return "vacuum";
        case LabelRole::critical_line: return "critical_line";
        case LabelRole::generic: return "generic";
    }
    return "?";
}

struct EigenLabel {
    ComplexValue z;
    LabelRole role;

    static LabelRole classify(ComplexValue z) {
        if (z == ComplexValue{}) return LabelRole::vacuum;
        if (std::abs(z.real() - 0.5) <= 1e-12) return LabelRole::critical_line;
        return LabelRole::generic;
    }
    static EigenLabel of(ComplexValue z) { return {z, classify(z)}; }
    static EigenLabel critical(double y) { return {{0.5, y}, LabelRole::critical_line}; }
};

struct FormConfig {
    double K = 1.0;
    EvalAccuracy acc{};

    void validate() const {
        if (K == 0.0 || !std::isfinite(K))
            throw ValidationError("hermitian_form", "FormConfig", "K must be finite and non-zero");
        acc.validate();
    }
};

/// Ψ_z(t) = t^z · [e^{-t}/(1-e^{-t})]^{1/2}, t > 0.
inline ComplexValue eigenfunction(const EigenLabel& label, double t) {
    if (!(t > 0.0))
        throw DomainError("hermitian_form", "eigenfunction", "requires t > 0 (branch cut at t <= 0)");
    const double f = 1.0 / std::sqrt(std::expm1(t));
    return require_finite(std::exp(label.z * std::log(t)) * f, "hermitian_form", "eigenfunction");
}

/// G by quadrature, normalized as G = -(K/π) sin(πz) [Γ(z)(1 + 1/(z-1)) + I(z)].
/// Re z > 1 integrates Γζ directly along the u = log t line; 0 < Re z <= 1
/// uses quadrature-evaluated Γ and I. Shares no code with the ζ evaluator.
inline ComplexValue g_quadrature(ComplexValue z12, const FormConfig& cfg) {
    cfg.validate();
    if (!(z12.real() > 0.0))
        throw DomainError("hermitian_form", "g_quadrature",
                          "requires Re z12 > 0, got " + to_string(z12));
    const double k_over_pi = cfg.K / kPi;
    try {
        if (z12.real() > 1.0)
            return require_finite(-k_over_pi * sin_pi(z12) * gamma_zeta_quadrature(z12, cfg.acc),
                                  "hermitian_form", "g_quadrature");
        const ComplexValue gam = gamma_quadrature(z12, cfg.acc);
        const ComplexValue aux = mellin_I(z12, cfg.acc);
        // sin(πz)/(z-1) = -π sinc(π(z-1))
        const ComplexValue out =
            -k_over_pi * sin_pi(z12) * (gam + aux) + cfg.K * sinc_pi_shifted(z12 - 1.0) * gam;
        return require_finite(out, "hermitian_form", "g_quadrature");
    } catch (const AccuracyError& e) {
        throw AccuracyError("hermitian_form", "g_quadrature", e.what());
    }
}

struct Calibration {
    ComplexValue point{1.5, 0.0};
    ComplexValue measured{};  // g_quadrature / contour value at `point`
    ComplexValue constant{};  // snapped to the nearest of ±1, ±i
};

class HermitianForm {
public:
    explicit HermitianForm(FormConfig cfg = {}) : cfg_(cfg) {
        cfg_.validate();
        calibrate();
    }

    const FormConfig& config() const noexcept { return cfg_; }
    double K() const noexcept { return cfg_.K; }
    const Calibration& calibration() const noexcept { return calibration_; }

    /// Uncalibrated contour value (K/π) sin(πz) Γ(z) ζ(z) = K ζ(z)/Γ(1-z).
    ComplexValue contour_value(ComplexValue z) const {
        try {
            return cfg_.K * zeta(z, cfg_.acc) * reciprocal_gamma(1.0 - z);
        } catch (const PoleError&) {
            throw;
        } catch (const Error& e) {
            throw AccuracyError("hermitian_form", "g_closed", e.what());
        }
    }

    /// Closed form with the removable points resolved exactly:
    /// G(1) = K (norm of critical-line states), G(0) = -K/2 (vacuum norm).
    ComplexValue g_closed(ComplexValue z12) const {
        if (z12 == ComplexValue{1.0, 0.0}) return {cfg_.K, 0.0};
        if (z12 == ComplexValue{}) return {-0.5 * cfg_.K, 0.0};
        return require_finite(calibration_.constant * contour_value(z12), "hermitian_form",
                              "g_closed");
    }

    /// <Ψ_z1|Ψ_z2>; depends on the labels only through conj(z1) + z2.
    ComplexValue g_pair(const EigenLabel& a, const EigenLabel& b) const {
        return g_closed(std::conj(a.z) + b.z);
    }

    /// Hermiticity residual G(z) - conj(G(conj z)), where the conjugate image
    /// is taken through the real-axis representation: the u-integral is
    /// invariant and the contour phase factor sin(πz) is conjugated, i.e.
    /// conj(G(conj z)) -> -conj(sin πz)/sin(πz) · G(z). The residual is
    /// 2 Re(sin πz) G(z)/sin(πz): zero on Re z ∈ Z and at zeros of ζ.
    ComplexValue hermiticity_residual(ComplexValue z12) const {
        const ComplexValue s = sin_pi(z12);
        if (s.real() == 0.0) return {};
        try {
            const ComplexValue reduced =
                calibration_.constant * (cfg_.K / kPi) * gamma(z12) * zeta(z12, cfg_.acc);
            return require_finite(2.0 * s.real() * reduced, "hermitian_form",
                                  "hermiticity_residual");
        } catch (const Error& e) {
            throw AccuracyError("hermitian_form", "hermiticity_residual", e.what());
        }
    }

    /// Plain Schwarz-reflection defect G(z) - conj(G(conj z)) of the closed
    /// form; zero for every z because G is real on the real axis.
    ComplexValue reflection_residual(ComplexValue z12) const {
        return g_closed(z12) - std::conj(g_closed(std::conj(z12)));
    }

    /// <Ψ_z|Ψ_z>: K on the critical line, -K/2 for the vacuum, otherwise
    /// G(2 Re z) provided the Hermiticity residual there vanishes.
    double norm_squared(const EigenLabel& label) const {
        switch (label.role) {
            case LabelRole::vacuum: return -0.5 * cfg_.K;
            case LabelRole::critical_line: return cfg_.K;
            case LabelRole::generic: break;
        }
        const ComplexValue z12{2.0 * label.z.real(), 0.0};
        const ComplexValue value = g_closed(z12);
        const double delta = std::abs(hermiticity_residual(z12));
        if (std::abs(value.imag()) >= 1e-9 || delta > 1e-8)
            throw NonRealNormError("hermitian_form", "norm_squared",
                                   "label " + to_string(label.z) +
                                       " violates the Hermiticity condition (|residual| = " +
                                       std::to_string(delta) + ")");
        return value.real();
    }

private:
    void calibrate() {
        const ComplexValue quad = g_quadrature(calibration_.point, cfg_);
        const ComplexValue raw = contour_value(calibration_.point);
        calibration_.measured = quad / raw;
        const ComplexValue candidates[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        double best = 1e300;
        for (ComplexValue c : candidates) {
            const double d = std::abs(calibration_.measured - c);
            if (d < best) {
                best = d;
                calibration_.constant = c;
            }
        }
        if (best > 1e-8)
            throw AccuracyError("hermitian_form", "calibrate",
                                "closed form and quadrature differ by a non-unit factor " +
                                    to_string(calibration_.measured));
    }

    FormConfig cfg_;
    Calibration calibration_;
};

}  // namespace critline
