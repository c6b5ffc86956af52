#pragma once

// Gram matrix of coherent states on the critical line, G_ij = G(1 + i(y_j - y_i)),
// and its audits: Hermiticity, Schwarz bound, positivity, the Gaussian
// overlap model and the almost-zero scan.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "critline/hermitian_form.hpp"
#include "critline/linalg.hpp"
#include "critline/parallel.hpp"
#include "critline/zero_finder.hpp"

namespace critline {

struct GramMatrix {
    std::vector<EigenLabel> labels;
    Matrix entries;
    double K = 1.0;

    std::size_t size() const noexcept { return labels.size(); }
};

inline GramMatrix build_gram(const ZeroTable& zt, const HermitianForm& form) {
    if (zt.empty()) throw InsufficientDataError("gram_analysis", "build_gram", "empty zero table");
    const std::size_t n = zt.size();
    GramMatrix gm{{}, Matrix(n), form.K()};
    for (double y : zt.ordinates) gm.labels.push_back(EigenLabel::critical(y));

    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) cells.emplace_back(i, j);
    detail::parallel_for(cells.size(), [&](std::size_t c) {
        const auto [i, j] = cells[c];
        const ComplexValue z12{1.0, zt.ordinates[j] - zt.ordinates[i]};
        try {
            gm.entries(i, j) = form.g_closed(z12);
        } catch (const Error& e) {
            throw AccuracyError("gram_analysis", "build_gram",
                                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    "): " + e.what());
        }
    });
    for (std::size_t i = 0; i < n; ++i) gm.entries(i, i) = form.K();

    if (gm.entries.hermitian_defect() > 1e-8)
        throw AccuracyError("gram_analysis", "build_gram", "assembled matrix is not Hermitian");
    return gm;
}

inline GramMatrix build_gram(const ZeroTable& zt, const FormConfig& cfg) {
    return build_gram(zt, HermitianForm(cfg));
}

struct SchwarzViolation {
    std::size_t i, j;
    double magnitude;
};

/// Closed-form eigenvalues of the leading (up to 3x3) block next to the
/// Jacobi values for the same block.
struct PolynomialCheck {
    std::size_t block = 0;
    std::vector<double> polynomial, jacobi;
    double max_abs_diff = 0.0;
    double max_rel_diff = 0.0;
};

struct PositivityReport {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    std::vector<double> eigenvalues;
    bool cholesky_succeeded = false;
    std::vector<SchwarzViolation> schwarz_violations;
    int jacobi_sweeps = 0;
    PolynomialCheck polynomial_check;
};

inline constexpr double kSchwarzSlack = 1e-10;

/// Off-diagonal pairs (i < j) with |G_ij| > K + 1e-10.
inline std::vector<SchwarzViolation> schwarz_scan(const GramMatrix& gm) {
    std::vector<SchwarzViolation> out;
    const std::size_t n = gm.entries.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = std::abs(gm.entries(i, j));
            if (m > gm.K + kSchwarzSlack) out.push_back({i, j, m});
        }
    return out;
}

inline PolynomialCheck polynomial_check(const Matrix& a) {
    PolynomialCheck pc;
    pc.block = std::min<std::size_t>(3, a.size());
    const Matrix block = a.leading_block(pc.block);
    pc.polynomial = polynomial_eigenvalues(block);
    pc.jacobi = jacobi_eigenvalues(block).values;
    for (std::size_t k = 0; k < pc.block; ++k) {
        const double d = std::abs(pc.polynomial[k] - pc.jacobi[k]);
        pc.max_abs_diff = std::max(pc.max_abs_diff, d);
        pc.max_rel_diff =
            std::max(pc.max_rel_diff, d / std::max(std::abs(pc.polynomial[k]), 1e-300));
    }
    return pc;
}

inline PositivityReport positivity_report(const GramMatrix& gm) {
    if (gm.entries.size() == 0)
        throw InsufficientDataError("gram_analysis", "positivity_report", "empty matrix");
    PositivityReport r;
    r.cholesky_succeeded = hermitian_cholesky(gm.entries);
    const EigenResult eig = jacobi_eigenvalues(gm.entries);
    r.eigenvalues = eig.values;
    r.jacobi_sweeps = eig.sweeps;
    r.min_eigenvalue = eig.values.front();
    r.max_eigenvalue = eig.values.back();
    r.schwarz_violations = schwarz_scan(gm);
    r.polynomial_check = polynomial_check(gm.entries);
    return r;
}

/// The Gaussian approximation -(√2/(√π i)) sinh(πy) e^{-y²/2} [1/(iy) + e/(e-1)].
inline ComplexValue gaussian_model(double y) {
    const ComplexValue pref{0.0, std::sqrt(2.0 / kPi)};  // -√2/(√π i)
    const double py = kPi * y;
    // sinh(πy)/(iy) = -iπ sinh(πy)/(πy)
    const double shc = std::abs(py) < 1e-5 ? 1.0 + py * py / 6.0 : std::sinh(py) / py;
    const ComplexValue first{0.0, -kPi * shc};
    const double e = std::numbers::e;
    return pref * std::exp(-0.5 * y * y) * (first + std::sinh(py) * e / (e - 1.0));
}

struct GaussianDeviation {
    double y;
    ComplexValue model, closed;
    double relative_deviation;
};

/// gaussian_model against g_closed(1 + iy) on y = k·step, 0 <= y <= y_max.
inline std::vector<GaussianDeviation> gaussian_deviation_profile(const HermitianForm& form,
                                                                 double y_max = 10.0,
                                                                 double step = 0.1) {
    std::vector<GaussianDeviation> out;
    const auto steps = static_cast<int>(std::floor(y_max / step + 1e-9));
    for (int k = 0; k <= steps; ++k) {
        const double y = k * step;
        const ComplexValue m = form.K() * gaussian_model(y);
        const ComplexValue c = form.g_closed({1.0, y});
        out.push_back({y, m, c, std::abs(m - c) / std::abs(c)});
    }
    return out;
}

struct AlmostZeroRow {
    std::size_t i, j;
    double y12;
    double abs_zeta;
    double abs_G;
    double exp_bound;  // e^{-π y12}
    double y_sum;
    double abs_zeta_sum;
    double abs_G_sum;
};

namespace detail {

/// |G(1 + iy)| = K |ζ(1 + iy)| / |Γ(-iy)| through logarithms, so that
/// magnitudes beyond the double range come out as +inf instead of throwing.
inline double abs_g_line(double y, double abs_zeta, double K) {
    if (y == 0.0) return std::abs(K);
    const double log_rg = -ln_gamma({0.0, -y}).real();
    return std::abs(K) * abs_zeta * std::exp(log_rg);
}

}  // namespace detail

/// One row per pair i < j of zeros, sorted by y12 = y_j - y_i. The sum
/// columns carry the same quantities at y_i + y_j.
inline std::vector<AlmostZeroRow> almost_zero_scan(const ZeroTable& zt, const FormConfig& cfg) {
    cfg.validate();
    std::vector<AlmostZeroRow> rows;
    const auto& y = zt.ordinates;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j)
            rows.push_back({i, j, y[j] - y[i], 0, 0, 0, y[i] + y[j], 0, 0});
    detail::parallel_for(rows.size(), [&](std::size_t k) {
        AlmostZeroRow& r = rows[k];
        r.abs_zeta = std::abs(zeta({1.0, r.y12}, cfg.acc));
        r.abs_G = detail::abs_g_line(r.y12, r.abs_zeta, cfg.K);
        r.exp_bound = std::exp(-kPi * r.y12);
        r.abs_zeta_sum = std::abs(zeta({1.0, r.y_sum}, cfg.acc));
        r.abs_G_sum = detail::abs_g_line(r.y_sum, r.abs_zeta_sum, cfg.K);
    });
    std::stable_sort(rows.begin(), rows.end(),
                     [](const AlmostZeroRow& a, const AlmostZeroRow& b) { return a.y12 < b.y12; });
    return rows;
}

/// <f|g> = Σ conj(f_i) G_ij g_j
inline ComplexValue correlation_form(const std::vector<ComplexValue>& f,
                                     const std::vector<ComplexValue>& g, const GramMatrix& gm) {
    const std::size_t n = gm.entries.size();
    if (f.size() != n || g.size() != n)
        throw DimensionError("gram_analysis", "correlation_form",
                             "coefficient lengths " + std::to_string(f.size()) + "," +
                                 std::to_string(g.size()) + " do not match n = " +
                                 std::to_string(n));
    ComplexValue sum{};
    for (std::size_t i = 0; i < n; ++i) {
        ComplexValue row{};
        for (std::size_t j = 0; j < n; ++j) row += gm.entries(i, j) * g[j];
        sum += std::conj(f[i]) * row;
    }
    return sum;
}

struct QuadratureSpotCheck {
    std::size_t i, j;
    ComplexValue closed, quadrature;
    double abs_diff, rel_diff;
};

/// Re-derives `count` seeded random off-diagonal entries through g_quadrature.
inline std::vector<QuadratureSpotCheck> quadrature_spot_check(const GramMatrix& gm,
                                                              const FormConfig& cfg,
                                                              std::size_t count,
                                                              std::uint64_t seed) {
    const std::size_t n = gm.entries.size();
    std::vector<QuadratureSpotCheck> out;
    if (n < 2) return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (out.size() < count) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const double dy = gm.labels[j].z.imag() - gm.labels[i].z.imag();
        const ComplexValue q = g_quadrature({1.0, dy}, cfg);
        const ComplexValue c = gm.entries(i, j);
        const double d = std::abs(q - c);
        out.push_back({i, j, c, q, d, d / std::abs(c)});
    }
    return out;
}

}  // namespace critline
