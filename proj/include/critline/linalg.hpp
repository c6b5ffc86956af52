#pragma once

// Small dense complex linear algebra: Hermitian Jacobi eigenvalues, Hermitian
// Cholesky, closed-form eigenvalues for n <= 3 and an LU inverse.

#include <algorithm>
#include <cmath>
#include <vector>

#include "critline/complex.hpp"

namespace critline {

class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    ComplexValue& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const ComplexValue& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<ComplexValue>& data() const noexcept { return data_; }

    Matrix leading_block(std::size_t k) const {
        Matrix b(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
        return b;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    /// max |A_ij - conj(A_ji)|
    double hermitian_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

private:
    std::size_t n_ = 0;
    std::vector<ComplexValue> data_;
};

struct EigenResult {
    std::vector<double> values;  // ascending
    int sweeps = 0;
    double off_norm = 0.0;
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm is <= tol · ||A||_F.
inline EigenResult jacobi_eigenvalues(Matrix a, double tol = 1e-10, int max_sweeps = -1) {
    const std::size_t n = a.size();
    if (n == 0) throw DimensionError("linalg", "jacobi_eigenvalues", "empty matrix");
    if (max_sweeps < 0) max_sweeps = static_cast<int>(100 * n * n);
    const double scale = std::max(a.frobenius(), 1e-300);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    EigenResult out;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
    while ((out.off_norm = off_norm()) > tol * scale) {
        if (out.sweeps >= max_sweeps)
            throw ConvergenceError("linalg", "jacobi_eigenvalues",
                                   "no convergence after " + std::to_string(max_sweeps) + " sweeps");
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const ComplexValue apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const ComplexValue e = apq / g;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                // J = diag(1, conj e) · [[c, s], [-s, c]]
                const ComplexValue jpp = c, jpq = s, jqp = -s * std::conj(e), jqq = c * std::conj(e);
                for (std::size_t k = 0; k < n; ++k) {
                    const ComplexValue akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const ComplexValue apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(a(i, i).real());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

/// Hermitian Cholesky A = L L^H; false as soon as a pivot is not positive.
inline bool hermitian_cholesky(const Matrix& a, Matrix* factor = nullptr) {
    const std::size_t n = a.size();
    Matrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            ComplexValue s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    if (factor) *factor = std::move(l);
    return true;
}

/// Eigenvalues of a Hermitian matrix with n <= 3 from its characteristic
/// polynomial (trigonometric form of the cubic), ascending.
inline std::vector<double> polynomial_eigenvalues(const Matrix& a) {
    const std::size_t n = a.size();
    if (n == 1) return {a(0, 0).real()};
    if (n == 2) {
        const double m = 0.5 * (a(0, 0).real() + a(1, 1).real());
        const double h = 0.5 * (a(0, 0).real() - a(1, 1).real());
        const double r = std::hypot(h, std::abs(a(0, 1)));
        return {m - r, m + r};
    }
    if (n != 3) throw DimensionError("linalg", "polynomial_eigenvalues", "requires n <= 3");
    const double a00 = a(0, 0).real(), a11 = a(1, 1).real(), a22 = a(2, 2).real();
    const double p1 = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
    const double q = (a00 + a11 + a22) / 3.0;
    const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * p1;
    if (p2 == 0.0) return {q, q, q};
    const double p = std::sqrt(p2 / 6.0);
    // det(A - qI) for Hermitian A
    const double b0 = a00 - q, b1 = a11 - q, b2 = a22 - q;
    const double det = b0 * b1 * b2 + 2.0 * (a(0, 1) * a(1, 2) * a(2, 0)).real() -
                       b0 * std::norm(a(1, 2)) - b1 * std::norm(a(0, 2)) - b2 * std::norm(a(0, 1));
    const double r = std::clamp(det / (2.0 * p * p * p), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    std::vector<double> v{e3, 3.0 * q - e1 - e3, e1};
    std::sort(v.begin(), v.end());
    return v;
}

/// Row and column scalings D_r A D_c with every row and column max-norm near 1.
struct Equilibrated {
    Matrix scaled;
    std::vector<double> row, col;
};

inline Equilibrated equilibrate(const Matrix& a, int passes = 8) {
    const std::size_t n = a.size();
    Equilibrated e{a, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0)};
    for (int pass = 0; pass < passes; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
            double m = 0.0;
            for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(e.scaled(i, j)));
            if (m == 0.0) continue;
            const double f = std::exp2(-std::round(std::log2(m)));
            e.row[i] *= f;
            for (std::size_t j = 0; j < n; ++j) e.scaled(i, j) *= f;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(e.scaled(i, j)));
            if (m == 0.0) continue;
            const double f = std::exp2(-std::round(std::log2(m)));
            e.col[j] *= f;
            for (std::size_t i = 0; i < n; ++i) e.scaled(i, j) *= f;
        }
    }
    return e;
}

inline double norm_1(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

/// Inverse by Gaussian elimination with partial pivoting; returns false when
/// a pivot vanishes.
inline bool lu_inverse(const Matrix& a, Matrix& inv) {
    const std::size_t n = a.size();
    Matrix w = a;
    inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
        if (w(piv, col) == ComplexValue{}) return false;
        if (piv != col)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(w(piv, k), w(col, k));
                std::swap(inv(piv, k), inv(col, k));
            }
        const ComplexValue d = w(col, col);
        for (std::size_t k = 0; k < n; ++k) {
            w(col, k) /= d;
            inv(col, k) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const ComplexValue f = w(r, col);
            if (f == ComplexValue{}) continue;
            for (std::size_t k = 0; k < n; ++k) {
                w(r, k) -= f * w(col, k);
                inv(r, k) -= f * inv(col, k);
            }
        }
    }
    return true;
}

}  // namespace critline
