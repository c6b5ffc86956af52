#pragma once

// Critical-line zeros from sign changes of Hardy's Z, and the classical
// counting estimate N(T) ≈ (T/2π)[log(T/2π) - 1] with the minimum-gap bound
// it implies.

#include <algorithm>
#include <cmath>
#include <vector>

#include "critline/parallel.hpp"
#include "critline/special_functions.hpp"

namespace critline {

inline constexpr double kMaxScanHeight = 500.0;

struct ZeroTable {
    std::vector<double> ordinates;  // strictly increasing, all < t_max
    double t_max = 0.0;
    double tol = 0.0;

    std::size_t size() const noexcept { return ordinates.size(); }
    bool empty() const noexcept { return ordinates.empty(); }
};

inline double riemann_count_estimate(double T) {
    if (!(T > 0.0)) throw DomainError("zero_finder", "riemann_count_estimate", "requires T > 0");
    const double r = T / (2.0 * kPi);
    return r * (std::log(r) - 1.0);
}

/// Average zero density (1/2π)[log(T/2π) - 1], i.e. N(T)/T.
inline double average_zero_density(double T) {
    return (std::log(T / (2.0 * kPi)) - 1.0) / (2.0 * kPi);
}

inline double min_gap_bound(double T) {
    if (!(T > 2.0 * kPi * std::numbers::e))
        throw DomainError("zero_finder", "min_gap_bound", "requires T > 2πe");
    return 2.0 * kPi / (std::log(T / (2.0 * kPi)) - 1.0);
}

/// Pre-scan step: 0.1 up to t = 100, shrinking with the local zero density above.
inline double scan_step(double t) {
    if (t <= 100.0) return 0.1;
    const double local = std::log(t / (2.0 * kPi));
    return 0.1 * std::log(100.0 / (2.0 * kPi)) / local;
}

/// True when Z changes sign across [y - tol, y + tol].
inline bool brackets_zero(double y, double tol, const EvalAccuracy& acc = {}) {
    const double lo = std::max(0.0, y - tol);
    return hardy_z(lo, acc) * hardy_z(y + tol, acc) < 0.0;
}

namespace detail {

inline double bisect_zero(double a, double b, double za, double tol, const EvalAccuracy& acc) {
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double zm = hardy_z(m, acc);
        if (zm == 0.0) return m;
        if ((zm < 0.0) == (za < 0.0)) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// All sign changes of Z on [0, t_max], bisected to `tol`.
inline ZeroTable find_zeros_upto(double t_max, double tol, const EvalAccuracy& acc = {}) {
    if (!(t_max > 0.0) || t_max > kMaxScanHeight)
        throw DomainError("zero_finder", "find_zeros_upto", "requires 0 < t_max <= 500");
    if (!(tol >= 1e-10)) throw DomainError("zero_finder", "find_zeros_upto", "requires tol >= 1e-10");

    std::vector<double> grid{0.0};
    while (grid.back() < t_max) grid.push_back(std::min(t_max, grid.back() + scan_step(grid.back())));
    std::vector<double> values(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) { values[i] = hardy_z(grid[i], acc); });

    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if ((values[i] < 0.0) != (values[i + 1] < 0.0) || values[i + 1] == 0.0) brackets.push_back(i);

    ZeroTable out{std::vector<double>(brackets.size()), t_max, tol};
    detail::parallel_for(brackets.size(), [&](std::size_t k) {
        const std::size_t i = brackets[k];
        out.ordinates[k] = values[i + 1] == 0.0
                               ? grid[i + 1]
                               : detail::bisect_zero(grid[i], grid[i + 1], values[i], tol, acc);
    });
    std::sort(out.ordinates.begin(), out.ordinates.end());
    out.ordinates.erase(std::remove_if(out.ordinates.begin(), out.ordinates.end(),
                                       [&](double y) { return !(y < t_max); }),
                        out.ordinates.end());

    for (std::size_t k = 1; k < out.ordinates.size(); ++k) {
        const double gap = out.ordinates[k] - out.ordinates[k - 1];
        if (!(gap > 0.0))
            throw ScanError("zero_finder", "find_zeros_upto", "non-increasing ordinates after merge");
        if (gap < 4.0 * scan_step(out.ordinates[k - 1]))
            throw ScanError("zero_finder", "find_zeros_upto",
                            "zero spacing " + std::to_string(gap) + " near t = " +
                                std::to_string(out.ordinates[k]) +
                                " is below 4x the scan step; rescan finer");
    }
    return out;
}

/// The first n critical-line zeros (n must fit below t = 500).
inline ZeroTable first_n_zeros(std::size_t n, double tol, const EvalAccuracy& acc = {}) {
    if (n == 0) throw DomainError("zero_finder", "first_n_zeros", "requires n >= 1");
    double T = 20.0;
    while (T < kMaxScanHeight && riemann_count_estimate(T) < static_cast<double>(n) + 2.0) T *= 1.1;
    T = std::min(T, kMaxScanHeight);
    for (;;) {
        ZeroTable zt = find_zeros_upto(T, tol, acc);
        if (zt.size() >= n) {
            zt.ordinates.resize(n);
            return zt;
        }
        if (T >= kMaxScanHeight)
            throw DomainError("zero_finder", "first_n_zeros",
                              "fewer than n zeros below t = 500");
        T = std::min(kMaxScanHeight, T * 1.2);
    }
}

struct CountCheck {
    double estimate;
    std::size_t found;
    double relative_deviation;  // |found - estimate| / found
};

inline CountCheck count_check(const ZeroTable& zt) {
    const double est = riemann_count_estimate(zt.t_max);
    const double found = static_cast<double>(zt.size());
    return {est, zt.size(), found > 0 ? std::abs(found - est) / found : INFINITY};
}

struct DensityWindow {
    double lo, hi;
    std::size_t count;
    double empirical;  // count / (hi - lo)
    double formula;    // average_zero_density at the window midpoint
    double relative_deviation;
    double derivative;  // d/dT of the counting estimate, (1/2π) log(T/2π), at the midpoint
    double derivative_deviation;
};

struct GapStatistics {
    double min_gap, max_gap, mean_gap;
    std::size_t min_index;  // gap between ordinates[min_index] and [min_index + 1]
    std::vector<DensityWindow> density_profile;
};

inline GapStatistics gap_statistics(const ZeroTable& zt, double window = 50.0) {
    const auto& y = zt.ordinates;
    if (y.size() < 2)
        throw InsufficientDataError("zero_finder", "gap_statistics", "needs at least 2 ordinates");
    GapStatistics st{INFINITY, 0.0, 0.0, 0, {}};
    for (std::size_t k = 0; k + 1 < y.size(); ++k) {
        const double g = y[k + 1] - y[k];
        if (g < st.min_gap) {
            st.min_gap = g;
            st.min_index = k;
        }
        st.max_gap = std::max(st.max_gap, g);
    }
    st.mean_gap = (y.back() - y.front()) / static_cast<double>(y.size() - 1);

    const double top = std::max(zt.t_max, y.back());
    for (double lo = 0.0; lo < top - 1e-12; lo += window) {
        const double hi = std::min(top, lo + window);
        const auto count = static_cast<std::size_t>(
            std::count_if(y.begin(), y.end(), [&](double v) { return v > lo && v <= hi; }));
        DensityWindow w{lo, hi, count, count / (hi - lo), 0.0, 0.0, 0.0, 0.0};
        const double mid = 0.5 * (lo + hi);
        w.formula = mid > 2.0 * kPi ? average_zero_density(mid) : 0.0;
        w.relative_deviation =
            w.formula > 0.0 ? std::abs(w.empirical - w.formula) / w.formula : INFINITY;
        w.derivative = mid > 2.0 * kPi ? std::log(mid / (2.0 * kPi)) / (2.0 * kPi) : 0.0;
        w.derivative_deviation =
            w.derivative > 0.0 ? std::abs(w.empirical - w.derivative) / w.derivative : INFINITY;
        st.density_profile.push_back(w);
    }
    return st;
}

}  // namespace critline
