#pragma once

// Formal bracket engine for the generators {L, G, G†, T, T†, Q, Q†} with
// labels in C and central terms valued in the metric G(z). Structure
// constants are implemented exactly as tabulated; the checks below report
// where they are inconsistent.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "critline/hermitian_form.hpp"
#include "critline/linalg.hpp"
#include "critline/parallel.hpp"

namespace critline {

enum class GeneratorKind { L, Gf, Gf_dag, T, T_dag, Q, Q_dag, Center };
enum class Parity { even, odd };

inline const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::L: return "L";
        case GeneratorKind::Gf: return "G";
        case GeneratorKind::Gf_dag: return "G+";
        case GeneratorKind::T: return "T";
        case GeneratorKind::T_dag: return "T+";
        case GeneratorKind::Q: return "Q";
        case GeneratorKind::Q_dag: return "Q+";
        case GeneratorKind::Center: return "C";
    }
    return "?";
}

inline Parity parity_of(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::Gf:
        case GeneratorKind::Gf_dag:
        case GeneratorKind::Q:
        case GeneratorKind::Q_dag: return Parity::odd;
        default: return Parity::even;
    }
}

struct GeneratorSymbol {
    GeneratorKind kind = GeneratorKind::Center;
    ComplexValue label{};
    Parity parity = Parity::even;
    ComplexValue payload{};  // scalar value, Center only

    static GeneratorSymbol make(GeneratorKind k, ComplexValue z) {
        if (k == GeneratorKind::Center) return center(z);
        return {k, z, parity_of(k), {}};
    }
    static GeneratorSymbol center(ComplexValue value) {
        return {GeneratorKind::Center, {}, Parity::even, value};
    }
    bool odd() const noexcept { return parity == Parity::odd; }
};

inline GeneratorSymbol L(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::L, z); }
inline GeneratorSymbol Gf(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::Gf, z); }
inline GeneratorSymbol Gf_dag(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::Gf_dag, z); }
inline GeneratorSymbol T(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::T, z); }
inline GeneratorSymbol T_dag(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::T_dag, z); }
inline GeneratorSymbol Q(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::Q, z); }
inline GeneratorSymbol Q_dag(ComplexValue z) { return GeneratorSymbol::make(GeneratorKind::Q_dag, z); }

inline std::string to_string(const GeneratorSymbol& s) {
    if (s.kind == GeneratorKind::Center) return "C" + to_string(s.payload);
    return std::string(to_string(s.kind)) + "_" + to_string(s.label);
}

/// Hermitian conjugation (O_w)† = O†_{conj w}; L maps to itself.
inline GeneratorSymbol dagger(const GeneratorSymbol& s) {
    using K = GeneratorKind;
    GeneratorSymbol out = s;
    out.label = std::conj(s.label);
    switch (s.kind) {
        case K::Gf: out.kind = K::Gf_dag; break;
        case K::Gf_dag: out.kind = K::Gf; break;
        case K::T: out.kind = K::T_dag; break;
        case K::T_dag: out.kind = K::T; break;
        case K::Q: out.kind = K::Q_dag; break;
        case K::Q_dag: out.kind = K::Q; break;
        case K::L: break;
        case K::Center: out.payload = std::conj(s.payload); break;
    }
    return out;
}

struct Monomial {
    ComplexValue coefficient;
    GeneratorSymbol symbol;
};

inline constexpr double kCoefficientFloor = 1e-14;

/// Linear combination of generators plus a central scalar.
struct AlgebraTerm {
    std::vector<Monomial> monomials;
    ComplexValue central{};

    static bool same_label(ComplexValue a, ComplexValue b) {
        return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
    }

    void add(ComplexValue c, const GeneratorSymbol& s) {
        if (s.kind == GeneratorKind::Center) {
            central += c * s.payload;
            return;
        }
        for (auto& m : monomials)
            if (m.symbol.kind == s.kind && same_label(m.symbol.label, s.label)) {
                m.coefficient += c;
                return;
            }
        monomials.push_back({c, s});
    }

    AlgebraTerm& operator+=(const AlgebraTerm& o) {
        for (const auto& m : o.monomials) add(m.coefficient, m.symbol);
        central += o.central;
        return *this;
    }

    AlgebraTerm scaled(ComplexValue f) const {
        AlgebraTerm t = *this;
        for (auto& m : t.monomials) m.coefficient *= f;
        t.central *= f;
        return t;
    }

    /// Drops coefficients below the floor and orders monomials canonically.
    AlgebraTerm& normalize() {
        std::erase_if(monomials,
                      [](const Monomial& m) { return std::abs(m.coefficient) < kCoefficientFloor; });
        if (std::abs(central) < kCoefficientFloor) central = {};
        std::sort(monomials.begin(), monomials.end(), [](const Monomial& a, const Monomial& b) {
            if (a.symbol.kind != b.symbol.kind) return a.symbol.kind < b.symbol.kind;
            if (a.symbol.label.real() != b.symbol.label.real())
                return a.symbol.label.real() < b.symbol.label.real();
            return a.symbol.label.imag() < b.symbol.label.imag();
        });
        return *this;
    }

    /// Coefficient of kind at label, 0 if absent.
    ComplexValue coefficient(GeneratorKind k, ComplexValue z) const {
        for (const auto& m : monomials)
            if (m.symbol.kind == k && same_label(m.symbol.label, z)) return m.coefficient;
        return {};
    }

    /// max |coefficient| over monomials and the central part.
    double max_magnitude() const {
        double r = std::abs(central);
        for (const auto& m : monomials) r = std::max(r, std::abs(m.coefficient));
        return r;
    }

    bool is_zero() const { return max_magnitude() == 0.0; }
};

enum class CentralVariant { paper, plain, i_central };

inline const char* to_string(CentralVariant v) {
    switch (v) {
        case CentralVariant::paper: return "paper";
        case CentralVariant::plain: return "plain";
        case CentralVariant::i_central: return "i-central";
    }
    return "?";
}

struct MetricOracle {
    std::function<ComplexValue(ComplexValue)> evaluator;
    double K = 1.0;
    CentralVariant variant = CentralVariant::paper;

    ComplexValue operator()(ComplexValue z) const { return evaluator(z); }

    static MetricOracle from_form(const HermitianForm& form,
                                  CentralVariant v = CentralVariant::paper) {
        return {[form](ComplexValue z) { return form.g_closed(z); }, form.K(), v};
    }

    /// evaluator(0) = -K/2 and evaluator(1) = K.
    bool consistent(double tol = 1e-12) const {
        return std::abs(evaluator({}) - ComplexValue(-0.5 * K)) <= tol &&
               std::abs(evaluator({1.0, 0.0}) - ComplexValue(K)) <= tol;
    }
};

struct BracketLog {
    std::size_t unlisted = 0;  // pairs that fell through to zero
};

namespace detail {

/// Tabulated relations for the ordered pair (a, b); false when the ordered
/// pair is not tabulated.
inline bool tabulated_bracket(const GeneratorSymbol& a, const GeneratorSymbol& b,
                              const MetricOracle& metric, AlgebraTerm& out) {
    using K = GeneratorKind;
    const ComplexValue x = a.label, y = b.label, s = x + y;
    const auto is = [&](K ka, K kb) { return a.kind == ka && b.kind == kb; };

    if (is(K::L, K::L)) return out.add(y - x, L(s)), true;
    if (is(K::Gf, K::Gf_dag)) return out.add(1.0, L(s)), true;
    if (is(K::L, K::Gf)) return out.add(y, Gf(s)), true;
    if (is(K::L, K::Gf_dag)) return out.add(-y, Gf_dag(s)), true;
    if (is(K::L, K::T)) return out.add(y, T(s)), true;
    if (is(K::L, K::T_dag)) return out.add(-y, T_dag(s)), true;
    if (is(K::T, K::T) || is(K::T_dag, K::T_dag)) return true;
    if (is(K::T_dag, K::T)) {
        ComplexValue c = metric(s);
        switch (metric.variant) {
            case CentralVariant::paper: c *= (x - y); break;
            case CentralVariant::plain: break;
            case CentralVariant::i_central: c *= kI; break;
        }
        out.central += c;
        return true;
    }
    if (is(K::Q, K::Q) || is(K::Q_dag, K::Q_dag)) return true;
    if (is(K::Q, K::Q_dag)) return out.central += metric(s), true;
    if (is(K::L, K::Q)) return out.add(y, Q(s)), true;
    if (is(K::L, K::Q_dag)) return out.add(-y, Q_dag(s)), true;
    if (is(K::T, K::Q) || is(K::T, K::Q_dag)) return true;
    if (is(K::Gf, K::T_dag)) return out.add(1.0, Q(s)), true;
    if (is(K::Gf_dag, K::T)) return out.add(-1.0, Q_dag(s)), true;
    if (is(K::Gf, K::Q_dag)) return out.add(1.0, T(s)), true;
    if (is(K::Gf_dag, K::Q)) return out.add(1.0, T_dag(s)), true;
    return false;
}

inline double koszul(bool odd_a, bool odd_b) { return (odd_a && odd_b) ? -1.0 : 1.0; }

}  // namespace detail

/// Graded bracket [a, b} (anticommutator iff both odd). Reversed orderings
/// of tabulated pairs follow from graded antisymmetry; anything else is zero
/// and counted in `log`.
inline AlgebraTerm bracket(const GeneratorSymbol& a, const GeneratorSymbol& b,
                           const MetricOracle& metric, BracketLog* log = nullptr) {
    if (a.kind == GeneratorKind::Center || b.kind == GeneratorKind::Center)
        throw DomainError("superconformal_algebra", "bracket", "central symbols have no bracket");
    AlgebraTerm out;
    if (detail::tabulated_bracket(a, b, metric, out)) return out.normalize();
    AlgebraTerm rev;
    if (detail::tabulated_bracket(b, a, metric, rev))
        return rev.scaled(-detail::koszul(a.odd(), b.odd())).normalize();
    if (log) ++log->unlisted;
    return out;
}

/// Extends the bracket linearly in the first slot; central parts drop out.
inline AlgebraTerm bracket(const AlgebraTerm& a, const GeneratorSymbol& b,
                           const MetricOracle& metric, BracketLog* log = nullptr) {
    AlgebraTerm out;
    for (const auto& m : a.monomials) out += bracket(m.symbol, b, metric, log).scaled(m.coefficient);
    return out.normalize();
}

/// (-1)^{|a||c|}[[a,b],c} + (-1)^{|b||a|}[[b,c],a} + (-1)^{|c||b|}[[c,a],b}
inline AlgebraTerm jacobi_sum(const GeneratorSymbol& a, const GeneratorSymbol& b,
                              const GeneratorSymbol& c, const MetricOracle& metric,
                              BracketLog* log = nullptr) {
    using detail::koszul;
    AlgebraTerm sum;
    sum += bracket(bracket(a, b, metric, log), c, metric, log).scaled(koszul(a.odd(), c.odd()));
    sum += bracket(bracket(b, c, metric, log), a, metric, log).scaled(koszul(b.odd(), a.odd()));
    sum += bracket(bracket(c, a, metric, log), b, metric, log).scaled(koszul(c.odd(), b.odd()));
    return sum.normalize();
}

inline double jacobi_check(const GeneratorSymbol& a, const GeneratorSymbol& b,
                           const GeneratorSymbol& c, const MetricOracle& metric) {
    return jacobi_sum(a, b, c, metric).max_magnitude();
}

/// Closed-form (L_a, T†_b, T_c) defect -G(a+b+c)[ab + ac + (b-c)²] under the
/// tabulated central extension.
inline ComplexValue lttd_defect(ComplexValue a, ComplexValue b, ComplexValue c,
                                const MetricOracle& metric) {
    return -metric(a + b + c) * (a * b + a * c + (b - c) * (b - c));
}

struct SugawaraResult {
    ComplexValue t_coefficient;      // coefficient of T_{z+w} in {G^S_z, Q_w}
    double residual = 0.0;           // largest coefficient of any other T
    double condition_number = 0.0;   // 1-norm condition of the equilibrated metric
    double raw_condition_number = 0.0;
    AlgebraTerm with_q;              // {G^S_z, Q_w}
    AlgebraTerm with_q_dag;          // {G^S_z, Q†_w}
    AlgebraTerm table_q_dag;         // tabulated {G_z, Q†_w}
    bool conflicts_with_table = false;
};

inline constexpr double kMaxMetricCondition = 1e12;

/// G^S_z = Σ_ab T_{z+z_a} M^{ab} Q†_{z_b} with M_ab = G(z_a + z_b), bracketed
/// with Q_w and Q†_w through the super-Leibniz rule.
inline SugawaraResult sugawara_check(const std::vector<ComplexValue>& labels, ComplexValue z,
                                     ComplexValue w, const MetricOracle& metric) {
    const std::size_t n = labels.size();
    if (n == 0) throw DimensionError("superconformal_algebra", "sugawara_check", "no labels");
    if (std::none_of(labels.begin(), labels.end(), [&](ComplexValue v) { return v == w; }))
        throw DomainError("superconformal_algebra", "sugawara_check", "w must be one of the labels");

    Matrix m(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) = metric(labels[a] + labels[b]);

    SugawaraResult r;
    const Equilibrated eq = equilibrate(m);
    Matrix s_inv, raw_inv;
    const bool ok = lu_inverse(eq.scaled, s_inv);
    r.condition_number = ok ? norm_1(eq.scaled) * norm_1(s_inv) : INFINITY;
    r.raw_condition_number = lu_inverse(m, raw_inv) ? norm_1(m) * norm_1(raw_inv) : INFINITY;
    if (!ok || !(r.condition_number <= kMaxMetricCondition))
        throw SingularMetricError("superconformal_algebra", "sugawara_check",
                                  "metric matrix condition number " +
                                      std::to_string(r.condition_number) + " exceeds 1e12");
    // M^{-1} = D_c S^{-1} D_r
    Matrix inv(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) inv(a, b) = eq.col[a] * s_inv(a, b) * eq.row[b];

    // {T Q†, X} = T {Q†, X} - [T, X] Q†, and [T, Q] = [T, Q†] = 0
    for (std::size_t a = 0; a < n; ++a) {
        ComplexValue c_q{}, c_qd{};
        for (std::size_t b = 0; b < n; ++b) {
            c_q += inv(a, b) * bracket(Q_dag(labels[b]), Q(w), metric).central;
            c_qd += inv(a, b) * bracket(Q_dag(labels[b]), Q_dag(w), metric).central;
            if (!bracket(T(z + labels[a]), Q(w), metric).is_zero() ||
                !bracket(T(z + labels[a]), Q_dag(w), metric).is_zero())
                throw AccuracyError("superconformal_algebra", "sugawara_check",
                                    "[T, Q] is not zero in the bracket table");
        }
        r.with_q.add(c_q, T(z + labels[a]));
        r.with_q_dag.add(c_qd, T(z + labels[a]));
    }
    r.t_coefficient = r.with_q.coefficient(GeneratorKind::T, z + w);
    for (const auto& mono : r.with_q.monomials)
        if (!AlgebraTerm::same_label(mono.symbol.label, z + w))
            r.residual = std::max(r.residual, std::abs(mono.coefficient));
    r.with_q.normalize();
    r.with_q_dag.normalize();
    r.table_q_dag = bracket(Gf(z), Q_dag(w), metric);
    AlgebraTerm diff = r.table_q_dag;
    diff += r.with_q_dag.scaled(-1.0);
    r.conflicts_with_table = diff.normalize().max_magnitude() > 1e-8;
    return r;
}

enum class ProbeClass { vacuum, zeta_zero, violation };

inline const char* to_string(ProbeClass c) {
    switch (c) {
        case ProbeClass::vacuum: return "vacuum";
        case ProbeClass::zeta_zero: return "zeta-zero";
        case ProbeClass::violation: return "violation";
    }
    return "?";
}

struct ProbeResult {
    ComplexValue z;
    ComplexValue z_times_g;  // z·G(z), the physical-state condition
    double abs_zeta;         // |ζ(z)|, free of the Γ growth in G
    ProbeClass classification;
};

struct PaperMismatch {
    std::string id;
    std::string relation;
    std::string paper;
    std::string derived;
    ComplexValue ratio{};  // paper / derived where both are scalars
};

struct VacuumReport {
    ComplexValue vacuum_norm;  // <0|{Q_0, Q†_0}|0> = G(0)
    bool negative_norm = false;
    ComplexValue probe_z;
    ComplexValue t0_tdag_derived;  // [T_0, T†_z] from the structure constants
    ComplexValue t0_tdag_paper;    // i z G(z)
    ComplexValue t0_tdag_coefficient;  // derived bracket divided by G(z)
    ComplexValue mismatch_ratio;   // paper / derived
    std::vector<ProbeResult> probes;
    std::vector<PaperMismatch> mismatches;
};

inline constexpr double kPhysicalStateTol = 1e-8;

inline VacuumReport vacuum_rep_check(const MetricOracle& metric,
                                     const std::vector<ComplexValue>& probe_labels,
                                     ComplexValue z = {2.0, 0.0},
                                     const EvalAccuracy& acc = {}) {
    VacuumReport r;
    r.vacuum_norm = bracket(Q({}), Q_dag({}), metric).central;
    r.negative_norm = r.vacuum_norm.real() < 0.0;
    r.probe_z = z;
    r.t0_tdag_derived = bracket(T({}), T_dag(z), metric).central;
    r.t0_tdag_paper = kI * z * metric(z);
    // G(z) itself may vanish (integer z >= 2), so the ratio is taken between
    // the coefficients multiplying G(z)
    MetricOracle unit = metric;
    unit.evaluator = [](ComplexValue) { return ComplexValue{1.0, 0.0}; };
    r.t0_tdag_coefficient = bracket(T({}), T_dag(z), unit).central;
    r.mismatch_ratio = kI * z / r.t0_tdag_coefficient;
    if (std::abs(r.mismatch_ratio - 1.0) > 1e-12)
        r.mismatches.push_back({"t0_tdag_central",
                                "[T_0, T+_z]",
                                "i z G(z) = " + to_string(r.t0_tdag_paper),
                                "-z G(z) = " + to_string(r.t0_tdag_derived),
                                r.mismatch_ratio});
    if (r.negative_norm)
        r.mismatches.push_back({"fermionic_vacuum_norm", "<0|{Q_0, Q+_0}|0>", "positive norm",
                                "G(0) = " + to_string(r.vacuum_norm), {}});

    for (ComplexValue p : probe_labels) {
        ProbeResult pr{p, p * metric(p), 0.0, ProbeClass::violation};
        if (p == ComplexValue{}) {
            pr.classification = ProbeClass::vacuum;
        } else {
            pr.abs_zeta = p == ComplexValue{1.0, 0.0} ? INFINITY : std::abs(zeta(p, acc));
            if (pr.abs_zeta < kPhysicalStateTol) pr.classification = ProbeClass::zeta_zero;
        }
        r.probes.push_back(pr);
    }
    return r;
}

struct SectorStats {
    std::string sector;
    std::size_t triples = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double max_closed_form_deviation = -1.0;  // (L, T†, T) only
};

struct JacobiSector {
    GeneratorKind a, b, c;
};

inline std::vector<JacobiSector> default_jacobi_sectors() {
    using K = GeneratorKind;
    return {{K::L, K::L, K::L},     {K::L, K::T_dag, K::T}, {K::L, K::Gf, K::Gf_dag},
            {K::L, K::Q, K::Q_dag}, {K::Gf, K::T_dag, K::Q_dag}, {K::Gf, K::Gf_dag, K::T},
            {K::T_dag, K::T, K::Q}, {K::Gf, K::Q_dag, K::Q}};
}

/// Jacobi residual statistics over `triples` seeded random labels in
/// [-1, 1]² per sector.
inline SectorStats jacobi_sector_stats(const JacobiSector& sec, std::size_t triples,
                                       std::uint64_t seed, const MetricOracle& metric) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::array<ComplexValue, 3>> labels(triples);
    for (auto& t : labels)
        for (auto& z : t) z = {u(rng), u(rng)};

    std::vector<double> res(triples), dev(triples, -1.0);
    const bool lttd = sec.a == GeneratorKind::L && sec.b == GeneratorKind::T_dag &&
                      sec.c == GeneratorKind::T && metric.variant == CentralVariant::paper;
    detail::parallel_for(triples, [&](std::size_t k) {
        const auto& t = labels[k];
        const AlgebraTerm sum = jacobi_sum(GeneratorSymbol::make(sec.a, t[0]),
                                           GeneratorSymbol::make(sec.b, t[1]),
                                           GeneratorSymbol::make(sec.c, t[2]), metric);
        res[k] = sum.max_magnitude();
        if (lttd) dev[k] = std::abs(sum.central - lttd_defect(t[0], t[1], t[2], metric));
    }, 16);

    SectorStats st;
    st.sector = std::string(to_string(sec.a)) + "," + to_string(sec.b) + "," + to_string(sec.c);
    st.triples = triples;
    for (std::size_t k = 0; k < triples; ++k) {
        st.max_residual = std::max(st.max_residual, res[k]);
        st.mean_residual += res[k] / static_cast<double>(triples);
        st.max_closed_form_deviation = std::max(st.max_closed_form_deviation, dev[k]);
    }
    return st;
}

}  // namespace critline
