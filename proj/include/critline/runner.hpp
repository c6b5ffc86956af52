#pragma once

// Experiment pipelines behind the critline command line: cached zeros,
// CSV/JSON artifacts and a manifest per run.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "critline/gram_analysis.hpp"
#include "critline/io.hpp"
#include "critline/superconformal_algebra.hpp"
#include "critline/zero_finder.hpp"

namespace critline {

inline constexpr const char* kVersion = "1.0.0";

enum class ExitCode : int { ok = 0, failure = 1, validation = 2, accuracy = 3, cache = 4 };

struct RunProfile {
    std::string command = "all";
    double t_max = 100.0;
    int n_zeros = 50;
    double K = 1.0;
    std::uint64_t seed = 42;
    std::filesystem::path out_dir = "critline-out";
    std::filesystem::path cache_path;  // empty: <out_dir>/zeros.cache
    double tol = 1e-10;
    ComplexValue z12{1.5, 0.0};
    std::string scan = "almost-zeros";
    bool scan_sums = false;
    int triples = 1000;
    CentralVariant variant = CentralVariant::paper;

    std::filesystem::path cache() const {
        return cache_path.empty() ? out_dir / "zeros.cache" : cache_path;
    }

    void validate() const {
        static const char* commands[] = {"zeros", "form", "gram", "scan", "algebra", "all"};
        if (std::find_if(std::begin(commands), std::end(commands),
                         [&](const char* c) { return command == c; }) == std::end(commands))
            throw ValidationError("cli_runner", "RunProfile", "unknown command " + command);
        if (!(t_max > 0.0) || t_max > kMaxScanHeight)
            throw ValidationError("cli_runner", "RunProfile", "t_max must be in (0, 500]");
        if (n_zeros < 1) throw ValidationError("cli_runner", "RunProfile", "n_zeros must be >= 1");
        if (!std::isfinite(K) || K == 0.0)
            throw ValidationError("cli_runner", "RunProfile", "K must be finite and non-zero");
        if (!(tol >= 1e-10)) throw ValidationError("cli_runner", "RunProfile", "tol must be >= 1e-10");
        if (triples < 1) throw ValidationError("cli_runner", "RunProfile", "triples must be >= 1");
        if (scan != "hermiticity" && scan != "almost-zeros" && scan != "gaussian")
            throw ValidationError("cli_runner", "RunProfile", "unknown scan " + scan);
    }
};

inline double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ValidationError("cli_runner", "profile", "bad number for " + key + ": " + v);
}

inline ComplexValue parse_complex(const std::string& key, const std::string& v) {
    const auto comma = v.find(',');
    if (comma == std::string::npos) return {parse_real(key, v), 0.0};
    return {parse_real(key, v.substr(0, comma)), parse_real(key, v.substr(comma + 1))};
}

inline CentralVariant parse_variant(const std::string& v) {
    if (v == "paper") return CentralVariant::paper;
    if (v == "plain") return CentralVariant::plain;
    if (v == "i-central") return CentralVariant::i_central;
    throw ValidationError("cli_runner", "profile", "unknown variant " + v);
}

/// Applies one key=value setting.
inline void apply_setting(RunProfile& p, const std::string& key, const std::string& value) {
    if (key == "command") p.command = value;
    else if (key == "t_max") p.t_max = parse_real(key, value);
    else if (key == "n_zeros" || key == "n") p.n_zeros = static_cast<int>(parse_real(key, value));
    else if (key == "K") p.K = parse_real(key, value);
    else if (key == "seed") p.seed = static_cast<std::uint64_t>(parse_real(key, value));
    else if (key == "out_dir") p.out_dir = value;
    else if (key == "cache_path") p.cache_path = value;
    else if (key == "tol") p.tol = parse_real(key, value);
    else if (key == "z12") p.z12 = parse_complex(key, value);
    else if (key == "scan") p.scan = value;
    else if (key == "scan_sums") p.scan_sums = value == "1" || value == "true";
    else if (key == "triples") p.triples = static_cast<int>(parse_real(key, value));
    else if (key == "variant") p.variant = parse_variant(value);
    else throw ValidationError("cli_runner", "profile", "unknown key " + key);
}

/// key=value lines; blank lines and lines starting with '#' are skipped.
inline std::vector<std::pair<std::string, std::string>> read_profile_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cli_runner", "profile", "cannot open " + path.string());
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("cli_runner", "profile", "expected key=value: " + line);
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

namespace detail {

using Json = nlohmann::ordered_json;

inline Json cjson(ComplexValue z) { return Json::array({z.real(), z.imag()}); }

/// Rounds to the 15 digits stored in the cache, so fresh and cached runs agree.
inline double cache_round(double y) { return std::stod(fmt15(y)); }

class Pipeline {
public:
    explicit Pipeline(const RunProfile& p) : p_(p), form_(FormConfig{p.K, {}}) {}

    void run() {
        const auto& c = p_.command;
        if (c == "zeros" || c == "all") zeros();
        if (c == "form" || c == "all") form();
        if (c == "gram" || c == "all") gram();
        if (c == "scan") scan(p_.scan);
        if (c == "all")
            for (const char* s : {"hermiticity", "almost-zeros", "gaussian"}) scan(s);
        if (c == "algebra" || c == "all") algebra();
    }

    Json manifest(double wall_seconds) const {
        Json m;
        m["tool"] = "critline";
        m["version"] = kVersion;
        m["command"] = p_.command;
        m["profile"] = {{"t_max", p_.t_max},   {"n_zeros", p_.n_zeros},
                        {"K", p_.K},           {"seed", p_.seed},
                        {"tol", p_.tol},       {"z12", cjson(p_.z12)},
                        {"scan", p_.scan},     {"scan_sums", p_.scan_sums},
                        {"triples", p_.triples}, {"variant", to_string(p_.variant)},
                        {"out_dir", p_.out_dir.string()}, {"cache_path", p_.cache().string()}};
        const auto& cal = form_.calibration();
        m["calibration"] = {{"point", cjson(cal.point)},
                            {"measured", cjson(cal.measured)},
                            {"constant", cjson(cal.constant)}};
        m["wall_time_s"] = wall_seconds;
        m["files"] = files_;
        return m;
    }

private:
    void emit(const std::string& name, const std::string& content) {
        write_atomic(p_.out_dir / name, content);
        if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
    }
    void emit_json(const std::string& name, const Json& j) { emit(name, j.dump(2) + "\n"); }

    std::optional<ZeroTable> cached() {
        if (!cache_loaded_) {
            cache_loaded_ = true;
            if (std::filesystem::exists(p_.cache())) cache_ = validate_cache(p_.cache(), form_.config().acc);
        }
        return cache_;
    }

    /// Zeros below T, from the cache when it covers T at the requested tolerance.
    ZeroTable zeros_upto(double T) {
        if (auto c = cached(); c && c->t_max >= T && c->tol <= p_.tol) {
            ZeroTable out{{}, T, c->tol};
            for (double y : c->ordinates)
                if (y < T) out.ordinates.push_back(y);
            return out;
        }
        ZeroTable fresh = find_zeros_upto(T, p_.tol, form_.config().acc);
        for (double& y : fresh.ordinates) y = cache_round(y);
        auto c = cached();
        if (!c || c->t_max < T || c->tol > p_.tol) {
            write_cache(p_.cache(), fresh);
            cache_ = fresh;
        }
        return fresh;
    }

    ZeroTable first_zeros(std::size_t n) {
        double T = std::min(kMaxScanHeight, std::max(p_.t_max, 20.0));
        for (;;) {
            ZeroTable zt = zeros_upto(T);
            if (zt.size() >= n) {
                zt.ordinates.resize(n);
                return zt;
            }
            if (T >= kMaxScanHeight)
                throw ValidationError("cli_runner", "first_zeros", "fewer than n zeros below t = 500");
            T = std::min(kMaxScanHeight, T * 1.25);
        }
    }

    void zeros() {
        const ZeroTable zt = zeros_upto(p_.t_max);
        std::string csv = "k,y_k\n";
        for (std::size_t k = 0; k < zt.size(); ++k)
            csv += std::to_string(k + 1) + "," + fmt15(zt.ordinates[k]) + "\n";
        emit("zeros.csv", csv);

        Json r;
        r["t_max"] = zt.t_max;
        r["tol"] = zt.tol;
        r["count"] = zt.size();
        r["riemann_count_estimate"] = riemann_count_estimate(zt.t_max);
        r["count_relative_deviation"] = count_check(zt).relative_deviation;
        if (zt.t_max > 2.0 * kPi * std::numbers::e) r["min_gap_bound"] = min_gap_bound(zt.t_max);
        if (zt.size() >= 2) {
            const auto st = gap_statistics(zt);
            r["min_gap"] = st.min_gap;
            r["max_gap"] = st.max_gap;
            r["mean_gap"] = st.mean_gap;
            Json prof = Json::array();
            for (const auto& w : st.density_profile)
                prof.push_back({{"lo", w.lo},
                                {"hi", w.hi},
                                {"count", w.count},
                                {"empirical", w.empirical},
                                {"formula", w.formula},
                                {"relative_deviation", w.relative_deviation},
                                {"derivative", w.derivative},
                                {"derivative_deviation", w.derivative_deviation}});
            r["density_profile"] = prof;
        }
        emit_json("zeros_report.json", r);
    }

    void form() {
        const ComplexValue z = p_.z12;
        Json r;
        r["z12"] = cjson(z);
        const ComplexValue closed = form_.g_closed(z);
        r["g_closed"] = cjson(closed);
        if (z.real() > 0.0) {
            const ComplexValue q = g_quadrature(z, form_.config());
            r["g_quadrature"] = cjson(q);
            r["abs_diff"] = std::abs(closed - q);
            r["rel_diff"] = std::abs(closed - q) / std::abs(q);
        }
        r["hermiticity_residual"] = cjson(form_.hermiticity_residual(z));
        r["reflection_residual"] = cjson(form_.reflection_residual(z));
        emit_json("form.json", r);
    }

    void gram() {
        const ZeroTable zt = first_zeros(static_cast<std::size_t>(p_.n_zeros));
        const GramMatrix gm = build_gram(zt, form_);
        const PositivityReport rep = positivity_report(gm);
        Json r;
        r["k"] = gm.K;
        r["n"] = gm.size();
        Json labels = Json::array(), entries = Json::array();
        for (const auto& l : gm.labels) labels.push_back(cjson(l.z));
        for (const auto& e : gm.entries.data()) entries.push_back(cjson(e));
        r["labels"] = labels;
        r["entries"] = entries;
        r["hermitian_defect"] = gm.entries.hermitian_defect();
        Json viol = Json::array();
        for (const auto& v : rep.schwarz_violations)
            viol.push_back({{"i", v.i}, {"j", v.j}, {"magnitude", v.magnitude}});
        const auto& pc = rep.polynomial_check;
        r["report"] = {{"min_eigenvalue", rep.min_eigenvalue},
                       {"max_eigenvalue", rep.max_eigenvalue},
                       {"eigenvalues", rep.eigenvalues},
                       {"cholesky_succeeded", rep.cholesky_succeeded},
                       {"jacobi_sweeps", rep.jacobi_sweeps},
                       {"schwarz_violations", viol},
                       {"polynomial_check",
                        {{"block", pc.block},
                         {"polynomial", pc.polynomial},
                         {"jacobi", pc.jacobi},
                         {"max_abs_diff", pc.max_abs_diff},
                         {"max_rel_diff", pc.max_rel_diff}}}};
        Json spots = Json::array();
        for (const auto& s : quadrature_spot_check(gm, form_.config(), 10, p_.seed))
            spots.push_back({{"i", s.i},
                             {"j", s.j},
                             {"closed", cjson(s.closed)},
                             {"quadrature", cjson(s.quadrature)},
                             {"abs_diff", s.abs_diff},
                             {"rel_diff", s.rel_diff}});
        r["quadrature_spot_checks"] = spots;
        emit_json("gram.json", r);
    }

    void scan(const std::string& kind) {
        if (kind == "hermiticity") {
            std::string csv = "x,y,re_residual,im_residual,abs_residual\n";
            for (double x : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0})
                for (int y = -30; y <= 30; ++y) {
                    const ComplexValue d = form_.hermiticity_residual({x, double(y)});
                    csv += csv_row({x, double(y), d.real(), d.imag(), std::abs(d)});
                }
            emit("scan_hermiticity.csv", csv);
        } else if (kind == "almost-zeros") {
            const ZeroTable zt = zeros_upto(p_.t_max);
            std::string csv = "y12,abs_zeta,abs_G,exp_bound";
            csv += p_.scan_sums ? ",y_sum,abs_zeta_sum,abs_G_sum\n" : "\n";
            for (const auto& row : almost_zero_scan(zt, form_.config())) {
                std::vector<double> v{row.y12, row.abs_zeta, row.abs_G, row.exp_bound};
                if (p_.scan_sums) v.insert(v.end(), {row.y_sum, row.abs_zeta_sum, row.abs_G_sum});
                csv += csv_row(v);
            }
            emit("scan_almost_zeros.csv", csv);
        } else {
            std::string csv = "y,re_model,im_model,re_closed,im_closed,rel_deviation\n";
            for (const auto& d : gaussian_deviation_profile(form_))
                csv += csv_row({d.y, d.model.real(), d.model.imag(), d.closed.real(),
                                d.closed.imag(), d.relative_deviation});
            emit("scan_gaussian.csv", csv);
        }
    }

    void algebra() {
        const MetricOracle metric = MetricOracle::from_form(form_, p_.variant);
        Json r;
        r["variant"] = to_string(p_.variant);
        r["seed"] = p_.seed;
        r["triples"] = p_.triples;
        Json sectors = Json::array();
        std::uint64_t sector_seed = p_.seed;
        for (const auto& sec : default_jacobi_sectors()) {
            const auto st = jacobi_sector_stats(sec, static_cast<std::size_t>(p_.triples),
                                                sector_seed++, metric);
            Json s{{"sector", st.sector},
                   {"triples", st.triples},
                   {"max_residual", st.max_residual},
                   {"mean_residual", st.mean_residual}};
            if (st.max_closed_form_deviation >= 0.0)
                s["max_closed_form_deviation"] = st.max_closed_form_deviation;
            sectors.push_back(s);
        }
        r["jacobi_sectors"] = sectors;

        const ZeroTable z3 = first_zeros(3);
        std::vector<ComplexValue> labels;
        for (double y : z3.ordinates) labels.emplace_back(0.5, y);
        const SugawaraResult sg = sugawara_check(labels, {}, labels[0], metric);
        Json lab = Json::array();
        for (auto l : labels) lab.push_back(cjson(l));
        r["sugawara"] = {{"labels", lab},
                         {"z", cjson({})},
                         {"w", cjson(labels[0])},
                         {"t_coefficient", cjson(sg.t_coefficient)},
                         {"residual", sg.residual},
                         {"condition_number", sg.condition_number},
                         {"raw_condition_number", sg.raw_condition_number},
                         {"with_q_dag_max", sg.with_q_dag.max_magnitude()},
                         {"conflicts_with_table", sg.conflicts_with_table}};

        std::vector<ComplexValue> probes{{}, labels[0], labels[1], {0.8, 2.0}};
        const VacuumReport v = vacuum_rep_check(metric, probes, {2.0, 0.0});
        Json pj = Json::array();
        for (const auto& p : v.probes)
            pj.push_back({{"z", cjson(p.z)},
                          {"abs_z_times_g", std::abs(p.z_times_g)},
                          {"abs_zeta", p.abs_zeta},
                          {"class", to_string(p.classification)}});
        r["vacuum"] = {{"vacuum_norm", cjson(v.vacuum_norm)},
                       {"negative_norm", v.negative_norm},
                       {"probe_z", cjson(v.probe_z)},
                       {"t0_tdag_derived", cjson(v.t0_tdag_derived)},
                       {"t0_tdag_paper", cjson(v.t0_tdag_paper)},
                       {"t0_tdag_coefficient", cjson(v.t0_tdag_coefficient)},
                       {"mismatch_ratio", cjson(v.mismatch_ratio)},
                       {"probes", pj}};

        Json mism = Json::array();
        for (const auto& m : v.mismatches)
            mism.push_back({{"id", m.id}, {"relation", m.relation}, {"paper", m.paper},
                            {"derived", m.derived}, {"ratio", cjson(m.ratio)}});
        if (sg.conflicts_with_table)
            mism.push_back({{"id", "g_qdag_anticommutator"},
                            {"relation", "{G_z, Q+_w}"},
                            {"paper", "T_{z+w}"},
                            {"derived", "0 from the Sugawara form"},
                            {"ratio", cjson({})}});
        r["paper_mismatches"] = mism;
        emit_json("algebra.json", r);
    }

    RunProfile p_;
    HermitianForm form_;
    std::vector<std::string> files_;
    bool cache_loaded_ = false;
    std::optional<ZeroTable> cache_;
};

}  // namespace detail

inline ExitCode exit_code_for(const Error& e) {
    if (dynamic_cast<const CacheFormatError*>(&e) || dynamic_cast<const CacheStaleError*>(&e))
        return ExitCode::cache;
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
        dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const InsufficientDataError*>(&e))
        return ExitCode::validation;
    return ExitCode::accuracy;
}

/// Runs the profile, writing artifacts and manifest.json under out_dir.
/// Failures print a single diagnostic line to `err`.
inline ExitCode run(const RunProfile& profile, std::ostream& err = std::cerr) {
    const auto start = std::chrono::steady_clock::now();
    try {
        profile.validate();
        std::filesystem::create_directories(profile.out_dir);
        detail::Pipeline pipe(profile);
        pipe.run();
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_atomic(profile.out_dir / "manifest.json", pipe.manifest(wall).dump(2) + "\n");
        return ExitCode::ok;
    } catch (const Error& e) {
        err << "critline: error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "critline: error: cli_runner::run: " << e.what() << "\n";
        return ExitCode::validation;
    }
}

}  // namespace critline
