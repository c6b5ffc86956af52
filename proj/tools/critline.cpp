// critline: command-line front end for the zero, form, Gram, scan and
// algebra pipelines.

#include <cstdlib>
#include <deque>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "critline/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"critline: coherent-state overlaps on the critical line"};
    app.require_subcommand(1);
    app.fallthrough();

    // profile key, option and raw value for every settable flag
    struct Flag {
        std::string key;
        CLI::Option* opt;
        std::string* value;
    };
    std::deque<std::string> storage;
    std::vector<Flag> flags;
    auto option = [&](CLI::App* where, const std::string& name, const std::string& key,
                      const std::string& help) {
        std::string& store = storage.emplace_back();
        flags.push_back({key, where->add_option(name, store, help), &store});
    };

    std::string profile_file;
    app.add_option("--profile", profile_file, "key=value profile file (flags take precedence)");
    option(&app, "--out", "out_dir", "output directory");
    option(&app, "--cache", "cache_path", "zero cache file (default <out>/zeros.cache)");
    option(&app, "--t-max", "t_max", "scan ceiling for zeros, <= 500");
    option(&app, "--tol", "tol", "bisection tolerance, >= 1e-10");
    option(&app, "--K", "K", "normalization constant of the form");
    option(&app, "--seed", "seed", "seed for sampled checks");
    option(&app, "--n-zeros", "n_zeros", "number of zeros for the Gram matrix");

    app.add_subcommand("zeros", "locate critical-line zeros up to --t-max");
    auto* form = app.add_subcommand("form", "evaluate G(z12) by closed form and quadrature");
    option(form, "--z12", "z12", "label as re,im");
    auto* gram = app.add_subcommand("gram", "Gram matrix audit over the first n zeros");
    option(gram, "--n", "n_zeros", "number of zeros");
    auto* scan = app.add_subcommand("scan", "tabulate a scan");
    std::string scan_kind;
    scan->add_option("kind", scan_kind, "hermiticity | almost-zeros | gaussian")
        ->required()
        ->check(CLI::IsMember({"hermiticity", "almost-zeros", "gaussian"}));
    bool sums = false;
    scan->add_flag("--sums", sums, "add y1+y2 columns to the almost-zero scan");
    auto* algebra = app.add_subcommand("algebra", "bracket-engine consistency report");
    option(algebra, "--triples", "triples", "random triples per Jacobi sector");
    option(algebra, "--seed", "seed", "seed for sampled triples");
    option(algebra, "--variant", "variant", "paper | plain | i-central");
    app.add_subcommand("all", "run every pipeline");

    int code = 0;
    try {
        app.parse(argc, argv);
        critline::RunProfile profile;
        if (!profile_file.empty())
            for (const auto& [k, v] : critline::read_profile_file(profile_file))
                critline::apply_setting(profile, k, v);
        if (const char* env = std::getenv("CRITLINE_CACHE"); env && *env) profile.cache_path = env;
        for (const auto& f : flags)
            if (f.opt->count() > 0) critline::apply_setting(profile, f.key, *f.value);
        profile.command = app.get_subcommands().front()->get_name();
        if (profile.command == "scan") {
            profile.scan = scan_kind;
            profile.scan_sums = profile.scan_sums || sums;
        }
        code = static_cast<int>(critline::run(profile));
    } catch (const CLI::ParseError& e) {
        code = app.exit(e);
        if (code != 0) code = static_cast<int>(critline::ExitCode::validation);
    } catch (const critline::Error& e) {
        std::cerr << "critline: error: " << e.what() << "\n";
        code = static_cast<int>(critline::exit_code_for(e));
    }
    return code;
}
