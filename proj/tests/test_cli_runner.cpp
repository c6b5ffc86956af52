#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "critline/runner.hpp"

using namespace critline;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("critline-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spill(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

int cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" CRITLINE_CLI_PATH "\" " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunProfile profile(const fs::path& dir, const std::string& command) {
    RunProfile p;
    p.command = command;
    p.out_dir = dir;
    return p;
}

}  // namespace

TEST(Cache, RoundTripsToFifteenDigits) {
    const auto dir = scratch("roundtrip");
    const ZeroTable zt = find_zeros_upto(60.0, 1e-10);
    write_cache(dir / "z.cache", zt);
    const ZeroTable back = validate_cache(dir / "z.cache");
    ASSERT_EQ(back.size(), zt.size());
    EXPECT_EQ(back.t_max, 60.0);
    EXPECT_EQ(back.tol, 1e-10);
    for (std::size_t k = 0; k < zt.size(); ++k) {
        EXPECT_NEAR(back.ordinates[k], zt.ordinates[k], 1e-13 * zt.ordinates[k]);
        EXPECT_EQ(fmt15(back.ordinates[k]), fmt15(zt.ordinates[k]));
    }
    EXPECT_EQ(cache_text(back), cache_text(zt));
}

TEST(Cache, RejectsMalformedFiles) {
    const auto dir = scratch("malformed");
    const auto f = dir / "z.cache";
    const std::string good = std::string(kCacheMagic) + " tmax=50 tol=1e-10\n1,14.1347251417347\n";
    for (const std::string& bad :
         {std::string("# critline-zeros v0 tmax=50 tol=1e-10\n1,14.1347251417347\n"),
          std::string(kCacheMagic) + " tmax=50\n",
          std::string(kCacheMagic) + " tmax=50 tol=1e-10\n2,14.1347251417347\n",
          std::string(kCacheMagic) + " tmax=50 tol=1e-10\n1,14.13,7\n",
          std::string(kCacheMagic) + " tmax=50 tol=1e-10\n1,abc\n",
          std::string(kCacheMagic) + " tmax=50 tol=1e-10\n1,21.0220396387716\n2,14.1347251417347\n",
          std::string(kCacheMagic) + " tmax=10 tol=1e-10\n1,14.1347251417347\n"}) {
        spill(f, bad);
        EXPECT_THROW(read_cache(f), CacheFormatError) << bad;
    }
    spill(f, good);
    EXPECT_NO_THROW(validate_cache(f));
    EXPECT_THROW(read_cache(dir / "missing.cache"), CacheFormatError);
}

TEST(Cache, TamperedOrdinateIsStale) {
    const auto dir = scratch("stale");
    spill(dir / "z.cache", std::string(kCacheMagic) + " tmax=50 tol=1e-10\n1,14.2\n");
    EXPECT_THROW(validate_cache(dir / "z.cache"), CacheStaleError);
}

TEST(Profile, SettingsAndValidation) {
    RunProfile p;
    apply_setting(p, "t_max", "50");
    apply_setting(p, "n", "7");
    apply_setting(p, "z12", "0.5,3");
    apply_setting(p, "variant", "i-central");
    EXPECT_EQ(p.t_max, 50.0);
    EXPECT_EQ(p.n_zeros, 7);
    EXPECT_EQ(p.z12, ComplexValue(0.5, 3.0));
    EXPECT_EQ(p.variant, CentralVariant::i_central);
    EXPECT_THROW(apply_setting(p, "bogus", "1"), ValidationError);
    EXPECT_THROW(apply_setting(p, "t_max", "fifty"), ValidationError);
    EXPECT_THROW(apply_setting(p, "variant", "other"), ValidationError);
    RunProfile bad;
    bad.t_max = 600.0;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = RunProfile{};
    bad.tol = 1e-12;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = RunProfile{};
    bad.K = 0.0;
    EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Profile, FileParsing) {
    const auto dir = scratch("profile-file");
    spill(dir / "p.txt", "# comment\nt_max = 40\n\nseed=7  # trailing\n");
    const auto kv = read_profile_file(dir / "p.txt");
    ASSERT_EQ(kv.size(), 2u);
    EXPECT_EQ(kv[0].first, "t_max");
    EXPECT_EQ(kv[0].second, "40");
    EXPECT_EQ(kv[1].second, "7");
    spill(dir / "q.txt", "no equals sign\n");
    EXPECT_THROW(read_profile_file(dir / "q.txt"), ValidationError);
}

TEST(Run, ZerosBelowFifty) {
    const auto dir = scratch("zeros50");
    RunProfile p = profile(dir, "zeros");
    p.t_max = 50.0;
    std::ostringstream err;
    ASSERT_EQ(run(p, err), ExitCode::ok) << err.str();
    const std::string csv = slurp(dir / "zeros.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
    EXPECT_EQ(csv.rfind("k,y_k\n1,14.1347251417", 0), 0u);
    const auto rep = Json::parse(slurp(dir / "zeros_report.json"));
    EXPECT_EQ(rep["count"], 10);
    EXPECT_TRUE(fs::exists(dir / "zeros.cache"));
}

TEST(Run, GramOfOneZero) {
    const auto dir = scratch("gram1");
    RunProfile p = profile(dir, "gram");
    p.n_zeros = 1;
    p.t_max = 20.0;
    std::ostringstream err;
    ASSERT_EQ(run(p, err), ExitCode::ok) << err.str();
    const auto g = Json::parse(slurp(dir / "gram.json"));
    EXPECT_EQ(g["n"], 1);
    ASSERT_EQ(g["entries"].size(), 1u);
    EXPECT_EQ(g["entries"][0][0].get<double>(), 1.0);
    EXPECT_EQ(g["entries"][0][1].get<double>(), 0.0);
    EXPECT_EQ(g["k"].get<double>(), 1.0);
}

TEST(Run, ManifestIsComplete) {
    const auto dir = scratch("manifest");
    RunProfile p = profile(dir, "form");
    std::ostringstream err;
    ASSERT_EQ(run(p, err), ExitCode::ok) << err.str();
    const auto m = Json::parse(slurp(dir / "manifest.json"));
    for (const char* key : {"tool", "version", "command", "profile", "calibration", "wall_time_s", "files"})
        EXPECT_TRUE(m.contains(key)) << key;
    EXPECT_EQ(m["version"], kVersion);
    EXPECT_EQ(m["command"], "form");
    for (const char* key : {"t_max", "n_zeros", "K", "seed", "tol", "z12", "variant", "cache_path"})
        EXPECT_TRUE(m["profile"].contains(key)) << key;
    EXPECT_EQ(m["calibration"]["constant"][0].get<double>(), -1.0);
    for (const auto& f : m["files"]) EXPECT_TRUE(fs::exists(dir / f.get<std::string>())) << f;
    const auto form = Json::parse(slurp(dir / "form.json"));
    EXPECT_LT(form["rel_diff"].get<double>(), 1e-10);
}

TEST(Run, ScanFiles) {
    const auto dir = scratch("scans");
    RunProfile p = profile(dir, "scan");
    p.t_max = 50.0;
    p.scan_sums = true;
    ASSERT_EQ(run(p), ExitCode::ok);
    const std::string az = slurp(dir / "scan_almost_zeros.csv");
    EXPECT_EQ(az.rfind("y12,abs_zeta,abs_G,exp_bound,y_sum,abs_zeta_sum,abs_G_sum\n", 0), 0u);
    EXPECT_EQ(std::count(az.begin(), az.end(), '\n'), 46);
    p.scan = "hermiticity";
    ASSERT_EQ(run(p), ExitCode::ok);
    const std::string h = slurp(dir / "scan_hermiticity.csv");
    EXPECT_EQ(std::count(h.begin(), h.end(), '\n'), 1 + 6 * 61);
    p.scan = "gaussian";
    ASSERT_EQ(run(p), ExitCode::ok);
    const std::string g = slurp(dir / "scan_gaussian.csv");
    EXPECT_EQ(std::count(g.begin(), g.end(), '\n'), 102);
}

TEST(Run, CachedAndFreshRunsAgree) {
    const auto dir = scratch("cached");
    RunProfile p = profile(dir, "zeros");
    ASSERT_EQ(run(p), ExitCode::ok);
    const std::string fresh = slurp(dir / "zeros.csv");
    const std::string report = slurp(dir / "zeros_report.json");
    ASSERT_EQ(run(p), ExitCode::ok);
    EXPECT_EQ(slurp(dir / "zeros.csv"), fresh);
    EXPECT_EQ(slurp(dir / "zeros_report.json"), report);
    p.t_max = 50.0;
    ASSERT_EQ(run(p), ExitCode::ok);
    const std::string sub = slurp(dir / "zeros.csv");
    EXPECT_EQ(fresh.compare(0, sub.size(), sub), 0);
}

TEST(Run, ErrorsMapToExitCodes) {
    const auto dir = scratch("errors");
    RunProfile p = profile(dir, "zeros");
    p.t_max = 700.0;
    std::ostringstream err;
    EXPECT_EQ(run(p, err), ExitCode::validation);
    const std::string msg = err.str();
    EXPECT_NE(msg.find("critline: error: cli_runner::RunProfile"), std::string::npos) << msg;
    EXPECT_EQ(std::count(msg.begin(), msg.end(), '\n'), 1);

    spill(dir / "zeros.cache", std::string(kCacheMagic) + " tmax=50 tol=1e-10\n1,14.2\n");
    p.t_max = 40.0;
    EXPECT_EQ(run(p, err), ExitCode::cache);
    spill(dir / "zeros.cache", "# critline-zeros v0\n");
    EXPECT_EQ(run(p, err), ExitCode::cache);
}

TEST(Cli, ZerosAndGram) {
    const auto dir = scratch("cli");
    ASSERT_EQ(cli("--out " + dir.string() + " zeros --t-max 50"), 0);
    const std::string csv = slurp(dir / "zeros.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
    ASSERT_EQ(cli("--out " + dir.string() + " gram --n 1"), 0);
    const auto g = Json::parse(slurp(dir / "gram.json"));
    EXPECT_EQ(g["entries"][0][0].get<double>(), 1.0);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("cli-codes");
    EXPECT_EQ(cli("--out " + dir.string() + " zeros --t-max 900"), 2);
    EXPECT_EQ(cli("--out " + dir.string() + " nonsense"), 2);
    EXPECT_EQ(cli("--out " + dir.string() + " scan bogus"), 2);
    EXPECT_EQ(cli("--out " + dir.string() + " zeros --tol 1e-12"), 2);
    spill(dir / "bad.cache", "# critline-zeros v0\n");
    EXPECT_EQ(cli("--out " + dir.string() + " --cache " + (dir / "bad.cache").string() + " zeros --t-max 30"), 4);
}

TEST(Cli, PrecedenceOfProfileEnvAndFlags) {
    const auto dir = scratch("cli-prec");
    spill(dir / "p.txt", "t_max=30\nout_dir=" + (dir / "from-profile").string() + "\n");
    ASSERT_EQ(cli("--profile " + (dir / "p.txt").string() + " zeros"), 0);
    auto rep = Json::parse(slurp(dir / "from-profile" / "zeros_report.json"));
    EXPECT_EQ(rep["t_max"].get<double>(), 30.0);

    ASSERT_EQ(cli("--profile " + (dir / "p.txt").string() + " zeros --t-max 40"), 0);
    rep = Json::parse(slurp(dir / "from-profile" / "zeros_report.json"));
    EXPECT_EQ(rep["t_max"].get<double>(), 40.0);

    const fs::path env_cache = dir / "env.cache";
    ASSERT_EQ(cli("--profile " + (dir / "p.txt").string() + " zeros", "CRITLINE_CACHE=" + env_cache.string()), 0);
    EXPECT_TRUE(fs::exists(env_cache));
    const auto m = Json::parse(slurp(dir / "from-profile" / "manifest.json"));
    EXPECT_EQ(m["profile"]["cache_path"], env_cache.string());

    const fs::path flag_cache = dir / "flag.cache";
    ASSERT_EQ(cli("--profile " + (dir / "p.txt").string() + " --cache " + flag_cache.string() + " zeros",
                  "CRITLINE_CACHE=" + env_cache.string()),
              0);
    EXPECT_TRUE(fs::exists(flag_cache));
}

TEST(Cli, DeterministicArtifacts) {
    const auto a = scratch("det-a"), b = scratch("det-b");
    const std::string args = " --t-max 50 --n-zeros 8 all";
    ASSERT_EQ(cli("--out " + a.string() + args), 0);
    ASSERT_EQ(cli("--out " + b.string() + args), 0);
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const auto name = e.path().filename().string();
        if (name == "manifest.json") continue;
        EXPECT_EQ(slurp(e.path()), slurp(b / name)) << name;
        ++compared;
    }
    EXPECT_GE(compared, 9u);
}
