#pragma once

// Zero cache files and CSV/number formatting.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "critline/zero_finder.hpp"

namespace critline {

/// 15 significant digits, "." decimal separator regardless of locale.
inline std::string fmt15(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline std::string csv_row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) line += ',';
        line += fmt15(values[k]);
    }
    return line + '\n';
}

/// Writes `content` to `path` through a sibling temp file and a rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cli_runner", "write", "cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw ValidationError("cli_runner", "write", "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline constexpr const char* kCacheMagic = "# critline-zeros v1";

inline std::string cache_text(const ZeroTable& zt) {
    std::string s = std::string(kCacheMagic) + " tmax=" + fmt15(zt.t_max) + " tol=" + fmt15(zt.tol) + "\n";
    for (std::size_t k = 0; k < zt.size(); ++k)
        s += std::to_string(k + 1) + "," + fmt15(zt.ordinates[k]) + "\n";
    return s;
}

inline void write_cache(const std::filesystem::path& path, const ZeroTable& zt) {
    write_atomic(path, cache_text(zt));
}

/// Parses a cache file without re-verifying the ordinates.
inline ZeroTable read_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheFormatError("cli_runner", "validate_cache", "cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    ZeroTable zt;
    {
        const std::string magic = kCacheMagic;
        if (header.rfind(magic + " ", 0) != 0)
            throw CacheFormatError("cli_runner", "validate_cache", "bad header: " + header);
        std::istringstream hs(header.substr(magic.size()));
        std::string a, b, extra;
        hs >> a >> b;
        if (a.rfind("tmax=", 0) != 0 || b.rfind("tol=", 0) != 0 || (hs >> extra))
            throw CacheFormatError("cli_runner", "validate_cache", "bad header fields: " + header);
        try {
            std::size_t used = 0;
            zt.t_max = std::stod(a.substr(5), &used);
            if (used != a.size() - 5) throw std::invalid_argument("tmax");
            zt.tol = std::stod(b.substr(4), &used);
            if (used != b.size() - 4) throw std::invalid_argument("tol");
        } catch (const std::exception&) {
            throw CacheFormatError("cli_runner", "validate_cache", "bad header numbers: " + header);
        }
    }
    std::string line;
    std::size_t expect = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw CacheFormatError("cli_runner", "validate_cache", "expected 2 columns: " + line);
        try {
            std::size_t used = 0;
            const unsigned long k = std::stoul(line.substr(0, comma), &used);
            if (used != comma || k != expect) throw std::invalid_argument("index");
            const std::string ys = line.substr(comma + 1);
            const double y = std::stod(ys, &used);
            if (used != ys.size()) throw std::invalid_argument("ordinate");
            zt.ordinates.push_back(y);
        } catch (const std::exception&) {
            throw CacheFormatError("cli_runner", "validate_cache", "bad row: " + line);
        }
        ++expect;
    }
    for (std::size_t k = 0; k < zt.size(); ++k) {
        const double y = zt.ordinates[k];
        if (!(y > 0.0) || !(y < zt.t_max) || (k && !(y > zt.ordinates[k - 1])))
            throw CacheFormatError("cli_runner", "validate_cache",
                                   "ordinates not strictly increasing inside (0, tmax)");
    }
    return zt;
}

/// Parses a cache file and re-verifies every ordinate by one bracketing
/// check of Hardy's Z at the stored tolerance.
inline ZeroTable validate_cache(const std::filesystem::path& path, const EvalAccuracy& acc = {}) {
    ZeroTable zt = read_cache(path);
    for (double y : zt.ordinates)
        if (!brackets_zero(y, zt.tol, acc))
            throw CacheStaleError("cli_runner", "validate_cache",
                                  "ordinate " + fmt15(y) + " no longer brackets a sign change of Z");
    return zt;
}

}  // namespace critline
