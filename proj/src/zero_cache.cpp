#include "rotwave/zero_cache.hpp"

#include "rotwave/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <unistd.h>

namespace rotwave {

namespace {

constexpr const char* kHeader = "nu,k,value";
constexpr const char* kFileName = "bessel_zeros.csv";

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s, const std::filesystem::path& p, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty())
        throw ConfigError("zero cache " + p.string() + ": bad number on line " + std::to_string(line));
    return v;
}

} // namespace

ZeroCache::ZeroCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    int n = 0;
    if (!std::getline(in, line) || line != kHeader) throw ConfigError("zero cache " + path_.string() + ": bad header");
    ++n;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw ConfigError("zero cache " + path_.string() + ": bad row on line " + std::to_string(n));
        const double nu = parse_double(a, path_, n);
        const double kk = parse_double(b, path_, n);
        const double value = parse_double(c, path_, n);
        if (!(nu >= 0.0) || !(kk >= 1.0) || kk != std::floor(kk) || kk > specfun::kMaxIndex || !(value > 0.0) ||
            !std::isfinite(value))
            throw ConfigError("zero cache " + path_.string() + ": out-of-range entry on line " + std::to_string(n));
        records_.emplace(Key{nu, static_cast<int>(kk)}, value);
    }
}

std::optional<std::filesystem::path> ZeroCache::default_path() {
    if (const char* d = std::getenv("ROTWAVE_CACHE_DIR"); d && *d) return std::filesystem::path(d) / kFileName;
    if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d)
        return std::filesystem::path(d) / "rotwave" / kFileName;
    if (const char* d = std::getenv("HOME"); d && *d)
        return std::filesystem::path(d) / ".cache" / "rotwave" / kFileName;
    return std::nullopt;
}

std::optional<double> ZeroCache::lookup(double nu, int k) const {
    std::shared_lock lock(mutex_);
    const auto it = records_.find(Key{nu, k});
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void ZeroCache::insert(double nu, int k, double value) {
    std::unique_lock lock(mutex_);
    if (records_.emplace(Key{nu, k}, value).second) dirty_ = true;
}

specfun::BesselZero ZeroCache::get(double nu, int k) {
    if (const auto v = lookup(nu, k)) {
        const specfun::Enclosure e = specfun::qu_wong_enclosure(nu, k);
        return {nu, k, *v, e.lower, e.upper};
    }
    const specfun::BesselZero z = specfun::bessel_j_zero(nu, k);
    insert(nu, k, z.value);
    return z;
}

std::size_t ZeroCache::size() const {
    std::shared_lock lock(mutex_);
    return records_.size();
}

bool ZeroCache::dirty() const {
    std::shared_lock lock(mutex_);
    return dirty_;
}

void ZeroCache::save() {
    std::unique_lock lock(mutex_);
    if (!dirty_ || path_.empty()) return;
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    const std::filesystem::path tmp = path_.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("zero cache: cannot write " + tmp.string());
        out << kHeader << '\n';
        for (const auto& [key, value] : records_) out << g17(key.first) << ',' << key.second << ',' << g17(value) << '\n';
        out.flush();
        if (!out) throw ConfigError("zero cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
    dirty_ = false;
}

} // namespace rotwave
