#pragma once

// File-backed store of Bessel zeros. CSV with header nu,k,value, one row per
// (nu, k) sorted by key, values written with 17 significant digits.
// Rewrites go to a temporary file that is renamed over the old one.

#include "rotwave/specfun.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <utility>

namespace rotwave {

class ZeroCache {
public:
    // Empty, not backed by a file.
    ZeroCache() = default;
    // Loads path if it exists. Throws ConfigError on a malformed file.
    explicit ZeroCache(std::filesystem::path path);

    // $ROTWAVE_CACHE_DIR/bessel_zeros.csv, else $XDG_CACHE_HOME/rotwave/...,
    // else $HOME/.cache/rotwave/..., else nullopt.
    static std::optional<std::filesystem::path> default_path();

    std::optional<double> lookup(double nu, int k) const;
    // Keeps the first value stored for a key.
    void insert(double nu, int k, double value);

    // Cache hit, or compute with specfun::bessel_j_zero and remember.
    // Enclosures are recomputed, they are cheap.
    specfun::BesselZero get(double nu, int k);

    std::size_t size() const;
    bool dirty() const;
    const std::filesystem::path& path() const { return path_; }

    // Writes when there are new entries and a path is set.
    void save();

private:
    using Key = std::pair<double, int>;
    std::filesystem::path path_;
    std::map<Key, double> records_;
    bool dirty_ = false;
    mutable std::shared_mutex mutex_;
};

} // namespace rotwave
