// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Plain-text run configuration:
//
//   # comment
//   [section]
//   key = value
//
// Keys are addressed as "section.key"; keys before any header live in the
// empty section and are addressed by their bare name.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "lucj/compress.hpp"

namespace lucj::cli {

class RunConfig {
public:
    static RunConfig parse(std::istream &in);
    static RunConfig load(const std::filesystem::path &path);

    /// Later values win.
    void set(const std::string &key, const std::string &value);
    bool has(const std::string &key) const { return values_.count(key) != 0; }

    std::optional<std::string> get(const std::string &key) const;
    std::string get_string(const std::string &key, const std::string &fallback) const;
    std::string require(const std::string &key) const;
    long long get_int(const std::string &key, long long fallback) const;
    double get_double(const std::string &key, double fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;
    std::uint64_t get_seed(const std::string &key, std::uint64_t fallback) const;

    const std::map<std::string, std::string> &values() const { return values_; }

    /// FNV-1a over the sorted "key=value" lines.
    std::uint64_t hash() const;
    std::string hash_hex() const;

private:
    std::map<std::string, std::string> values_;
};

/// Pair lists written as "0-1 1-2 3-3".
PairSet parse_pairs(const std::string &text, int norb);

/// mask.preset (default fallback_preset), with mask.same_spin /
/// mask.opposite_spin overriding the preset's sets when present.
ConnectivityMask mask_from_config(const RunConfig &config, int norb, const std::string &fallback_preset);

} // namespace lucj::cli
