// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lucj::cli {

namespace {

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

RunConfig RunConfig::parse(std::istream &in)
{
    RunConfig config;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
        config.set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
    }
    return config;
}

RunConfig RunConfig::load(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());
    return parse(in);
}

void RunConfig::set(const std::string &key, const std::string &value) { values_[key] = value; }

std::optional<std::string> RunConfig::get(const std::string &key) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string RunConfig::get_string(const std::string &key, const std::string &fallback) const
{
    return get(key).value_or(fallback);
}

std::string RunConfig::require(const std::string &key) const
{
    auto v = get(key);
    if (!v || v->empty()) throw ParseError("missing required setting '" + key + "'");
    return *v;
}

long long RunConfig::get_int(const std::string &key, long long fallback) const
{
    const auto v = get(key);
    if (!v) return fallback;
    long long out = 0;
    auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
        throw ParseError("setting '" + key + "' is not an integer: '" + *v + "'");
    }
    return out;
}

double RunConfig::get_double(const std::string &key, double fallback) const
{
    const auto v = get(key);
    if (!v) return fallback;
    double out = 0.0;
    auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
        throw ParseError("setting '" + key + "' is not a number: '" + *v + "'");
    }
    return out;
}

bool RunConfig::get_bool(const std::string &key, bool fallback) const
{
    const auto v = get(key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ParseError("setting '" + key + "' is not a boolean: '" + *v + "'");
}

std::uint64_t RunConfig::get_seed(const std::string &key, std::uint64_t fallback) const
{
    const long long v = get_int(key, static_cast<long long>(fallback));
    if (v < 0) throw ParseError("setting '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
}

std::uint64_t RunConfig::hash() const
{
    std::uint64_t h = 14695981039346656037ULL;
    auto feed = [&](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto &[k, v] : values_) feed(k + "=" + v + "\n");
    return h;
}

std::string RunConfig::hash_hex() const
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

PairSet parse_pairs(const std::string &text, int norb)
{
    PairSet pairs;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        const auto dash = tok.find('-');
        int p = -1, q = -1;
        if (dash != std::string::npos) {
            auto r1 = std::from_chars(tok.data(), tok.data() + dash, p);
            auto r2 = std::from_chars(tok.data() + dash + 1, tok.data() + tok.size(), q);
            if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != tok.data() + dash ||
                r2.ptr != tok.data() + tok.size()) {
                p = -1;
            }
        }
        if (p < 0 || q < 0) throw ParseError("invalid orbital pair '" + tok + "'");
        pairs.emplace(p, q);
    }
    return symmetrize(pairs, norb);
}

ConnectivityMask mask_from_config(const RunConfig &config, int norb, const std::string &fallback_preset)
{
    ConnectivityMask mask = mask_preset(config.get_string("mask.preset", fallback_preset), norb);
    if (auto s = config.get("mask.same_spin")) mask.same_spin = parse_pairs(*s, norb);
    if (auto s = config.get("mask.opposite_spin")) mask.opposite_spin = parse_pairs(*s, norb);
    return mask;
}

} // namespace lucj::cli
