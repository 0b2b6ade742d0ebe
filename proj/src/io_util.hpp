// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Token-level helpers shared by the flat text formats.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "lucj/common.hpp"

namespace lucj::io {

inline std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view token, std::string_view what)
{
    double v = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ParseError(std::string("invalid number in ") + std::string(what) + ": '" +
                         std::string(token) + "'");
    }
    return v;
}

/// Pulls whitespace-separated tokens from a stream and parses them.
class TokenReader {
public:
    TokenReader(std::istream &in, std::string what) : in_(in), what_(std::move(what)) {}

    std::string word()
    {
        std::string tok;
        if (!(in_ >> tok)) throw ParseError(what_ + ": unexpected end of input");
        return tok;
    }

    void expect(std::string_view literal)
    {
        const std::string tok = word();
        if (tok != literal) {
            throw ParseError(what_ + ": expected '" + std::string(literal) + "', got '" + tok + "'");
        }
    }

    double finite()
    {
        const double v = parse_double(word(), what_);
        if (!std::isfinite(v)) throw NumericalError(what_ + ": non-finite value");
        return v;
    }

    long long integer()
    {
        const std::string tok = word();
        long long v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
            throw ParseError(what_ + ": invalid integer '" + tok + "'");
        }
        return v;
    }

    void expect_end()
    {
        std::string tok;
        if (in_ >> tok) throw ParseError(what_ + ": trailing data '" + tok + "'");
    }

private:
    std::istream &in_;
    std::string what_;
};

inline std::ifstream open_input(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
    return in;
}

inline std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace lucj::io
