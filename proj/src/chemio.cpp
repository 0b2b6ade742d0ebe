// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/chemio.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "io_util.hpp"

namespace lucj {

Hamiltonian::Hamiltonian(int norb_, int n_alpha_, int n_beta_)
    : norb(norb_), h1(MatrixXd::Zero(norb_, norb_)),
      h2(static_cast<std::size_t>(norb_) * norb_ * norb_ * norb_, 0.0), n_alpha(n_alpha_),
      n_beta(n_beta_)
{
}

void Hamiltonian::set_eri_symmetric(int p, int q, int r, int s, double v)
{
    eri(p, q, r, s) = v;
    eri(q, p, r, s) = v;
    eri(p, q, s, r) = v;
    eri(q, p, s, r) = v;
    eri(r, s, p, q) = v;
    eri(s, r, p, q) = v;
    eri(r, s, q, p) = v;
    eri(s, r, q, p) = v;
}

void Hamiltonian::validate() const
{
    if (norb < 0 || norb > kMaxOrbitals) throw NumericalError("norb out of range");
    if (h1.rows() != norb || h1.cols() != norb) throw NumericalError("h1 has wrong shape");
    if (h2.size() != static_cast<std::size_t>(norb) * norb * norb * norb) {
        throw NumericalError("h2 has wrong size");
    }
    if (n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb) {
        throw NumericalError("electron counts out of range for norb");
    }
    const double h1_scale = std::max(1.0, h1.cwiseAbs().maxCoeff());
    for (int p = 0; p < norb; ++p)
        for (int q = 0; q < p; ++q)
            if (std::abs(h1(p, q) - h1(q, p)) > 1e-12 * h1_scale) {
                throw NumericalError("h1 is not symmetric");
            }
    double h2_scale = 1.0;
    for (double v : h2) h2_scale = std::max(h2_scale, std::abs(v));
    for (int p = 0; p < norb; ++p)
        for (int q = 0; q < norb; ++q)
            for (int r = 0; r < norb; ++r)
                for (int s = 0; s < norb; ++s) {
                    const double v = eri(p, q, r, s);
                    const std::array<double, 7> others{eri(q, p, r, s), eri(p, q, s, r), eri(q, p, s, r),
                                                       eri(r, s, p, q), eri(s, r, p, q), eri(r, s, q, p),
                                                       eri(s, r, q, p)};
                    for (double o : others)
                        if (std::abs(o - v) > 1e-12 * h2_scale) {
                            throw NumericalError("h2 lacks 8-fold permutation symmetry");
                        }
                }
    if (!std::isfinite(ecore)) throw NumericalError("non-finite core energy");
}

Amplitudes::Amplitudes(int nocc_, int nvir_)
    : nocc(nocc_), nvir(nvir_), t1(MatrixXd::Zero(nocc_, nvir_)), t2(nocc_, nocc_, nvir_, nvir_)
{
}

double t2_exchange_asymmetry(const Tensor4 &t2)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < t2.dim(0); ++i)
        for (std::size_t j = 0; j < t2.dim(1); ++j)
            for (std::size_t a = 0; a < t2.dim(2); ++a)
                for (std::size_t b = 0; b < t2.dim(3); ++b)
                    worst = std::max(worst, std::abs(t2(i, j, a, b) - t2(j, i, b, a)));
    return worst;
}

// ---------------------------------------------------------------------------
// FCIDUMP

namespace {

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::optional<long long> header_int(const std::string &header, const std::string &key)
{
    const std::regex re("(^|[^A-Z0-9_])" + key + "\\s*=\\s*([-+]?[0-9]+)");
    std::smatch m;
    if (!std::regex_search(header, m, re)) return std::nullopt;
    return std::stoll(m[2].str());
}

bool closes_namelist(const std::string &line)
{
    const std::string u = upper(line);
    if (u.find("&END") != std::string::npos) return true;
    auto last = u.find_last_not_of(" \t\r");
    return last != std::string::npos && u[last] == '/';
}

using IntegralKey = std::array<int, 4>;

IntegralKey canonical_eri(int p, int q, int r, int s)
{
    std::array<IntegralKey, 8> perms{{{p, q, r, s},
                                      {q, p, r, s},
                                      {p, q, s, r},
                                      {q, p, s, r},
                                      {r, s, p, q},
                                      {s, r, p, q},
                                      {r, s, q, p},
                                      {s, r, q, p}}};
    return *std::min_element(perms.begin(), perms.end());
}

} // namespace

Hamiltonian parse_fcidump(std::istream &in)
{
    std::string line;
    std::string header;
    bool started = false;
    bool closed = false;
    while (std::getline(in, line)) {
        if (!started) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (upper(line).find("&FCI") == std::string::npos) {
                throw ParseError("FCIDUMP: header must start with &FCI");
            }
            started = true;
        }
        header += line;
        header += ' ';
        if (closes_namelist(line)) {
            closed = true;
            break;
        }
    }
    if (!closed) throw ParseError("FCIDUMP: unterminated namelist header");
    header = upper(header);
    std::replace(header.begin(), header.end(), ',', ' ');
    const auto norb = header_int(header, "NORB");
    const auto nelec = header_int(header, "NELEC");
    const auto ms2 = header_int(header, "MS2").value_or(0);
    if (!norb || !nelec) throw ParseError("FCIDUMP: header lacks NORB or NELEC");
    if (*norb < 0 || *norb > kMaxOrbitals) throw ParseError("FCIDUMP: NORB out of range");
    if (*nelec < 0 || ((*nelec + ms2) % 2) != 0 || std::abs(ms2) > *nelec) {
        throw ParseError("FCIDUMP: inconsistent NELEC/MS2");
    }
    const int n = static_cast<int>(*norb);
    Hamiltonian h(n, static_cast<int>((*nelec + ms2) / 2), static_cast<int>((*nelec - ms2) / 2));
    if (h.n_alpha > n || h.n_beta > n) throw ParseError("FCIDUMP: more electrons than orbitals");

    std::map<IntegralKey, double> entries;
    auto record = [&](const IntegralKey &key, double v) {
        auto [it, inserted] = entries.emplace(key, v);
        if (!inserted) {
            if (std::abs(it->second - v) > 1e-10) {
                throw ParseError("FCIDUMP: conflicting duplicate entries");
            }
            it->second = std::min(it->second, v); // order independent
        }
    };

    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (toks.size() != 5) {
            throw ParseError("FCIDUMP: integral line " + std::to_string(lineno) + " needs 5 fields");
        }
        std::string value = toks[0];
        std::replace_if(value.begin(), value.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
        if (!value.empty() && value.front() == '+') value.erase(0, 1);
        const double v = io::parse_double(value, "FCIDUMP");
        if (!std::isfinite(v)) throw ParseError("FCIDUMP: non-finite integral");
        std::array<int, 4> idx{};
        for (int k = 0; k < 4; ++k) {
            const std::string &t = toks[k + 1];
            auto res = std::from_chars(t.data(), t.data() + t.size(), idx[k]);
            if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
                throw ParseError("FCIDUMP: invalid orbital index '" + t + "'");
            }
            if (idx[k] < 0 || idx[k] > n) throw ParseError("FCIDUMP: orbital index out of range");
        }
        const auto [p, q, r, s] = idx;
        if (p == 0 && q == 0 && r == 0 && s == 0) {
            record({-1, -1, -1, -1}, v);
        } else if (r == 0 && s == 0 && p > 0 && q > 0) {
            record({-1, -1, std::min(p, q) - 1, std::max(p, q) - 1}, v);
        } else if (q == 0 && r == 0 && s == 0) {
            continue; // orbital energy
        } else if (p > 0 && q > 0 && r > 0 && s > 0) {
            record(canonical_eri(p - 1, q - 1, r - 1, s - 1), v);
        } else {
            throw ParseError("FCIDUMP: unrecognised index pattern on line " + std::to_string(lineno));
        }
    }

    for (const auto &[key, v] : entries) {
        if (key[0] == -1 && key[2] == -1) {
            h.ecore = v;
        } else if (key[0] == -1) {
            h.h1(key[2], key[3]) = v;
            h.h1(key[3], key[2]) = v;
        } else {
            h.set_eri_symmetric(key[0], key[1], key[2], key[3], v);
        }
    }
    return h;
}

Hamiltonian read_fcidump(const std::filesystem::path &path)
{
    auto in = io::open_input(path);
    return parse_fcidump(in);
}

void write_fcidump(const Hamiltonian &h, std::ostream &out, double threshold)
{
    out << "&FCI NORB=" << h.norb << ",NELEC=" << (h.n_alpha + h.n_beta)
        << ",MS2=" << (h.n_alpha - h.n_beta) << ",\n ORBSYM=";
    for (int p = 0; p < h.norb; ++p) out << "1,";
    out << "\n ISYM=1,\n&END\n";
    const int n = h.norb;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
                    const double v = h.eri(p, q, r, s);
                    if (v == 0.0 || std::abs(v) < threshold) continue;
                    out << io::format_double(v) << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' '
                        << s + 1 << '\n';
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q) {
            const double v = h.h1(p, q);
            if (v == 0.0 || std::abs(v) < threshold) continue;
            out << io::format_double(v) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
        }
    out << io::format_double(h.ecore) << " 0 0 0 0\n";
}

void write_fcidump(const Hamiltonian &h, const std::filesystem::path &path, double threshold)
{
    auto out = io::open_output(path);
    write_fcidump(h, out, threshold);
}

// ---------------------------------------------------------------------------
// Amplitudes

Amplitudes parse_amplitudes(std::istream &in)
{
    io::TokenReader tr(in, "amplitude file");
    tr.expect("AMP");
    tr.expect("v1");
    const long long nocc = tr.integer();
    const long long nvir = tr.integer();
    if (nocc < 0 || nvir < 0 || nocc + nvir > kMaxOrbitals) {
        throw ParseError("amplitude file: invalid shape");
    }
    Amplitudes amps(static_cast<int>(nocc), static_cast<int>(nvir));
    for (int i = 0; i < amps.nocc; ++i)
        for (int a = 0; a < amps.nvir; ++a) amps.t1(i, a) = tr.finite();
    for (double &v : amps.t2.data()) v = tr.finite();
    tr.expect_end();
    const double scale = std::max(1.0, amps.t2.frobenius_norm());
    if (t2_exchange_asymmetry(amps.t2) > 1e-12 * scale) {
        throw NumericalError("amplitude file: t2 violates t_ijab = t_jiba");
    }
    return amps;
}

void format_amplitudes(const Amplitudes &amps, std::ostream &out)
{
    out << "AMP v1 " << amps.nocc << ' ' << amps.nvir << '\n';
    auto row = [&out](auto begin, auto end) {
        for (auto it = begin; it != end; ++it) {
            if (it != begin) out << ' ';
            out << io::format_double(*it);
        }
        out << '\n';
    };
    for (int i = 0; i < amps.nocc; ++i) {
        std::vector<double> r(amps.t1.row(i).begin(), amps.t1.row(i).end());
        row(r.begin(), r.end());
    }
    const auto data = amps.t2.data();
    const auto nvir = static_cast<std::size_t>(amps.nvir);
    if (nvir == 0) return;
    for (std::size_t k = 0; k < data.size(); k += nvir) row(data.begin() + k, data.begin() + k + nvir);
}

Amplitudes read_amplitudes(const std::filesystem::path &path)
{
    auto in = io::open_input(path);
    return parse_amplitudes(in);
}

void write_amplitudes(const Amplitudes &amps, const std::filesystem::path &path)
{
    auto out = io::open_output(path);
    format_amplitudes(amps, out);
}

// ---------------------------------------------------------------------------
// Bitstrings

SampleSet parse_bitstrings(std::istream &in, int norb)
{
    SampleSet samples;
    samples.norb = norb;
    std::string line;
    long lineno = 0;
    std::size_t width = norb > 0 ? 2 * static_cast<std::size_t>(norb) : 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string_view bits(line.data() + first, last - first + 1);
        if (width == 0) {
            if (bits.size() % 2 != 0 || bits.size() / 2 > kMaxOrbitals) {
                throw ParseError("bitstring file: line length must be 2·norb");
            }
            width = bits.size();
            samples.norb = static_cast<int>(width / 2);
        }
        if (bits.size() != width) {
            throw ParseError("bitstring file: inconsistent length on line " + std::to_string(lineno));
        }
        const int n = samples.norb;
        Configuration c;
        for (int k = 0; k < n; ++k) {
            const char b = bits[n - 1 - k];
            const char a = bits[2 * n - 1 - k];
            if ((a != '0' && a != '1') || (b != '0' && b != '1')) {
                throw ParseError("bitstring file: invalid character on line " + std::to_string(lineno));
            }
            if (a == '1') c.alpha |= Bitmask{1} << k;
            if (b == '1') c.beta |= Bitmask{1} << k;
        }
        samples.draws.push_back(c);
    }
    return samples;
}

SampleSet read_bitstrings(const std::filesystem::path &path, int norb)
{
    auto in = io::open_input(path);
    return parse_bitstrings(in, norb);
}

std::string format_bitstring(const Configuration &c, int norb)
{
    std::string s(2 * static_cast<std::size_t>(norb), '0');
    for (int k = 0; k < norb; ++k) {
        if (occupied(c.beta, k)) s[norb - 1 - k] = '1';
        if (occupied(c.alpha, k)) s[2 * norb - 1 - k] = '1';
    }
    return s;
}

void write_bitstrings(const SampleSet &samples, std::ostream &out)
{
    for (const auto &c : samples.draws) out << format_bitstring(c, samples.norb) << '\n';
}

void write_bitstrings(const SampleSet &samples, const std::filesystem::path &path)
{
    auto out = io::open_output(path);
    write_bitstrings(samples, out);
}

} // namespace lucj
