/**
 * @file serialize.hpp
 * @brief Text serialization of piecewise closed forms, plus a small
 *        content-addressed disk cache.
 *
 * The format is line-oriented and fully exact: every rational is written
 * as "p/q" (or "p" when the denominator is 1).  A cache file starts with a
 * format version and the content hash of the generating parameters, so a
 * stale file (different generator, different format) is never misread.
 * Deserialized forms carry everything needed for evaluation and proving;
 * the generating numerator is not stored, so derived forms (for example
 * forward differences) should be cached as separate entries.
 */
#ifndef QUNIMODAL_SERIALIZE_HPP
#define QUNIMODAL_SERIALIZE_HPP

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "closed_form.hpp"

namespace qu {

inline constexpr long kSerializeVersion = 1;

namespace ser_detail {

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline Rational parse_rat(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("serialize: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline void write_linform(std::ostream& os, const LinForm& f) {
    os << f.coeff.size();
    for (const auto& c : f.coeff) os << ' ' << rat_str(c);
    os << ' ' << rat_str(f.constant) << '\n';
}

inline LinForm read_linform(std::istream& is) {
    long n;
    is >> n;
    LinForm f(n);
    std::string tok;
    for (long i = 0; i < n; ++i) {
        is >> tok;
        f.coeff[i] = parse_rat(tok);
    }
    is >> tok;
    f.constant = parse_rat(tok);
    return f;
}

inline void write_region(std::ostream& os, const Region& r) {
    os << "region " << r.constraints.size() << '\n';
    for (const auto& c : r.constraints) {
        os << (c.strict ? "gt " : "ge ");
        write_linform(os, c.form);
    }
}

inline Region read_region(std::istream& is) {
    std::string kw;
    long n;
    is >> kw >> n;
    if (kw != "region") throw std::runtime_error("serialize: expected 'region'");
    Region r;
    for (long i = 0; i < n; ++i) {
        is >> kw;
        LinForm f = read_linform(is);
        if (kw == "gt")
            r.add_gt(f);
        else
            r.add_ge(f);
    }
    return r;
}

inline void write_exppoly(std::ostream& os, const ExpPolynomial& e) {
    os << "expr " << e.terms().size() << '\n';
    for (const auto& [w, p] : e.terms()) {
        os << "omega";
        for (long c : w.coeff) os << ' ' << c;
        os << ' ' << w.constant << '\n';
        os << "poly " << p.terms().size() << '\n';
        for (const auto& [exps, cyc] : p.terms()) {
            for (long x : exps) os << x << ' ';
            os << '|';
            for (const auto& c : cyc.coeffs()) os << ' ' << rat_str(c);
            os << '\n';
        }
    }
}

inline ExpPolynomial read_exppoly(std::istream& is, long order, long nvars) {
    std::string kw;
    long nterms;
    is >> kw >> nterms;
    if (kw != "expr") throw std::runtime_error("serialize: expected 'expr'");
    ExpPolynomial e(order, nvars);
    const long phi = euler_phi(order);
    for (long t = 0; t < nterms; ++t) {
        is >> kw;
        if (kw != "omega") throw std::runtime_error("serialize: expected 'omega'");
        OmegaForm w;
        w.coeff.resize(nvars);
        for (long v = 0; v < nvars; ++v) is >> w.coeff[v];
        is >> w.constant;
        long npoly;
        is >> kw >> npoly;
        if (kw != "poly") throw std::runtime_error("serialize: expected 'poly'");
        MPolyCyc p(order, nvars);
        for (long i = 0; i < npoly; ++i) {
            MPolyCyc::Exps exps(nvars);
            for (long v = 0; v < nvars; ++v) is >> exps[v];
            std::string bar;
            is >> bar;
            if (bar != "|") throw std::runtime_error("serialize: expected '|'");
            std::vector<Rational> coeffs(phi);
            std::string tok;
            for (long j = 0; j < phi; ++j) {
                is >> tok;
                coeffs[j] = parse_rat(tok);
            }
            p.add_term(exps, CycNum::from_coeffs(order, std::move(coeffs)));
        }
        e.add_term(w, p);
    }
    return e;
}

}  // namespace ser_detail

/// FNV-1a hash of a descriptor string, printed as fixed-width hex; used to
/// bind a cache file to the parameters that generated it.
inline std::string content_hash(const std::string& descriptor) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : descriptor) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

/// Serialize a piecewise closed form (without its generating numerator).
inline void write_piecewise(std::ostream& os, const PiecewiseClosedForm& pw,
                            const std::string& descriptor) {
    os << "qunimodal-closed-form " << kSerializeVersion << '\n';
    os << "descriptor " << descriptor << '\n';
    os << "hash " << content_hash(descriptor) << '\n';
    os << "order " << pw.order << " nvars " << pw.nvars << " k0 " << pw.k0 << " difference "
       << (pw.is_difference ? 1 : 0) << '\n';
    ser_detail::write_region(os, pw.domain);
    os << "pieces " << pw.pieces.size() << '\n';
    for (const auto& piece : pw.pieces) {
        ser_detail::write_region(os, piece.region);
        ser_detail::write_exppoly(os, piece.expr);
        os << "valid_low " << piece.valid_low.size() << '\n';
        for (const auto& f : piece.valid_low) ser_detail::write_linform(os, f);
        os << "valid_high " << piece.valid_high.size() << '\n';
        for (const auto& f : piece.valid_high) ser_detail::write_linform(os, f);
    }
}

/// Parse a serialized closed form.  Throws on malformed input; returns
/// nullopt when the stored hash does not match the expected descriptor
/// (a stale or foreign cache file).
inline std::optional<PiecewiseClosedForm> read_piecewise(std::istream& is,
                                                         const std::string& descriptor) {
    std::string kw;
    long version;
    is >> kw >> version;
    if (kw != "qunimodal-closed-form" || version != kSerializeVersion) return std::nullopt;
    std::string stored_desc, stored_hash;
    is >> kw;
    std::getline(is, stored_desc);
    if (kw != "descriptor") return std::nullopt;
    is >> kw >> stored_hash;
    if (kw != "hash" || stored_hash != content_hash(descriptor)) return std::nullopt;
    PiecewiseClosedForm pw;
    long diff;
    is >> kw >> pw.order >> kw >> pw.nvars >> kw >> pw.k0 >> kw >> diff;
    pw.is_difference = diff != 0;
    pw.domain = ser_detail::read_region(is);
    long npieces;
    is >> kw >> npieces;
    if (kw != "pieces") throw std::runtime_error("serialize: expected 'pieces'");
    for (long i = 0; i < npieces; ++i) {
        Piece piece;
        piece.region = ser_detail::read_region(is);
        piece.expr = ser_detail::read_exppoly(is, pw.order, pw.nvars);
        long n;
        is >> kw >> n;
        for (long j = 0; j < n; ++j) piece.valid_low.push_back(ser_detail::read_linform(is));
        is >> kw >> n;
        for (long j = 0; j < n; ++j) piece.valid_high.push_back(ser_detail::read_linform(is));
        pw.pieces.push_back(std::move(piece));
    }
    if (!is) throw std::runtime_error("serialize: truncated input");
    return pw;
}

/// Directory used by the disk cache; overridable via QUNIMODAL_CACHE_DIR.
inline std::filesystem::path cache_dir() {
    if (const char* env = std::getenv("QUNIMODAL_CACHE_DIR")) return env;
    return std::filesystem::path(".qunimodal-cache");
}

inline std::filesystem::path cache_path(const std::string& descriptor) {
    std::string name;
    for (char c : descriptor) name += (std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return cache_dir() / (name + "-" + content_hash(descriptor) + ".txt");
}

/// Load the closed form for `descriptor` from the cache, or build it with
/// `build` and store the result.  Unreadable or mismatched files are
/// rebuilt, never trusted.
inline PiecewiseClosedForm cached_piecewise(const std::string& descriptor,
                                            const std::function<PiecewiseClosedForm()>& build) {
    auto path = cache_path(descriptor);
    {
        std::ifstream in(path);
        if (in) {
            try {
                auto pw = read_piecewise(in, descriptor);
                if (pw) return *pw;
            } catch (const std::exception&) {
                // fall through to rebuild
            }
        }
    }
    PiecewiseClosedForm pw = build();
    std::error_code ec;
    std::filesystem::create_directories(cache_dir(), ec);
    std::ofstream out(path);
    if (out) write_piecewise(out, pw, descriptor);
    return pw;
}

}  // namespace qu

#endif
