#pragma once

// Text forms of fields and equations:
//   field:   "7", "3^2"
//   diag     a=1,2,3 m=2,3,4
//   carlitz  a=1,1 m=1,2 k=1 b=1 kv=1,1
//   qh       terms=1:2,0;1:0,3 rv=3,2 r=6 b=1 kv=1,1
// Coefficients are element indices in enumeration order.

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffcount/equations.hpp"
#include "ffcount/error.hpp"
#include "ffcount/ff.hpp"

namespace ffcount {

namespace detail {

inline std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    s = strip(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(ErrorKind::Parse, "expected a non-negative integer for " + std::string(what) + ", got '" +
                                   std::string(s) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::uint64_t> parse_list(std::string_view s, std::string_view what) {
    std::vector<std::uint64_t> out;
    for (auto part : split(s, ',')) out.push_back(parse_uint(part, what));
    return out;
}

inline std::string join(const std::vector<std::uint64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

inline std::string join(const std::vector<Element>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i].index());
    }
    return out;
}

class KeyValues {
public:
    KeyValues(std::string_view text, std::string_view family) : family_(family) {
        std::istringstream in{std::string(text)};
        std::string token;
        in >> token;  // family word
        while (in >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0) fail(ErrorKind::Parse, "expected key=value, got '" + token + "'");
            auto key = token.substr(0, eq);
            if (values_.count(key)) fail(ErrorKind::Parse, "duplicate key '" + key + "'");
            values_.emplace(std::move(key), token.substr(eq + 1));
        }
    }

    std::string take(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) fail(ErrorKind::Parse, std::string(family_) + " equation needs " + key + "=");
        auto v = it->second;
        values_.erase(it);
        return v;
    }

    void finish() const {
        if (!values_.empty()) fail(ErrorKind::Parse, "unknown key '" + values_.begin()->first + "'");
    }

private:
    std::string_view family_;
    std::map<std::string, std::string> values_;
};

inline std::vector<Element> parse_elements(const Field& f, std::string_view s, std::string_view what) {
    std::vector<Element> out;
    for (auto v : parse_list(s, what)) {
        if (v >= f.order()) {
            fail(ErrorKind::Parse, std::string(what) + " index " + std::to_string(v) + " outside GF(" + f.notation() + ")");
        }
        out.emplace_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

}  // namespace detail

/// "p" or "p^s" to (p, s).
inline std::pair<std::uint64_t, std::uint64_t> parse_field_notation(std::string_view text) {
    text = detail::strip(text);
    const auto caret = text.find('^');
    if (caret == std::string_view::npos) return {detail::parse_uint(text, "field"), 1};
    return {detail::parse_uint(text.substr(0, caret), "field characteristic"),
            detail::parse_uint(text.substr(caret + 1), "field degree")};
}

inline Field parse_field(std::string_view text, FieldLimits limits = {}) {
    const auto [p, s] = parse_field_notation(text);
    return make_field(p, s, limits);
}

/// A field given by its order q = p^s, or in "p^s" form.
inline Field parse_field_order(std::string_view text, FieldLimits limits = {}) {
    if (text.find('^') != std::string_view::npos) return parse_field(text, limits);
    const std::uint64_t q = detail::parse_uint(text, "field order");
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q < 2 || q % p != 0) p = q;
    std::uint64_t s = 0;
    for (std::uint64_t r = q; r > 1; r /= p, ++s) {
        if (r % p != 0) fail(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
    }
    return make_field(p, std::max<std::uint64_t>(s, 1), limits);
}

inline Equation parse_equation(std::string_view text, const Field& f) {
    const auto trimmed = detail::strip(text);
    const auto family = trimmed.substr(0, trimmed.find(' '));
    Equation out;
    if (family == "diag") {
        detail::KeyValues kv(trimmed, family);
        DiagonalEquation eq;
        eq.a = detail::parse_elements(f, kv.take("a"), "a");
        eq.m = detail::parse_list(kv.take("m"), "m");
        kv.finish();
        out = std::move(eq);
    } else if (family == "carlitz") {
        detail::KeyValues kv(trimmed, family);
        CarlitzEquation eq;
        eq.a = detail::parse_elements(f, kv.take("a"), "a");
        eq.m = detail::parse_list(kv.take("m"), "m");
        eq.k = detail::parse_uint(kv.take("k"), "k");
        eq.b = detail::parse_elements(f, kv.take("b"), "b").at(0);
        eq.kv = detail::parse_list(kv.take("kv"), "kv");
        kv.finish();
        out = std::move(eq);
    } else if (family == "qh") {
        detail::KeyValues kv(trimmed, family);
        QuasiHomogeneousEquation eq;
        const std::string terms = kv.take("terms");
        for (auto term_text : detail::split(terms, ';')) {
            const auto colon = term_text.find(':');
            if (colon == std::string_view::npos) fail(ErrorKind::Parse, "term needs coeffIndex:e1,...,en");
            Term term;
            term.coeff = detail::parse_elements(f, term_text.substr(0, colon), "term coefficient").at(0);
            term.exps = detail::parse_list(term_text.substr(colon + 1), "term exponents");
            eq.terms.push_back(std::move(term));
        }
        eq.n = eq.terms.front().exps.size();
        eq.rv = detail::parse_list(kv.take("rv"), "rv");
        eq.r = detail::parse_uint(kv.take("r"), "r");
        eq.b = detail::parse_elements(f, kv.take("b"), "b").at(0);
        eq.kv = detail::parse_list(kv.take("kv"), "kv");
        kv.finish();
        out = std::move(eq);
    } else {
        fail(ErrorKind::Parse, "unknown equation family '" + std::string(family) + "' (diag, carlitz, qh)");
    }
    validate(f, out);
    return out;
}

inline std::string to_text(const DiagonalEquation& eq) {
    return "diag a=" + detail::join(eq.a) + " m=" + detail::join(eq.m);
}

inline std::string to_text(const CarlitzEquation& eq) {
    return "carlitz a=" + detail::join(eq.a) + " m=" + detail::join(eq.m) + " k=" + std::to_string(eq.k) +
           " b=" + std::to_string(eq.b.index()) + " kv=" + detail::join(eq.kv);
}

inline std::string to_text(const QuasiHomogeneousEquation& eq) {
    std::string terms;
    for (std::size_t i = 0; i < eq.terms.size(); ++i) {
        if (i) terms += ";";
        terms += std::to_string(eq.terms[i].coeff.index()) + ":" + detail::join(eq.terms[i].exps);
    }
    return "qh terms=" + terms + " rv=" + detail::join(eq.rv) + " r=" + std::to_string(eq.r) +
           " b=" + std::to_string(eq.b.index()) + " kv=" + detail::join(eq.kv);
}

inline std::string to_text(const Equation& eq) {
    return std::visit([](const auto& e) { return to_text(e); }, eq);
}

}  // namespace ffcount
