#pragma once

// Equation families and the hypothesis checkers for the closed-form counts.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ffcount/error.hpp"
#include "ffcount/ff.hpp"
#include "ffcount/integer.hpp"

namespace ffcount {

using Exponents = std::vector<std::uint64_t>;

/// a_1 x_1^{m_1} + ... + a_n x_n^{m_n} = 0
struct DiagonalEquation {
    std::vector<Element> a;
    Exponents m;

    std::size_t size() const noexcept { return a.size(); }
};

/// (a_1 x_1^{m_1} + ... + a_n x_n^{m_n})^k = b x_1^{k_1} ... x_n^{k_n}
struct CarlitzEquation {
    std::vector<Element> a;
    Exponents m;
    std::uint64_t k = 1;
    Element b{1};
    Exponents kv;

    std::size_t size() const noexcept { return a.size(); }
};

struct Term {
    Element coeff;
    Exponents exps;
};

/// f(x) = b x_1^{k_1} ... x_n^{k_n} with f(c^{r_1} x_1, ..., c^{r_n} x_n) = c^r f(x).
struct QuasiHomogeneousEquation {
    std::size_t n = 0;
    std::vector<Term> terms;
    std::uint64_t r = 1;
    Exponents rv;
    Element b{1};
    Exponents kv;

    std::size_t size() const noexcept { return n; }
};

using Equation = std::variant<DiagonalEquation, CarlitzEquation, QuasiHomogeneousEquation>;

inline std::size_t variable_count(const Equation& eq) {
    return std::visit([](const auto& e) { return e.size(); }, eq);
}

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::InvalidEquation, what);
}

inline void require_nonzero_elements(const Field& f, const std::vector<Element>& v, const char* name) {
    for (auto x : v) {
        require(f.contains(x), std::string(name) + " coefficient outside the field");
        require(!x.is_zero(), std::string(name) + " coefficients must be nonzero");
    }
}

inline void require_positive(const Exponents& v, std::size_t n, const char* name) {
    require(v.size() == n, std::string(name) + " must have one entry per variable");
    for (auto e : v) require(e >= 1, std::string(name) + " entries must be positive");
}

}  // namespace detail

inline void validate(const Field& f, const DiagonalEquation& eq) {
    detail::require(eq.size() >= 2, "need at least two variables");
    detail::require_nonzero_elements(f, eq.a, "a");
    detail::require_positive(eq.m, eq.size(), "m");
}

inline void validate(const Field& f, const CarlitzEquation& eq) {
    detail::require(eq.size() >= 2, "need at least two variables");
    detail::require_nonzero_elements(f, eq.a, "a");
    detail::require_nonzero_elements(f, {eq.b}, "b");
    detail::require_positive(eq.m, eq.size(), "m");
    detail::require_positive(eq.kv, eq.size(), "kv");
    detail::require(eq.k >= 1, "k must be positive");
}

inline void validate(const Field& f, const QuasiHomogeneousEquation& eq) {
    detail::require(eq.n >= 2, "need at least two variables");
    detail::require(!eq.terms.empty(), "f needs at least one term");
    detail::require_nonzero_elements(f, {eq.b}, "b");
    detail::require_positive(eq.rv, eq.n, "rv");
    detail::require_positive(eq.kv, eq.n, "kv");
    detail::require(eq.r >= 1, "r must be positive");
    for (std::size_t i = 0; i < eq.terms.size(); ++i) {
        const auto& term = eq.terms[i];
        detail::require_nonzero_elements(f, {term.coeff}, "term");
        detail::require(term.exps.size() == eq.n, "term exponent vector must have n entries");
        for (std::size_t j = 0; j < i; ++j) {
            detail::require(eq.terms[j].exps != term.exps, "term exponent vectors must be distinct");
        }
    }
}

inline void validate(const Field& f, const Equation& eq) {
    std::visit([&](const auto& e) { validate(f, e); }, eq);
}

struct DerivedQuantities {
    Exponents d;     // d_j = gcd(m_j, q-1)
    Integer M;       // lcm of m_j
    std::uint64_t D;  // lcm of d_j
};

inline DerivedQuantities reduce_exponents(const Field& f, const Exponents& m) {
    const std::uint64_t group = f.order() - 1;
    DerivedQuantities out;
    out.d.reserve(m.size());
    for (auto mj : m) out.d.push_back(std::gcd(mj, group));
    out.M = lcm_of(m);
    out.D = lcm_of(out.d).convert_to<std::uint64_t>();
    return out;
}

inline DerivedQuantities reduce_exponents(const Field& f, const DiagonalEquation& eq) { return reduce_exponents(f, eq.m); }
inline DerivedQuantities reduce_exponents(const Field& f, const CarlitzEquation& eq) { return reduce_exponents(f, eq.m); }

/// Smallest j with gcd(d_j, prod(d) / d_j) = 1.
inline std::optional<std::size_t> thm1_applicable(const Exponents& d) {
    for (std::size_t j = 0; j < d.size(); ++j) {
        Integer rest = 1;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i != j) rest *= d[i];
        }
        if (abs_gcd(Integer(d[j]), rest) == 1) return j;
    }
    return std::nullopt;
}

inline bool pairwise_coprime(const Exponents& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (std::gcd(d[i], d[j]) != 1) return false;
        }
    }
    return true;
}

/// e = sum_j k_j M / m_j - k M over the integers.
inline Integer carlitz_exponent(const CarlitzEquation& eq) {
    const Integer M = lcm_of(eq.m);
    Integer e = -Integer(eq.k) * M;
    for (std::size_t j = 0; j < eq.size(); ++j) e += Integer(eq.kv[j]) * (M / eq.m[j]);
    return e;
}

inline bool carlitz_gcd_condition(const CarlitzEquation& eq, const Field& f) {
    return gcd_with(carlitz_exponent(eq), f.order() - 1) == 1;
}

/// Product-form condition: gcd(sum_j k_j P / m_j - k P, q - 1) = 1 with P = prod m_j.
inline bool pzc_condition(const CarlitzEquation& eq, const Field& f) {
    const Integer P = product_of(eq.m);
    Integer e = -Integer(eq.k) * P;
    for (std::size_t j = 0; j < eq.size(); ++j) e += Integer(eq.kv[j]) * (P / eq.m[j]);
    return gcd_with(e, f.order() - 1) == 1;
}

/// The product-form condition against its split into the lcm-form
/// condition and pairwise coprimality of the reduced exponents. Always true.
inline bool conditions_equivalence(const CarlitzEquation& eq, const Field& f) {
    const auto derived = reduce_exponents(f, eq);
    return pzc_condition(eq, f) == (carlitz_gcd_condition(eq, f) && pairwise_coprime(derived.d));
}

struct Thm4Split {
    std::size_t t = 0;                     // number of odd d_j
    std::vector<std::size_t> permutation;  // odd d's first, stable
};

inline std::optional<Thm4Split> thm4_split(const Exponents& d) {
    Thm4Split out;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] % 2 == 1) out.permutation.push_back(j);
    }
    out.t = out.permutation.size();
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] % 2 == 0) out.permutation.push_back(j);
    }
    Exponents halved;
    halved.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto v = d[out.permutation[i]];
        halved.push_back(i < out.t ? v : v / 2);
    }
    if (!pairwise_coprime(halved)) return std::nullopt;
    return out;
}

template <typename T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& permutation) {
    std::vector<T> out;
    out.reserve(permutation.size());
    for (auto i : permutation) out.push_back(v[i]);
    return out;
}

/// Only defined for the shape a_j = 1, k_j = 1; false otherwise.
inline bool baoulina_condition(const CarlitzEquation& eq, const Field& f) {
    for (std::size_t j = 0; j < eq.size(); ++j) {
        if (eq.a[j] != f.one() || eq.kv[j] != 1) return false;
    }
    const auto derived = reduce_exponents(f, eq);
    const std::uint64_t cofactor = (f.order() - 1) / derived.D;
    return gcd_with(carlitz_exponent(eq), cofactor) == 1 && pairwise_coprime(derived.d);
}

/// Evaluates f(x) = sum of coeff * prod x_j^{e_j}.
inline Element evaluate_terms(const Field& f, const std::vector<Term>& terms, std::span<const Element> x) {
    Element acc = f.zero();
    for (const auto& term : terms) {
        Element v = term.coeff;
        for (std::size_t j = 0; j < x.size() && !v.is_zero(); ++j) v = f.mul_unchecked(v, f.pow_unchecked(x[j], term.exps[j]));
        acc = f.add_unchecked(acc, v);
    }
    return acc;
}

struct QuasiHomogeneityCheck {
    bool structural = false;  // weighted degrees match r mod q-1 and no constant term
    bool exhaustive = false;  // scaling identity held on every tested (c, x)
    bool complete = false;    // exhaustive covered all c and all x (else a sample)
    bool holds = false;
};

/// Sample size when q^{n+1} is over the work cap.
inline constexpr std::size_t kQuasiHomogeneitySamples = 1000;

/// Checks f(c^{r_1} x_1, ..., c^{r_n} x_n) = c^r f(x) for all c in F_q, both
/// from the term structure and by evaluation. Structural success with a
/// failed evaluation means an arithmetic bug and throws InternalConsistency.
/// Evaluation alone may succeed where the structure does not (distinct
/// exponent vectors can coincide as functions on F_q); then a complete
/// evaluation is accepted.
inline QuasiHomogeneityCheck quasihomogeneity_check(const QuasiHomogeneousEquation& eq, const Field& f,
                                                    std::uint64_t work_cap = 100'000'000) {
    validate(f, eq);
    const std::uint64_t group = f.order() - 1;
    QuasiHomogeneityCheck out;
    out.structural = true;
    for (const auto& term : eq.terms) {
        const bool constant = std::all_of(term.exps.begin(), term.exps.end(), [](auto e) { return e == 0; });
        Integer weighted = 0;
        for (std::size_t j = 0; j < eq.n; ++j) weighted += Integer(eq.rv[j]) * term.exps[j];
        if (constant || mod_u64(weighted - eq.r, group) != 0) out.structural = false;
    }

    const std::uint64_t q = f.order();
    std::uint64_t points = q;
    bool within_cap = true;
    for (std::size_t j = 0; j < eq.n && within_cap; ++j) {
        if (points > work_cap / q) within_cap = false;
        points *= q;
    }

    std::vector<Element> x(eq.n), y(eq.n);
    auto identity_at = [&](Element c) {
        for (std::size_t j = 0; j < eq.n; ++j) y[j] = f.mul_unchecked(f.pow_unchecked(c, eq.rv[j]), x[j]);
        return evaluate_terms(f, eq.terms, y) == f.mul_unchecked(f.pow_unchecked(c, eq.r), evaluate_terms(f, eq.terms, x));
    };

    out.exhaustive = true;
    if (within_cap) {
        out.complete = true;
        std::vector<std::uint32_t> idx(eq.n, 0);
        for (bool more = true; more && out.exhaustive;) {
            for (std::size_t j = 0; j < eq.n; ++j) x[j] = Element{idx[j]};
            for (std::uint32_t c = 0; c < q; ++c) {
                if (!identity_at(Element{c})) {
                    out.exhaustive = false;
                    break;
                }
            }
            more = false;
            for (std::size_t j = 0; j < eq.n; ++j) {
                if (++idx[j] < q) {
                    more = true;
                    break;
                }
                idx[j] = 0;
            }
        }
    } else {
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(q - 1));
        for (std::size_t i = 0; i < kQuasiHomogeneitySamples && out.exhaustive; ++i) {
            for (auto& xj : x) xj = Element{pick(rng)};
            if (!identity_at(Element{pick(rng)})) out.exhaustive = false;
        }
    }

    if (out.structural && !out.exhaustive) {
        fail(ErrorKind::InternalConsistency, "structural quasi-homogeneity not confirmed by evaluation");
    }
    out.holds = out.structural || (out.complete && out.exhaustive);
    return out;
}

/// e = sum_j k_j r_j - r.
inline Integer quasihomog_exponent(const QuasiHomogeneousEquation& eq) {
    Integer e = -Integer(eq.r);
    for (std::size_t j = 0; j < eq.n; ++j) e += Integer(eq.kv[j]) * eq.rv[j];
    return e;
}

inline bool quasihomog_gcd_condition(const QuasiHomogeneousEquation& eq, const Field& f,
                                     std::uint64_t work_cap = 100'000'000) {
    if (!quasihomogeneity_check(eq, f, work_cap).holds) {
        fail(ErrorKind::NotQuasiHomogeneous, "scaling identity fails for the given weights");
    }
    return gcd_with(quasihomog_exponent(eq), f.order() - 1) == 1;
}

}  // namespace ffcount
