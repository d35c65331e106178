#pragma once

// Exact arithmetic in GF(p) and GF(p^s).
//
// Elements are stored as their index in the canonical enumeration order:
// the coefficient vector (c0, ..., c_{s-1}) over GF(p) maps to the integer
// c0 + c1*p + ... + c_{s-1}*p^{s-1}, so zero is index 0 and one is index 1.
// Multiplication goes through exp/log tables built from the first generator
// in enumeration order; addition in extension fields uses Zech logarithms.

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffcount/error.hpp"

namespace ffcount {

struct FieldLimits {
    /// Largest q accepted by make_field.
    std::uint64_t max_order = std::uint64_t{1} << 20U;
};

class Element {
public:
    constexpr Element() = default;
    constexpr explicit Element(std::uint32_t index) : index_(index) {}

    constexpr std::uint32_t index() const noexcept { return index_; }
    constexpr bool is_zero() const noexcept { return index_ == 0; }

    friend constexpr auto operator<=>(const Element&, const Element&) = default;

private:
    std::uint32_t index_ = 0;
};

enum class CharValue : int { Negative = -1, Zero = 0, Positive = 1 };

constexpr int to_int(CharValue v) noexcept { return static_cast<int>(v); }

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

using Poly = std::vector<std::uint32_t>;  // low-to-high coefficients mod p

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0: a^(p-2)
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint64_t e = p - 2;
    while (e != 0) {
        if (e & 1U) result = result * base % p;
        base = base * base % p;
        e >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo a non-zero b over GF(p).
inline Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const std::uint64_t factor = a.back() * lead_inv % p;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t k = 1; 2 * k <= deg; ++k) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < k; ++i) count *= p;
        Poly divisor(k + 1, 0);
        divisor[k] = 1;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < k; ++i) {
                divisor[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (poly_rem(f, divisor, p).empty()) return false;
        }
    }
    return true;
}

/// Monic irreducible of degree s whose lower coefficients come first in
/// element enumeration order.
inline Poly smallest_irreducible(std::uint32_t p, unsigned s, std::uint64_t q) {
    Poly f(s + 1, 0);
    f[s] = 1;
    if (s == 1) {
        f[0] = 0;  // x
        return f;
    }
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        std::uint64_t v = idx;
        for (unsigned i = 0; i < s; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (f[0] == 0) continue;  // divisible by x
        if (is_irreducible(f, p)) return f;
    }
    fail(ErrorKind::InternalConsistency, "no irreducible polynomial found");
}

struct Tables {
    std::uint32_t p = 0;
    unsigned s = 0;
    std::uint32_t q = 0;
    Poly modulus;
    std::vector<std::uint64_t> group_factors;  // distinct primes of q-1
    std::uint32_t generator = 1;
    std::vector<std::uint32_t> exp;   // 2(q-1) entries, exp[i] = g^i
    std::vector<std::uint32_t> log;   // q entries, log[0] unused
    std::vector<std::uint32_t> zech;  // q-1 entries, log(1 + g^k) or kNoLog
    static constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();
};

/// Multiplication on element indices without tables; only used while the
/// tables are being built.
class SlowArithmetic {
public:
    explicit SlowArithmetic(const Tables& t) : t_(t) {}

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (t_.s == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % t_.p);
        if (t_.p == 2) return mul_binary(a, b);
        return mul_general(a, b);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t result = 1;
        while (e != 0) {
            if (e & 1U) result = mul(result, a);
            e >>= 1U;
            if (e != 0) a = mul(a, a);
        }
        return result;
    }

private:
    std::uint32_t mul_binary(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t mod_bits = 0;
        for (unsigned i = 0; i <= t_.s; ++i) mod_bits |= std::uint64_t{t_.modulus[i]} << i;
        std::uint64_t acc = 0;
        std::uint64_t x = a;
        for (unsigned i = 0; i < t_.s; ++i) {
            if ((b >> i) & 1U) acc ^= x;
            x <<= 1U;
            if ((x >> t_.s) & 1U) x ^= mod_bits;
        }
        return static_cast<std::uint32_t>(acc);
    }

    std::uint32_t mul_general(std::uint32_t a, std::uint32_t b) const {
        const unsigned s = t_.s;
        const std::uint32_t p = t_.p;
        std::vector<std::uint64_t> ca(s), cb(s), prod(2 * s - 1, 0);
        for (unsigned i = 0; i < s; ++i) {
            ca[i] = a % p;
            a /= p;
            cb[i] = b % p;
            b /= p;
        }
        for (unsigned i = 0; i < s; ++i) {
            if (ca[i] == 0) continue;
            for (unsigned j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        }
        // modulus is monic: x^s = -(m0 + ... + m_{s-1} x^{s-1})
        for (std::size_t deg = prod.size() - 1; deg >= s; --deg) {
            const std::uint64_t c = prod[deg];
            if (c == 0) continue;
            prod[deg] = 0;
            for (unsigned i = 0; i < s; ++i) {
                prod[deg - s + i] = (prod[deg - s + i] + (p - c) * t_.modulus[i]) % p;
            }
        }
        std::uint32_t out = 0;
        for (unsigned i = s; i-- > 0;) out = out * p + static_cast<std::uint32_t>(prod[i]);
        return out;
    }

    const Tables& t_;
};

}  // namespace detail

class Field {
public:
    std::uint32_t characteristic() const noexcept { return t_->p; }
    unsigned degree() const noexcept { return t_->s; }
    std::uint32_t order() const noexcept { return t_->q; }
    /// Monic modulus, low-to-high, s + 1 coefficients.
    const std::vector<std::uint32_t>& modulus() const noexcept { return t_->modulus; }

    /// "p" or "p^s".
    std::string notation() const {
        std::string out = std::to_string(t_->p);
        if (t_->s > 1) out += "^" + std::to_string(t_->s);
        return out;
    }

    Element zero() const noexcept { return Element{0}; }
    Element one() const noexcept { return Element{1}; }

    bool contains(Element a) const noexcept { return a.index() < t_->q; }

    Element element(std::uint64_t index) const {
        if (index >= t_->q) {
            fail(ErrorKind::MalformedElement,
                 "index " + std::to_string(index) + " outside GF(" + notation() + ")");
        }
        return Element{static_cast<std::uint32_t>(index)};
    }

    Element from_coeffs(std::span<const std::uint32_t> coeffs) const {
        if (coeffs.size() != t_->s) fail(ErrorKind::MalformedElement, "coefficient vector has wrong length");
        std::uint32_t idx = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] >= t_->p) fail(ErrorKind::MalformedElement, "coefficient out of range");
            idx = idx * t_->p + coeffs[i];
        }
        return Element{idx};
    }

    std::vector<std::uint32_t> coeffs(Element a) const {
        check(a);
        std::vector<std::uint32_t> out(t_->s);
        std::uint32_t v = a.index();
        for (auto& c : out) {
            c = v % t_->p;
            v /= t_->p;
        }
        return out;
    }

    /// All q elements in enumeration order; zero first.
    std::vector<Element> elements() const {
        std::vector<Element> out;
        out.reserve(t_->q);
        for (std::uint32_t i = 0; i < t_->q; ++i) out.emplace_back(i);
        return out;
    }

    Element add(Element a, Element b) const {
        check(a);
        check(b);
        return add_unchecked(a, b);
    }

    Element neg(Element a) const {
        check(a);
        return neg_unchecked(a);
    }

    Element sub(Element a, Element b) const {
        check(a);
        check(b);
        return add_unchecked(a, neg_unchecked(b));
    }

    Element mul(Element a, Element b) const {
        check(a);
        check(b);
        return mul_unchecked(a, b);
    }

    Element inv(Element a) const {
        check(a);
        if (a.is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
        const std::uint32_t l = t_->log[a.index()];
        return Element{t_->exp[(group_order() - l) % group_order()]};
    }

    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    /// Repeated-multiplication semantics with pow(x, 0) = 1 for every x.
    template <std::integral I>
    Element pow(Element a, I e) const {
        check(a);
        if constexpr (std::is_signed_v<I>) {
            if (e < 0) fail(ErrorKind::NegativeExponent, "exponent " + std::to_string(e));
        }
        return pow_unchecked(a, static_cast<std::uint64_t>(e));
    }

    Element generator() const noexcept { return Element{t_->generator}; }

    bool is_generator(Element g) const {
        check(g);
        if (g.is_zero()) return false;
        for (auto l : t_->group_factors) {
            if (pow_unchecked(g, group_order() / l) == one()) return false;
        }
        return true;
    }

    /// Logarithm to the base generator(); x must be nonzero.
    std::uint32_t log(Element x) const {
        check(x);
        if (x.is_zero()) fail(ErrorKind::ZeroArgument, "log of zero");
        return t_->log[x.index()];
    }

    Element exp(std::uint64_t e) const { return Element{t_->exp[e % group_order()]}; }

    /// Unique t in [0, q-2] with g^t = x, by linear scan.
    std::uint64_t discrete_log(Element g, Element x) const {
        check(g);
        check(x);
        if (x.is_zero()) fail(ErrorKind::ZeroArgument, "discrete log of zero");
        if (!is_generator(g)) fail(ErrorKind::NotAGenerator, "element " + std::to_string(g.index()));
        Element y = one();
        for (std::uint64_t t = 0; t < group_order(); ++t) {
            if (y == x) return t;
            y = mul_unchecked(y, g);
        }
        fail(ErrorKind::NotAGenerator, "scan exhausted");
    }

    CharValue quadratic_character(Element x) const {
        check(x);
        if (t_->q % 2 == 0) fail(ErrorKind::EvenCharacteristicUndefined, "GF(" + notation() + ")");
        if (x.is_zero()) return CharValue::Zero;
        return pow_unchecked(x, group_order() / 2) == one() ? CharValue::Positive : CharValue::Negative;
    }

    /// Decimal residue for prime fields, "c0+c1*a+c2*a^2" otherwise.
    std::string to_string(Element x) const {
        if (t_->s == 1) return std::to_string(x.index());
        const auto c = coeffs(x);
        std::string out;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += "+";
            if (i == 0) {
                out += std::to_string(c[i]);
                continue;
            }
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += "a";
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    // Unchecked fast paths for inner loops; callers guarantee membership.

    Element add_unchecked(Element a, Element b) const noexcept {
        if (t_->s == 1) {
            std::uint32_t r = a.index() + b.index();
            if (r >= t_->p) r -= t_->p;
            return Element{r};
        }
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const std::uint32_t la = t_->log[a.index()];
        const std::uint32_t lb = t_->log[b.index()];
        const std::uint32_t n = group_order();
        const std::uint32_t k = lb >= la ? lb - la : lb + n - la;
        const std::uint32_t z = t_->zech[k];
        if (z == detail::Tables::kNoLog) return zero();
        return Element{t_->exp[la + z]};
    }

    Element neg_unchecked(Element a) const noexcept {
        if (a.is_zero() || t_->p == 2) return a;
        if (t_->s == 1) return Element{t_->p - a.index()};
        return Element{t_->exp[t_->log[a.index()] + group_order() / 2]};
    }

    Element mul_unchecked(Element a, Element b) const noexcept {
        if (a.is_zero() || b.is_zero()) return zero();
        return Element{t_->exp[t_->log[a.index()] + t_->log[b.index()]]};
    }

    Element pow_unchecked(Element a, std::uint64_t e) const noexcept {
        if (e == 0) return one();
        if (a.is_zero()) return zero();
        const std::uint64_t n = group_order();
        return Element{t_->exp[(std::uint64_t{t_->log[a.index()]} * (e % n)) % n]};
    }

    friend bool operator==(const Field& x, const Field& y) noexcept {
        return x.t_->p == y.t_->p && x.t_->s == y.t_->s;
    }

private:
    friend Field make_field(std::uint64_t p, std::uint64_t s, FieldLimits limits);

    explicit Field(std::shared_ptr<const detail::Tables> t) : t_(std::move(t)) {}

    std::uint32_t group_order() const noexcept { return t_->q - 1; }

    void check(Element a) const {
        if (!contains(a)) {
            fail(ErrorKind::MalformedElement,
                 "index " + std::to_string(a.index()) + " outside GF(" + notation() + ")");
        }
    }

    std::shared_ptr<const detail::Tables> t_;
};

/// Builds GF(p^s). Deterministic: the modulus and generator are pure
/// functions of (p, s).
inline Field make_field(std::uint64_t p, std::uint64_t s, FieldLimits limits = {}) {
    if (!detail::is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (s < 1 || s > 63) fail(ErrorKind::DegreeOutOfRange, "degree " + std::to_string(s));
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < s; ++i) {
        if (q > limits.max_order / p) {
            fail(ErrorKind::FieldTooLarge, std::to_string(p) + "^" + std::to_string(s) + " exceeds cap " +
                                               std::to_string(limits.max_order));
        }
        q *= p;
    }
    if (q > std::numeric_limits<std::uint32_t>::max() / 2) {
        fail(ErrorKind::FieldTooLarge, "order does not fit the element representation");
    }

    auto t = std::make_shared<detail::Tables>();
    t->p = static_cast<std::uint32_t>(p);
    t->s = static_cast<unsigned>(s);
    t->q = static_cast<std::uint32_t>(q);
    t->modulus = detail::smallest_irreducible(t->p, t->s, q);
    const std::uint32_t n = t->q - 1;
    t->group_factors = detail::prime_factors(n);

    const detail::SlowArithmetic slow(*t);
    for (std::uint32_t cand = 1; cand < t->q; ++cand) {
        bool primitive = true;
        for (auto l : t->group_factors) {
            if (slow.pow(cand, n / l) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            t->generator = cand;
            break;
        }
    }

    t->exp.resize(2 * static_cast<std::size_t>(n));
    t->log.assign(t->q, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        t->exp[i] = cur;
        t->exp[i + n] = cur;
        t->log[cur] = i;
        cur = slow.mul(cur, t->generator);
    }

    t->zech.resize(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        const std::uint32_t x = t->exp[k];
        const std::uint32_t c0 = x % t->p;
        const std::uint32_t y = x - c0 + (c0 + 1) % t->p;
        t->zech[k] = y == 0 ? detail::Tables::kNoLog : t->log[y];
    }
    return Field(std::move(t));
}

}  // namespace ffcount
