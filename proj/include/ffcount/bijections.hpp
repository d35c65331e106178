#pragma once

// Fiber families S_c, the scaling bijections between fibers, and the set
// identities that turn those bijections into solution counts.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffcount/counting.hpp"
#include "ffcount/enumerate.hpp"
#include "ffcount/equations.hpp"
#include "ffcount/error.hpp"
#include "ffcount/ff.hpp"
#include "ffcount/integer.hpp"

namespace ffcount {

using Tuple = std::vector<Element>;

/// Smallest positive t with t = 0 (mod d1) and t = 1 (mod rest).
inline Integer crt_exponent(const Integer& d1, const Integer& rest) {
    if (d1 < 1 || rest < 1) fail(ErrorKind::PreconditionViolated, "moduli must be positive");
    if (abs_gcd(d1, rest) != 1) fail(ErrorKind::NotCoprime, "gcd(" + d1.str() + ", " + rest.str() + ") != 1");
    if (rest == 1) return d1;
    // d1 * u with u = d1^{-1} mod rest
    Integer r0 = rest, r1 = d1 % rest, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const Integer quot = r0 / r1;
        Integer tmp = r0 - quot * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - quot * s1;
        s0 = s1;
        s1 = tmp;
    }
    Integer u = s0 % rest;
    if (u < 0) u += rest;
    return d1 * u;
}

namespace detail {

inline std::uint64_t exact_quotient(const Integer& num, std::uint64_t den, std::uint64_t group) {
    if (num % den != 0) fail(ErrorKind::ExponentNotIntegral, num.str() + " / " + std::to_string(den));
    return mod_u64(num / den, group);
}

inline std::uint64_t encode(std::span<const Element> x, std::uint64_t q) {
    std::uint64_t code = 0;
    for (std::size_t j = x.size(); j-- > 0;) code = code * q + x[j].index();
    return code;
}

inline Tuple decode(std::uint64_t code, std::size_t n, std::uint64_t q) {
    Tuple x(n);
    for (auto& xj : x) {
        xj = Element{static_cast<std::uint32_t>(code % q)};
        code /= q;
    }
    return x;
}

/// y_j = c^{e_j} x_j
inline Tuple scale(const Field& f, Element c, std::span<const std::uint64_t> exps, std::span<const Element> x) {
    Tuple y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = f.mul(f.pow(c, exps[j]), x[j]);
    return y;
}

}  // namespace detail

/// Exponents (t/d_p, (t-1)/d_j for j != p) of the diagonal fiber scaling, reduced
/// mod q-1.
inline std::vector<std::uint64_t> thm1_exponents(const Field& f, const Exponents& d, const Integer& t, std::size_t pivot = 0) {
    const std::uint64_t group = f.order() - 1;
    std::vector<std::uint64_t> exps(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
        exps[j] = detail::exact_quotient(j == pivot ? t : t - 1, d[j], group);
    }
    return exps;
}

/// (c^{t/d_p} x_p, c^{(t-1)/d_j} x_j): sends S'_c onto S'_1 where S_c is the
/// solution set of a_p c x_p^{d_p} + sum_{j != p} a_j x_j^{d_j} = 0.
inline Tuple thm1_map(const Field& f, Element c, const Exponents& d, const Integer& t, std::span<const Element> x,
                      std::size_t pivot = 0) {
    if (c.is_zero()) fail(ErrorKind::ZeroArgument, "fiber parameter must be nonzero");
    if (x.size() != d.size() || pivot >= d.size()) fail(ErrorKind::PreconditionViolated, "tuple length mismatch");
    if (x[pivot].is_zero()) fail(ErrorKind::PreconditionViolated, "pivot coordinate is zero");
    return detail::scale(f, c, thm1_exponents(f, d, t, pivot), x);
}

/// t in [0, q-2] with g^{-t e} = c, e the Carlitz exponent and g the field
/// generator, so that the generator-power scaling carries S*_1 onto S*_c.
inline std::uint64_t thm2_scaling_exponent(const Field& f, Element c, const CarlitzEquation& eq) {
    if (c.is_zero()) fail(ErrorKind::ZeroArgument, "fiber parameter must be nonzero");
    if (!carlitz_gcd_condition(eq, f)) fail(ErrorKind::HypothesisFailed, "gcd(e, q-1) != 1");
    const std::uint64_t group = f.order() - 1;
    const Element h = f.pow(f.generator(), mod_u64(carlitz_exponent(eq), group));
    return f.discrete_log(h, f.inv(c));
}

/// (g^{t M/m_1} x_1, ..., g^{t M/m_n} x_n) for an arbitrary integer t.
inline Tuple thm2_apply(const Field& f, const CarlitzEquation& eq, const Integer& t, std::span<const Element> x) {
    const std::uint64_t group = f.order() - 1;
    const Integer M = lcm_of(eq.m);
    std::vector<std::uint64_t> exps(eq.size());
    for (std::size_t j = 0; j < eq.size(); ++j) exps[j] = mod_u64(t * (M / eq.m[j]), group);
    return detail::scale(f, f.generator(), exps, x);
}

inline Tuple thm2_map(const Field& f, Element c, const CarlitzEquation& eq, std::span<const Element> x) {
    if (x.size() != eq.size()) fail(ErrorKind::PreconditionViolated, "tuple length mismatch");
    for (auto xj : x) {
        if (xj.is_zero()) fail(ErrorKind::PreconditionViolated, "coordinates must be nonzero");
    }
    return thm2_apply(f, eq, Integer(thm2_scaling_exponent(f, c, eq)), x);
}

enum class FiberKind { DiagPrimeVariable, CarlitzAllVariables };

constexpr std::string_view to_string(FiberKind k) noexcept {
    return k == FiberKind::DiagPrimeVariable ? "diag-prime-variable" : "carlitz-all-variables";
}

/// The solution sets S_c for c in F_q of one scaled equation:
///   diag:    a_p c x_p^{d_p} + sum_{j != p} a_j x_j^{d_j} = 0, restricted part x_p != 0
///   carlitz: (sum a_j x_j^{m_j})^k = b c x^kv,                restricted part all x_j != 0
class FiberFamily {
public:
    static FiberFamily diagonal(const Field& f, const DiagonalEquation& eq) {
        validate(f, eq);
        const auto d = reduce_exponents(f, eq).d;
        const auto pivot = thm1_applicable(d);
        if (!pivot) fail(ErrorKind::HypothesisFailed, "no exponent coprime to the product of the others");
        FiberFamily out(f, FiberKind::DiagPrimeVariable, eq.size());
        out.a_ = eq.a;
        out.exps_ = d;
        out.pivot_ = *pivot;
        for (std::size_t j = 0; j < d.size(); ++j) out.lhs_tables_.emplace_back(f, eq.a[j], d[j]);
        return out;
    }

    static FiberFamily carlitz(const Field& f, const CarlitzEquation& eq) {
        validate(f, eq);
        if (!carlitz_gcd_condition(eq, f)) fail(ErrorKind::HypothesisFailed, "gcd(e, q-1) != 1");
        FiberFamily out(f, FiberKind::CarlitzAllVariables, eq.size());
        out.a_ = eq.a;
        out.exps_ = eq.m;
        out.carlitz_ = eq;
        for (std::size_t j = 0; j < eq.size(); ++j) {
            out.lhs_tables_.emplace_back(f, eq.a[j], eq.m[j]);
            out.rhs_tables_.emplace_back(f, f.one(), eq.kv[j]);
        }
        return out;
    }

    FiberKind kind() const noexcept { return kind_; }
    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return n_; }
    std::size_t pivot() const noexcept { return pivot_; }
    /// d for the diagonal kind, m for the Carlitz kind.
    const Exponents& exponents() const noexcept { return exps_; }
    const std::vector<Element>& coefficients() const noexcept { return a_; }
    const std::optional<CarlitzEquation>& carlitz_equation() const noexcept { return carlitz_; }

    bool in_restricted_part(std::span<const Element> x) const noexcept {
        if (kind_ == FiberKind::DiagPrimeVariable) return !x[pivot_].is_zero();
        for (auto xj : x) {
            if (xj.is_zero()) return false;
        }
        return true;
    }

    /// x in S_c.
    bool contains(Element c, std::span<const Element> x) const noexcept {
        const auto [lhs, rhs] = sides(x);
        if (kind_ == FiberKind::DiagPrimeVariable) {
            return field_.add_unchecked(field_.mul_unchecked(c, lhs), rhs).is_zero();
        }
        return lhs == field_.mul_unchecked(c, rhs);
    }

    /// For diag: (a_p x_p^{d_p}, rest), S_c is c*first + second = 0.
    /// For carlitz: (lhs, b x^kv), S_c is first = c*second.
    std::pair<Element, Element> sides(std::span<const Element> x) const noexcept {
        if (kind_ == FiberKind::DiagPrimeVariable) {
            Element rest = field_.zero();
            for (std::size_t j = 0; j < n_; ++j) {
                if (j != pivot_) rest = field_.add_unchecked(rest, lhs_tables_[j][x[j]]);
            }
            return {lhs_tables_[pivot_][x[pivot_]], rest};
        }
        Element inner = field_.zero();
        Element mono = carlitz_->b;
        for (std::size_t j = 0; j < n_; ++j) {
            inner = field_.add_unchecked(inner, lhs_tables_[j][x[j]]);
            mono = field_.mul_unchecked(mono, rhs_tables_[j][x[j]]);
        }
        return {field_.pow_unchecked(inner, carlitz_->k), mono};
    }

    /// Codes of the restricted fiber S'_c or S*_c, ascending.
    std::vector<std::uint64_t> restricted_fiber(Element c, const BruteOptions& options = {}) const {
        require_within_cap(field_.order(), n_, options.work_cap);
        std::vector<std::uint64_t> out;
        const std::uint32_t q = field_.order();
        for_each_tuple(n_, q, 0, 0, q, [&](std::span<const Element> x) {
            if (in_restricted_part(x) && contains(c, x)) out.push_back(detail::encode(x, q));
        });
        return out;
    }

private:
    FiberFamily(const Field& f, FiberKind kind, std::size_t n) : field_(f), kind_(kind), n_(n) {}

    Field field_;
    FiberKind kind_;
    std::size_t n_;
    std::size_t pivot_ = 0;
    std::vector<Element> a_;
    Exponents exps_;
    std::optional<CarlitzEquation> carlitz_;
    std::vector<PowerTable> lhs_tables_;
    std::vector<PowerTable> rhs_tables_;
};

/// Pairings are stored explicitly up to this many source tuples; above it
/// only cardinalities and the pairing hash are kept.
inline constexpr std::uint64_t kPairingStoreLimit = 100'000;

struct BijectionCertificate {
    Element source_c;
    Element target_c;
    std::uint64_t source_size = 0;
    std::uint64_t target_size = 0;
    bool pairing_stored = false;
    std::vector<std::pair<Tuple, Tuple>> pairing;
    std::uint64_t pairing_hash = 0;  // FNV-1a over (source, image) codes in source order
    bool inverse_verified = false;
};

/// Materializes the scaling map for one c and checks that it is a bijection
/// between the two restricted fibers: images land in the target, no two
/// sources collide, the inverse scaling recovers every source, and the
/// fibers have equal size. Throws NotABijection otherwise.
inline BijectionCertificate verify_bijection(const FiberFamily& family, Element c, const BruteOptions& options = {}) {
    const Field& f = family.field();
    if (!f.contains(c) || c.is_zero()) fail(ErrorKind::ZeroArgument, "fiber parameter must be a nonzero element");
    const std::uint64_t q = f.order();
    const std::size_t n = family.size();

    BijectionCertificate cert;
    std::vector<std::uint64_t> forward, backward;
    if (family.kind() == FiberKind::DiagPrimeVariable) {
        cert.source_c = c;
        cert.target_c = f.one();
        const auto& d = family.exponents();
        Integer rest = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != family.pivot()) rest *= d[j];
        }
        const Integer t = crt_exponent(Integer(d[family.pivot()]), rest);
        forward = thm1_exponents(f, d, t, family.pivot());
    } else {
        cert.source_c = f.one();
        cert.target_c = c;
        const auto& eq = *family.carlitz_equation();
        const Integer t = thm2_scaling_exponent(f, c, eq);
        const Integer M = lcm_of(eq.m);
        for (std::size_t j = 0; j < n; ++j) forward.push_back(mod_u64(t * (M / eq.m[j]), q - 1));
    }
    for (auto e : forward) backward.push_back((q - 1 - e % (q - 1)) % (q - 1));
    const Element base = family.kind() == FiberKind::DiagPrimeVariable ? c : f.generator();

    const auto source = family.restricted_fiber(cert.source_c, options);
    const auto target = family.restricted_fiber(cert.target_c, options);
    cert.source_size = source.size();
    cert.target_size = target.size();
    cert.pairing_stored = source.size() <= kPairingStoreLimit;

    auto bad = [&](const std::string& why) {
        fail(ErrorKind::NotABijection, "c=" + f.to_string(c) + ": " + why);
    };

    std::vector<bool> hit(tuple_space(q, n), false);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&hash](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            hash ^= (v >> (8 * i)) & 0xffU;
            hash *= 0x100000001b3ULL;
        }
    };
    for (auto code : source) {
        const Tuple x = detail::decode(code, n, q);
        const Tuple y = detail::scale(f, base, forward, x);
        if (!family.in_restricted_part(y) || !family.contains(cert.target_c, y)) bad("image outside target fiber");
        const auto image = detail::encode(y, q);
        if (hit[image]) bad("two sources share an image");
        hit[image] = true;
        if (detail::scale(f, base, backward, y) != x) bad("inverse scaling does not return the source");
        mix(code);
        mix(image);
        if (cert.pairing_stored) cert.pairing.emplace_back(x, y);
    }
    if (cert.source_size != cert.target_size) bad("fibers differ in size");
    cert.pairing_hash = hash;
    cert.inverse_verified = true;
    return cert;
}

struct IdentityCheck {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool holds = false;
};

struct IdentityReport {
    FiberKind kind = FiberKind::DiagPrimeVariable;
    std::vector<std::uint64_t> fiber_sizes;             // |S_c| in enumeration order of c
    std::vector<std::uint64_t> restricted_fiber_sizes;  // |S'_c| or |S*_c|
    std::vector<IdentityCheck> checks;

    bool all_hold() const {
        for (const auto& c : checks) {
            if (!c.holds) return false;
        }
        return true;
    }
};

namespace detail {

inline IdentityCheck equality(std::string name, const Integer& lhs, const Integer& rhs) {
    return {std::move(name), lhs.str(), rhs.str(), lhs == rhs};
}

/// lhs = rhs_num / rhs_den with an exact division requirement.
inline IdentityCheck equality_over(std::string name, const Integer& lhs, const Integer& rhs_num, const Integer& rhs_den) {
    if (rhs_num % rhs_den != 0) return {std::move(name), lhs.str(), rhs_num.str() + "/" + rhs_den.str(), false};
    return equality(std::move(name), lhs, rhs_num / rhs_den);
}

}  // namespace detail

/// Enumerates every tuple against every fiber and checks the counting
/// identities behind the closed forms.
inline IdentityReport verify_identities(const FiberFamily& family, const BruteOptions& options = {}) {
    const Field& f = family.field();
    const std::uint32_t q = f.order();
    const std::size_t n = family.size();
    require_within_cap(q, n + 1, options.work_cap);

    IdentityReport report;
    report.kind = family.kind();
    report.fiber_sizes.assign(q, 0);
    report.restricted_fiber_sizes.assign(q, 0);
    std::uint64_t unique_fiber = 0;          // restricted tuples lying in exactly one fiber
    std::uint64_t complement_mismatches = 0;  // unrestricted-part tuples whose membership depends on c

    for_each_tuple(n, q, 0, 0, q, [&](std::span<const Element> x) {
        const bool restricted = family.in_restricted_part(x);
        std::uint32_t memberships = 0;
        for (std::uint32_t c = 0; c < q; ++c) {
            if (!family.contains(Element{c}, x)) continue;
            ++memberships;
            ++report.fiber_sizes[c];
            if (restricted) ++report.restricted_fiber_sizes[c];
        }
        if (restricted) {
            if (memberships == 1) ++unique_fiber;
        } else if (memberships != 0 && memberships != q) {
            ++complement_mismatches;
        }
    });

    const Integer Q = q;
    const Integer s0 = report.fiber_sizes[0];
    const Integer s1 = report.fiber_sizes[1];
    const Integer r0 = report.restricted_fiber_sizes[0];
    const Integer r1 = report.restricted_fiber_sizes[1];
    Integer restricted_total = 0;
    std::uint64_t equal_fibers = 0;
    for (std::uint32_t c = 0; c < q; ++c) {
        restricted_total += report.restricted_fiber_sizes[c];
        if (c != 0 && report.restricted_fiber_sizes[c] == report.restricted_fiber_sizes[1]) ++equal_fibers;
    }
    auto& checks = report.checks;

    if (family.kind() == FiberKind::DiagPrimeVariable) {
        const Integer cells = ipow(Q, n - 1) * (Q - 1);
        checks.push_back(detail::equality("|S_1| = |S'_1| + |S_0| - |S'_0|", s1, r1 + s0 - r0));
        checks.push_back(detail::equality("S_c \\ S'_c independent of c (violations)", complement_mismatches, 0));
        checks.push_back(detail::equality("each x with x_p != 0 lies in exactly one S'_c", unique_fiber, cells));
        checks.push_back(detail::equality("sum_c |S'_c| = q^{n-1}(q-1)", restricted_total, cells));
        checks.push_back(detail::equality("|S'_c| = |S'_1| for all c != 0 (count of c)", equal_fibers, Q - 1));
        checks.push_back(detail::equality_over("|S'_1| = q^{n-1} - |S'_0|/(q-1)", r1, ipow(Q, n - 1) * (Q - 1) - r0, Q - 1));
        checks.push_back(detail::equality_over("|S_0| = q|S'_0|/(q-1)", s0, Q * r0, Q - 1));
        checks.push_back(detail::equality("|S_1| = q^{n-1}", s1, ipow(Q, n - 1)));
    } else {
        const auto& eq = *family.carlitz_equation();
        const Integer cells = ipow(Q - 1, n);
        const auto d = reduce_exponents(f, eq).d;
        const DiagonalEquation diag{eq.a, d};
        const Integer n_diag = brute_count_diagonal(f, diag, false, options);
        const Integer nstar_diag = brute_count_diagonal(f, diag, true, options);
        checks.push_back(detail::equality("|S_1| = |S*_1| + |S_0| - |S*_0|", s1, r1 + s0 - r0));
        checks.push_back(detail::equality("S_c \\ S*_c independent of c (violations)", complement_mismatches, 0));
        checks.push_back(detail::equality("each x in (F_q*)^n lies in exactly one S*_c", unique_fiber, cells));
        checks.push_back(detail::equality("sum_c |S*_c| = (q-1)^n", restricted_total, cells));
        checks.push_back(detail::equality("|S*_c| = |S*_1| for all c != 0 (count of c)", equal_fibers, Q - 1));
        checks.push_back(detail::equality_over("|S*_1| = (q-1)^{n-1} - |S*_0|/(q-1)", r1, ipow(Q - 1, n) - r0, Q - 1));
        checks.push_back(detail::equality("|S_0| = N[diagonal with d]", s0, n_diag));
        checks.push_back(detail::equality("|S*_0| = N*[diagonal with d]", r0, nstar_diag));
        checks.push_back(detail::equality_over("|S_1| = (q-1)^{n-1} + N - qN*/(q-1)", s1,
                                               ipow(Q - 1, n) + (Q - 1) * n_diag - Q * nstar_diag, Q - 1));
    }
    return report;
}

inline void require_all(const IdentityReport& report) {
    for (const auto& c : report.checks) {
        if (!c.holds) fail(ErrorKind::IdentityViolated, c.name + ": " + c.lhs + " vs " + c.rhs);
    }
}

}  // namespace ffcount
