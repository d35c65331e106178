#pragma once

// Brute-force oracle counts, closed-form counts and the dispatcher that
// picks between them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ffcount/enumerate.hpp"
#include "ffcount/equations.hpp"
#include "ffcount/error.hpp"
#include "ffcount/ff.hpp"
#include "ffcount/integer.hpp"

namespace ffcount {

enum class Method { Brute, Thm1, Cor1, Thm2, Thm3, Thm4, Baoulina, QuasiHomog };

constexpr std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Brute: return "brute";
        case Method::Thm1: return "thm1";
        case Method::Cor1: return "cor1";
        case Method::Thm2: return "thm2";
        case Method::Thm3: return "thm3";
        case Method::Thm4: return "thm4";
        case Method::Baoulina: return "baoulina";
        case Method::QuasiHomog: return "quasihomog";
    }
    return "brute";
}

inline std::optional<Method> parse_method(std::string_view s) {
    for (auto m : {Method::Brute, Method::Thm1, Method::Cor1, Method::Thm2, Method::Thm3, Method::Thm4,
                   Method::Baoulina, Method::QuasiHomog}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

struct Hypothesis {
    std::string name;
    bool holds = false;

    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct CountReport {
    std::uint64_t q = 0;
    std::size_t n = 0;
    Integer value = 0;
    Method method = Method::Brute;
    bool restricted = false;
    std::vector<Hypothesis> hypotheses;

    friend bool operator==(const CountReport&, const CountReport&) = default;
};

// ---------------------------------------------------------------------------
// Evaluators

/// Left side a_1 x_1^{e_1} + ... + a_n x_n^{e_n}.
class DiagonalForm {
public:
    DiagonalForm(const Field& f, const std::vector<Element>& a, const Exponents& e) : field_(f) {
        tables_.reserve(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) tables_.emplace_back(f, a[j], e[j]);
    }

    Element operator()(std::span<const Element> x) const noexcept {
        Element acc = field_.zero();
        for (std::size_t j = 0; j < tables_.size(); ++j) acc = field_.add_unchecked(acc, tables_[j][x[j]]);
        return acc;
    }

private:
    Field field_;
    std::vector<PowerTable> tables_;
};

/// coeff * x_1^{k_1} ... x_n^{k_n}.
class MonomialForm {
public:
    MonomialForm(const Field& f, Element coeff, const Exponents& k) : field_(f), coeff_(coeff) {
        tables_.reserve(k.size());
        for (auto kj : k) tables_.emplace_back(f, f.one(), kj);
    }

    Element operator()(std::span<const Element> x) const noexcept {
        Element acc = coeff_;
        for (std::size_t j = 0; j < tables_.size(); ++j) acc = field_.mul_unchecked(acc, tables_[j][x[j]]);
        return acc;
    }

private:
    Field field_;
    Element coeff_;
    std::vector<PowerTable> tables_;
};

/// (a_1 x_1^{m_1} + ... + a_n x_n^{m_n})^k.
class CarlitzForm {
public:
    CarlitzForm(const Field& f, const CarlitzEquation& eq) : field_(f), inner_(f, eq.a, eq.m), k_(eq.k) {}

    Element operator()(std::span<const Element> x) const noexcept { return field_.pow_unchecked(inner_(x), k_); }

private:
    Field field_;
    DiagonalForm inner_;
    std::uint64_t k_;
};

class TermsForm {
public:
    TermsForm(const Field& f, std::vector<Term> terms) : field_(f), terms_(std::move(terms)) {}

    Element operator()(std::span<const Element> x) const { return evaluate_terms(field_, terms_, x); }

private:
    Field field_;
    std::vector<Term> terms_;
};

struct ZeroForm {
    Element operator()(std::span<const Element>) const noexcept { return Element{0}; }
};

// ---------------------------------------------------------------------------
// Oracles

/// N or N* of a diagonal equation. With reduce set the exponents m_j are
/// replaced by d_j = gcd(m_j, q-1), which leaves the count unchanged.
inline std::uint64_t brute_count_diagonal(const Field& f, const DiagonalEquation& eq, bool restricted,
                                          const BruteOptions& options = {}, bool reduce = true) {
    validate(f, eq);
    const Exponents e = reduce ? reduce_exponents(f, eq).d : eq.m;
    return brute_count(DiagonalForm(f, eq.a, e), ZeroForm{}, f, eq.size(), restricted, options);
}

inline std::uint64_t brute_count_carlitz(const Field& f, const CarlitzEquation& eq, bool restricted,
                                         const BruteOptions& options = {}) {
    validate(f, eq);
    return brute_count(CarlitzForm(f, eq), MonomialForm(f, eq.b, eq.kv), f, eq.size(), restricted, options);
}

/// Counts of f(x) = b x^kv.
inline std::uint64_t brute_count_quasihomog(const Field& f, const QuasiHomogeneousEquation& eq, bool restricted,
                                            const BruteOptions& options = {}) {
    validate(f, eq);
    return brute_count(TermsForm(f, eq.terms), MonomialForm(f, eq.b, eq.kv), f, eq.n, restricted, options);
}

/// Counts of f(x) = 0.
inline std::uint64_t brute_count_quasihomog_zero(const Field& f, const QuasiHomogeneousEquation& eq,
                                                 bool restricted, const BruteOptions& options = {}) {
    validate(f, eq);
    return brute_count(TermsForm(f, eq.terms), ZeroForm{}, f, eq.n, restricted, options);
}

inline std::uint64_t brute_count_equation(const Field& f, const Equation& eq, bool restricted,
                                          const BruteOptions& options = {}) {
    return std::visit(
        [&](const auto& e) -> std::uint64_t {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, DiagonalEquation>) return brute_count_diagonal(f, e, restricted, options);
            else if constexpr (std::is_same_v<T, CarlitzEquation>) return brute_count_carlitz(f, e, restricted, options);
            else return brute_count_quasihomog(f, e, restricted, options);
        },
        eq);
}

// ---------------------------------------------------------------------------
// Closed forms

/// Evidence that a formula's hypotheses were evaluated. Formulas refuse to
/// run on an unchecked gate; tests use override_checks() to evaluate a
/// formula on its own.
class HypothesisGate {
public:
    constexpr HypothesisGate() = default;

    static constexpr HypothesisGate from_check(bool holds) { return HypothesisGate(holds ? State::Holds : State::Fails); }
    static constexpr HypothesisGate override_checks() { return HypothesisGate(State::Holds); }

    void require(std::string_view formula) const {
        if (state_ == State::Unchecked) fail(ErrorKind::HypothesisNotChecked, std::string(formula));
        if (state_ == State::Fails) fail(ErrorKind::HypothesisFailed, std::string(formula));
    }

private:
    enum class State { Unchecked, Holds, Fails };
    constexpr explicit HypothesisGate(State s) : state_(s) {}
    State state_ = State::Unchecked;
};

inline Integer sign_power(std::uint64_t e) { return e % 2 == 0 ? Integer(1) : Integer(-1); }

/// q^{n-1}
inline Integer formula_thm1(const Field& f, std::size_t n, HypothesisGate gate) {
    gate.require("thm1");
    return ipow(Integer(f.order()), n - 1);
}

/// ((q-1)^n + (-1)^n (q-1)) / q
inline Integer formula_cor1(const Field& f, std::size_t n, HypothesisGate gate) {
    gate.require("cor1");
    const Integer q = f.order();
    const Integer numerator = ipow(q - 1, n) + sign_power(n) * (q - 1);
    if (numerator % q != 0) fail(ErrorKind::DivisibilityViolation, "q does not divide (q-1)^n + (-1)^n (q-1)");
    return numerator / q;
}

/// q^{n-1} + (-1)^{n-1}
inline Integer formula_thm2(const Field& f, std::size_t n, HypothesisGate gate) {
    gate.require("thm2");
    return ipow(Integer(f.order()), n - 1) + sign_power(n - 1);
}

inline Integer formula_baoulina(const Field& f, std::size_t n, HypothesisGate gate) {
    gate.require("baoulina");
    return ipow(Integer(f.order()), n - 1) + sign_power(n - 1);
}

/// (q-1)^{n-1} + N0 - q N0* / (q-1), shared by the Carlitz and
/// quasi-homogeneous reductions.
inline Integer scaled_reduction(const Field& f, std::size_t n, const Integer& zero_count, const Integer& zero_count_star) {
    const Integer q = f.order();
    if ((q * zero_count_star) % (q - 1) != 0) {
        fail(ErrorKind::DivisibilityViolation, "q-1 does not divide q * N*");
    }
    return ipow(q - 1, n - 1) + zero_count - q * zero_count_star / (q - 1);
}

inline Integer formula_thm3(const Field& f, std::size_t n, const Integer& n_diag, const Integer& nstar_diag,
                            HypothesisGate gate) {
    gate.require("thm3");
    return scaled_reduction(f, n, n_diag, nstar_diag);
}

inline Integer formula_quasihomog(const Field& f, std::size_t n, const Integer& n0, const Integer& nstar0,
                                  HypothesisGate gate) {
    gate.require("quasihomog");
    return scaled_reduction(f, n, n0, nstar0);
}

/// sigma_degree(values) from the coefficients of prod (1 + v_i z).
inline Integer elementary_symmetric(std::span<const Integer> values, std::ptrdiff_t degree) {
    if (degree < 0 || static_cast<std::size_t>(degree) > values.size()) {
        fail(ErrorKind::DegreeOutOfRange, "sigma_" + std::to_string(degree) + " of " +
                                              std::to_string(values.size()) + " values");
    }
    std::vector<Integer> coeff(values.size() + 1, 0);
    coeff[0] = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j > 0; --j) coeff[j] += values[i] * coeff[j - 1];
    }
    return coeff[static_cast<std::size_t>(degree)];
}

/// Carlitz count under the odd/even split of the reduced exponents.
/// eta_a holds eta(a_j) in split order (odd d's first); t is the number of
/// odd d's.
inline Integer formula_thm4(const Field& f, std::size_t n, std::size_t t, std::span<const CharValue> eta_a,
                            HypothesisGate gate) {
    gate.require("thm4");
    if (t > n || eta_a.size() != n) fail(ErrorKind::PreconditionViolated, "split does not match n");
    const Integer q = f.order();
    Integer value = ipow(q, n - 1) + sign_power(n - 1);
    if (t == n) return value;
    if (f.order() % 2 == 0) fail(ErrorKind::EvenCharacteristicUndefined, "even d_j over an even field");

    const int eta_minus_one = to_int(f.quadratic_character(f.neg(f.one())));
    std::vector<Integer> even_part;
    for (std::size_t i = t; i < n; ++i) even_part.emplace_back(to_int(eta_a[i]));

    Integer sum = 0;
    for (std::size_t j = 1; j <= (n - t) / 2; ++j) {
        const int eta_sign = j % 2 == 0 ? 1 : eta_minus_one;  // eta((-1)^j)
        sum += eta_sign * elementary_symmetric(even_part, static_cast<std::ptrdiff_t>(2 * j)) * ipow(q, j);
    }
    value += sign_power(n - 1) * sum;

    if (t == 0 && n % 2 == 0) {
        int eta_tail = (n / 2) % 2 == 0 ? 1 : eta_minus_one;  // eta((-1)^{n/2} a_1 ... a_n)
        for (auto v : eta_a) eta_tail *= to_int(v);
        value += eta_tail * ipow(q, (n - 2) / 2) * (q - 1);
    }
    return value;
}

// ---------------------------------------------------------------------------
// Dispatcher

enum class MethodMode { Auto, ForceBrute, ForceFormula };

struct CountOptions {
    MethodMode mode = MethodMode::Auto;
    bool restricted = false;
    BruteOptions brute;
};

/// NoApplicableFormula carrying the hypotheses that were evaluated.
class NoFormulaError : public Error {
public:
    NoFormulaError(const std::string& what, std::vector<Hypothesis> hypotheses)
        : Error(ErrorKind::NoApplicableFormula, what), hypotheses_(std::move(hypotheses)) {}

    const std::vector<Hypothesis>& hypotheses() const noexcept { return hypotheses_; }

private:
    std::vector<Hypothesis> hypotheses_;
};

namespace detail {

inline void check_report(const CountReport& report) {
    const Integer bound = ipow(Integer(report.restricted ? report.q - 1 : report.q), report.n);
    if (report.value < 0 || report.value > bound) {
        fail(ErrorKind::InternalConsistency, "count " + report.value.str() + " outside [0, " + bound.str() + "]");
    }
}

class Dispatcher {
public:
    Dispatcher(const Field& f, const CountOptions& options, std::size_t n) : f_(f), options_(options) {
        report_.q = f.order();
        report_.n = n;
        report_.restricted = options.restricted;
    }

    bool note(std::string name, bool holds) {
        report_.hypotheses.push_back({std::move(name), holds});
        return holds;
    }

    CountReport finish(Method method, Integer value) {
        report_.method = method;
        report_.value = std::move(value);
        check_report(report_);
        return report_;
    }

    template <typename Brute>
    CountReport fallback(Brute&& brute) {
        if (options_.mode == MethodMode::ForceFormula) {
            throw NoFormulaError("no closed form applies; hypotheses evaluated: " + ledger(), report_.hypotheses);
        }
        return finish(Method::Brute, Integer(brute()));
    }

    bool formulas_allowed() const { return options_.mode != MethodMode::ForceBrute; }

private:
    std::string ledger() const {
        std::string out;
        for (const auto& h : report_.hypotheses) {
            if (!out.empty()) out += ", ";
            out += h.name + "=" + (h.holds ? "true" : "false");
        }
        return out.empty() ? "none" : out;
    }

    Field f_;
    CountOptions options_;
    CountReport report_;
};

}  // namespace detail

inline CountReport count(const DiagonalEquation& eq, const Field& f, const CountOptions& options = {}) {
    validate(f, eq);
    detail::Dispatcher run(f, options, eq.size());
    const auto brute = [&] { return brute_count_diagonal(f, eq, options.restricted, options.brute); };
    if (run.formulas_allowed()) {
        const auto derived = reduce_exponents(f, eq);
        if (!options.restricted) {
            if (run.note("thm1_applicable", thm1_applicable(derived.d).has_value())) {
                return run.finish(Method::Thm1, formula_thm1(f, eq.size(), HypothesisGate::from_check(true)));
            }
        } else if (run.note("pairwise_coprime", pairwise_coprime(derived.d))) {
            return run.finish(Method::Cor1, formula_cor1(f, eq.size(), HypothesisGate::from_check(true)));
        }
    }
    return run.fallback(brute);
}

/// Diagonal sub-counts N, N* for the exponents d, by formula when the
/// hypotheses allow it and by enumeration otherwise.
struct DiagonalSubcounts {
    Integer count;
    Integer count_star;
    bool count_by_formula = false;
    bool count_star_by_formula = false;
};

inline DiagonalSubcounts diagonal_subcounts(const Field& f, const std::vector<Element>& a, const Exponents& d,
                                            const BruteOptions& brute) {
    const DiagonalEquation diag{a, d};
    DiagonalSubcounts out;
    const std::size_t n = d.size();
    if (thm1_applicable(d)) {
        out.count = formula_thm1(f, n, HypothesisGate::from_check(true));
        out.count_by_formula = true;
    } else {
        out.count = brute_count_diagonal(f, diag, false, brute);
    }
    if (pairwise_coprime(d)) {
        out.count_star = formula_cor1(f, n, HypothesisGate::from_check(true));
        out.count_star_by_formula = true;
    } else {
        out.count_star = brute_count_diagonal(f, diag, true, brute);
    }
    return out;
}

inline CountReport count(const CarlitzEquation& eq, const Field& f, const CountOptions& options = {}) {
    validate(f, eq);
    detail::Dispatcher run(f, options, eq.size());
    const auto brute = [&] { return brute_count_carlitz(f, eq, options.restricted, options.brute); };
    if (!run.formulas_allowed() || options.restricted) return run.fallback(brute);

    const std::size_t n = eq.size();
    const auto derived = reduce_exponents(f, eq);
    const bool gcd_ok = run.note("carlitz_gcd", carlitz_gcd_condition(eq, f));
    const bool coprime = run.note("pairwise_coprime", pairwise_coprime(derived.d));
    if (gcd_ok && coprime) return run.finish(Method::Thm2, formula_thm2(f, n, HypothesisGate::from_check(true)));
    if (run.note("baoulina", baoulina_condition(eq, f))) {
        return run.finish(Method::Baoulina, formula_baoulina(f, n, HypothesisGate::from_check(true)));
    }
    if (!gcd_ok) return run.fallback(brute);

    if (const auto split = thm4_split(derived.d); run.note("thm4_split", split.has_value())) {
        std::vector<CharValue> eta;
        for (auto j : split->permutation) eta.push_back(f.quadratic_character(eq.a[j]));
        return run.finish(Method::Thm4, formula_thm4(f, n, split->t, eta, HypothesisGate::from_check(true)));
    }

    const auto sub = diagonal_subcounts(f, eq.a, derived.d, options.brute);
    run.note("diag_count_by_formula", sub.count_by_formula);
    run.note("diag_count_star_by_formula", sub.count_star_by_formula);
    return run.finish(Method::Thm3, formula_thm3(f, n, sub.count, sub.count_star, HypothesisGate::from_check(true)));
}

inline CountReport count(const QuasiHomogeneousEquation& eq, const Field& f, const CountOptions& options = {}) {
    validate(f, eq);
    detail::Dispatcher run(f, options, eq.n);
    const auto brute = [&] { return brute_count_quasihomog(f, eq, options.restricted, options.brute); };
    if (!run.formulas_allowed() || options.restricted) return run.fallback(brute);

    if (run.note("quasihomogeneous", quasihomogeneity_check(eq, f, options.brute.work_cap).holds) &&
        run.note("quasihomog_gcd", quasihomog_gcd_condition(eq, f, options.brute.work_cap))) {
        const Integer n0 = brute_count_quasihomog_zero(f, eq, false, options.brute);
        const Integer nstar0 = brute_count_quasihomog_zero(f, eq, true, options.brute);
        return run.finish(Method::QuasiHomog, formula_quasihomog(f, eq.n, n0, nstar0, HypothesisGate::from_check(true)));
    }
    return run.fallback(brute);
}

inline CountReport count(const Equation& eq, const Field& f, const CountOptions& options = {}) {
    return std::visit([&](const auto& e) { return count(e, f, options); }, eq);
}

/// Whether count() in auto mode would use a closed form, judged from the
/// hypotheses alone.
inline bool closed_form_applies(const Equation& eq, const Field& f, bool restricted) {
    validate(f, eq);
    if (const auto* diag = std::get_if<DiagonalEquation>(&eq)) {
        const auto d = reduce_exponents(f, *diag).d;
        return restricted ? pairwise_coprime(d) : thm1_applicable(d).has_value();
    }
    if (restricted) return false;
    if (const auto* carlitz = std::get_if<CarlitzEquation>(&eq)) {
        return carlitz_gcd_condition(*carlitz, f) || baoulina_condition(*carlitz, f);
    }
    const auto& qh = std::get<QuasiHomogeneousEquation>(eq);
    return quasihomogeneity_check(qh, f).holds && quasihomog_gcd_condition(qh, f);
}

}  // namespace ffcount
