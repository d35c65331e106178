#pragma once

// Subcommand drivers behind the ffcount executable. Each returns the process
// exit status and writes its report to `out`, diagnostics to `err`.

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ffcount/bijections.hpp"
#include "ffcount/counting.hpp"
#include "ffcount/error.hpp"
#include "ffcount/ff.hpp"
#include "ffcount/parse.hpp"
#include "ffcount/report_io.hpp"

namespace ffcount::cli {

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int mismatch = 1;
inline constexpr int parse = 2;
inline constexpr int cap = 3;
inline constexpr int inapplicable = 4;
}  // namespace exit_status

enum class OutputFormat { Json, Tsv };

struct SweepRanges {
    std::vector<std::string> q_list;
    std::optional<std::pair<std::size_t, std::size_t>> n_range;
    std::string family;  // "diag" or "carlitz" for generated instances
    std::size_t instances = 1;
    std::uint64_t m_max = 6;
    std::uint64_t seed = 1;
    bool only_applicable = false;
};

struct RunConfig {
    std::string field;
    std::string equation;
    MethodMode method = MethodMode::Auto;
    bool restricted = false;
    OutputFormat output = OutputFormat::Json;
    std::uint64_t work_cap = 100'000'000;
    unsigned workers = 1;
    std::uint64_t field_cap = std::uint64_t{1} << 20U;
    SweepRanges sweep;
    bool include_pairing = false;
    /// Added to the formula value in `verify`; exercises the mismatch path.
    std::int64_t fault_offset = 0;

    BruteOptions brute() const { return {work_cap, workers}; }
    CountOptions count_options(MethodMode mode) const { return {mode, restricted, brute()}; }
};

inline int exit_status_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::NotPrime:
        case ErrorKind::DegreeOutOfRange:
        case ErrorKind::MalformedElement:
        case ErrorKind::InvalidEquation:
        case ErrorKind::NegativeExponent:
            return exit_status::parse;
        case ErrorKind::WorkCapExceeded:
        case ErrorKind::FieldTooLarge:
            return exit_status::cap;
        case ErrorKind::NoApplicableFormula:
        case ErrorKind::HypothesisFailed:
        case ErrorKind::NotQuasiHomogeneous:
            return exit_status::inapplicable;
        default:
            return exit_status::mismatch;
    }
}

namespace detail {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_status_for(e.kind());
    }
}

inline Field field_of(const RunConfig& cfg, const std::string& text) {
    if (text.empty()) fail(ErrorKind::Parse, "--field is required");
    return parse_field(text, FieldLimits{cfg.field_cap});
}

inline Field field_of_order(const RunConfig& cfg, const std::string& text) {
    return parse_field_order(text, FieldLimits{cfg.field_cap});
}

inline Equation equation_of(const RunConfig& cfg, const Field& f) {
    if (cfg.equation.empty()) fail(ErrorKind::Parse, "--eq is required");
    return parse_equation(cfg.equation, f);
}

struct FormulaAttempt {
    std::optional<CountReport> report;
    std::vector<Hypothesis> hypotheses;
    std::string status;  // "applied", "inapplicable" or "over-cap"
};

inline FormulaAttempt try_formula(const Equation& eq, const Field& f, const RunConfig& cfg) {
    FormulaAttempt out;
    try {
        out.report = count(eq, f, cfg.count_options(MethodMode::ForceFormula));
        out.report->value += cfg.fault_offset;
        out.hypotheses = out.report->hypotheses;
        out.status = "applied";
    } catch (const NoFormulaError& e) {
        out.hypotheses = e.hypotheses();
        out.status = "inapplicable";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::WorkCapExceeded) throw;
        out.status = "over-cap";
    }
    return out;
}

}  // namespace detail

inline int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Field f = detail::field_of(cfg, cfg.field);
        const Equation eq = detail::equation_of(cfg, f);
        const CountReport report = count(eq, f, cfg.count_options(cfg.method));
        if (cfg.output == OutputFormat::Json) {
            out << to_json(report).dump() << "\n";
        } else {
            out << kCountTsvHeader << "\n" << to_tsv_row(report) << "\n";
        }
        return exit_status::ok;
    });
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Field f = detail::field_of(cfg, cfg.field);
        const Equation eq = detail::equation_of(cfg, f);
        const auto formula = detail::try_formula(eq, f, cfg);
        if (formula.status == "over-cap") fail(ErrorKind::WorkCapExceeded, "formula sub-counts exceed the cap");
        const CountReport brute = count(eq, f, cfg.count_options(MethodMode::ForceBrute));
        const bool applied = formula.report.has_value();
        const bool match = applied && formula.report->value == brute.value;

        if (cfg.output == OutputFormat::Json) {
            Json j = {{"q", f.order()}, {"n", variable_count(eq)}, {"equation", to_text(eq)}};
            j["formula"] = applied ? to_json(*formula.report) : Json(formula.status);
            j["brute"] = to_json(brute);
            j["match"] = applied ? Json(match) : Json(nullptr);
            out << j.dump() << "\n";
        } else {
            out << "q\tn\tequation\tformula_method\tformula_value\tbrute_value\tmatch\n";
            out << f.order() << "\t" << variable_count(eq) << "\t" << to_text(eq) << "\t"
                << (applied ? std::string(to_string(formula.report->method)) : formula.status) << "\t"
                << (applied ? formula.report->value.str() : "") << "\t" << brute.value.str() << "\t"
                << (applied ? (match ? "1" : "0") : "") << "\n";
        }
        return applied && !match ? exit_status::mismatch : exit_status::ok;
    });
}

namespace detail {

inline std::vector<Element> random_nonzero(const Field& f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(1, f.order() - 1);
    std::vector<Element> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(pick(rng));
    return out;
}

inline Exponents random_exponents(std::size_t n, std::uint64_t max, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> pick(1, max);
    Exponents out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(pick(rng));
    return out;
}

inline Equation random_equation(const std::string& family, const Field& f, std::size_t n, std::uint64_t m_max,
                                std::mt19937_64& rng) {
    if (family == "diag") return DiagonalEquation{random_nonzero(f, n, rng), random_exponents(n, m_max, rng)};
    CarlitzEquation eq;
    eq.a = random_nonzero(f, n, rng);
    eq.m = random_exponents(n, m_max, rng);
    eq.k = random_exponents(1, m_max, rng)[0];
    eq.b = random_nonzero(f, 1, rng)[0];
    eq.kv = random_exponents(n, m_max, rng);
    return eq;
}

}  // namespace detail

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto& sw = cfg.sweep;
        std::vector<std::string> fields = sw.q_list;
        if (fields.empty() && !cfg.field.empty()) fields.push_back(cfg.field);
        if (fields.empty()) fail(ErrorKind::Parse, "sweep needs --q-list or --field");
        const bool generated = !sw.family.empty();
        if (generated == !cfg.equation.empty()) fail(ErrorKind::Parse, "sweep needs exactly one of --eq and --family");
        if (generated && sw.family != "diag" && sw.family != "carlitz") {
            fail(ErrorKind::Parse, "--family must be diag or carlitz");
        }
        if (generated && !sw.n_range) fail(ErrorKind::Parse, "--family needs --n-range");
        if (sw.n_range && sw.n_range->first > sw.n_range->second) fail(ErrorKind::Parse, "empty --n-range");
        if (sw.n_range && sw.n_range->first < 2) fail(ErrorKind::Parse, "--n-range must start at 2 or more");
        if (generated && (sw.instances == 0 || sw.m_max == 0)) fail(ErrorKind::Parse, "--instances and --m-max must be positive");

        std::mt19937_64 rng(sw.seed);
        bool any_mismatch = false;
        if (cfg.output == OutputFormat::Tsv) {
            out << "q\tn\tequation\thypotheses\tformula_method\tformula_value\tbrute_value\tmatch\n";
        }
        for (const auto& field_text : fields) {
            const Field f = sw.q_list.empty() ? detail::field_of(cfg, field_text) : detail::field_of_order(cfg, field_text);
            std::vector<Equation> equations;
            if (!generated) {
                const Equation eq = parse_equation(cfg.equation, f);
                if (sw.n_range && (variable_count(eq) < sw.n_range->first || variable_count(eq) > sw.n_range->second)) {
                    fail(ErrorKind::Parse, "--eq has " + std::to_string(variable_count(eq)) + " variables, outside --n-range");
                }
                equations.push_back(eq);
            } else {
                for (std::size_t n = sw.n_range->first; n <= sw.n_range->second; ++n) {
                    for (std::size_t i = 0; i < sw.instances; ++i) {
                        Equation eq = detail::random_equation(sw.family, f, n, sw.m_max, rng);
                        for (int attempt = 0; sw.only_applicable && !closed_form_applies(eq, f, cfg.restricted); ++attempt) {
                            if (attempt == 10'000) fail(ErrorKind::NoApplicableFormula, "no applicable instance found");
                            eq = detail::random_equation(sw.family, f, n, sw.m_max, rng);
                        }
                        equations.push_back(std::move(eq));
                    }
                }
            }

            for (const auto& eq : equations) {
                const std::size_t n = variable_count(eq);
                const auto formula = detail::try_formula(eq, f, cfg);
                std::optional<Integer> brute;
                if (tuple_space(f.order(), n) <= cfg.work_cap) {
                    brute = count(eq, f, cfg.count_options(MethodMode::ForceBrute)).value;
                }
                std::optional<bool> match;
                if (formula.report && brute) match = formula.report->value == *brute;
                if (match == false) any_mismatch = true;

                if (cfg.output == OutputFormat::Json) {
                    Json hyps = Json::array();
                    for (const auto& h : formula.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}});
                    Json row = {{"q", f.order()}, {"n", n}, {"equation", to_text(eq)}, {"hypotheses", hyps}};
                    row["formula_method"] = formula.report ? Json(std::string(to_string(formula.report->method))) : Json(formula.status);
                    row["formula_value"] = formula.report ? integer_to_json(formula.report->value) : Json(nullptr);
                    row["brute_value"] = brute ? integer_to_json(*brute) : Json(nullptr);
                    row["match"] = match ? Json(*match) : Json(nullptr);
                    out << row.dump() << "\n";
                } else {
                    out << f.order() << "\t" << n << "\t" << to_text(eq) << "\t" << hypotheses_to_text(formula.hypotheses)
                        << "\t" << (formula.report ? std::string(to_string(formula.report->method)) : formula.status)
                        << "\t" << (formula.report ? formula.report->value.str() : "") << "\t"
                        << (brute ? brute->str() : "") << "\t" << (match ? (*match ? "1" : "0") : "") << "\n";
                }
            }
        }
        return any_mismatch ? exit_status::mismatch : exit_status::ok;
    });
}

inline int cmd_bijection_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Field f = detail::field_of(cfg, cfg.field);
        const Equation eq = detail::equation_of(cfg, f);
        const std::size_t n = variable_count(eq);
        const BruteOptions brute = cfg.brute();
        require_within_cap(f.order(), n + 1, brute.work_cap);

        std::optional<FiberFamily> family;
        if (const auto* diag = std::get_if<DiagonalEquation>(&eq)) {
            family = FiberFamily::diagonal(f, *diag);
        } else if (const auto* carlitz = std::get_if<CarlitzEquation>(&eq)) {
            family = FiberFamily::carlitz(f, *carlitz);
        } else {
            fail(ErrorKind::NoApplicableFormula, "bijection checks cover diag and carlitz equations only");
        }

        // One slot per nonzero c; workers take interleaved c values.
        const std::uint32_t q = f.order();
        std::vector<std::optional<BijectionCertificate>> certs(q - 1);
        std::vector<std::string> failures(q - 1);
        std::vector<std::exception_ptr> errors(q - 1);
        auto work = [&](unsigned w, unsigned stride) {
            for (std::uint32_t c = 1 + w; c < q; c += stride) {
                try {
                    certs[c - 1] = verify_bijection(*family, Element{c}, brute);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NotABijection) {
                        errors[c - 1] = std::current_exception();
                    } else {
                        failures[c - 1] = e.what();
                    }
                }
            }
        };
        const unsigned workers = std::max(1U, std::min<unsigned>(cfg.workers, q - 1));
        std::vector<std::thread> threads;
        for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work, w, workers);
        work(0, workers);
        for (auto& t : threads) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }

        const IdentityReport identities = verify_identities(*family, brute);
        bool pass = identities.all_hold();
        Json cert_json = Json::array();
        for (std::uint32_t c = 1; c < q; ++c) {
            Json entry = {{"c", c}};
            if (certs[c - 1]) {
                entry["certificate"] = to_json(*certs[c - 1], cfg.include_pairing);
                entry["holds"] = true;
            } else {
                entry["error"] = failures[c - 1];
                entry["holds"] = false;
                pass = false;
            }
            cert_json.push_back(entry);
        }
        std::uint64_t partition_sum = 0;
        for (auto v : identities.restricted_fiber_sizes) partition_sum += v;

        Json report = {{"q", q}, {"n", n}, {"equation", to_text(eq)}, {"kind", std::string(to_string(family->kind()))}};
        if (family->kind() == FiberKind::DiagPrimeVariable) report["pivot"] = family->pivot();
        report["certificates"] = cert_json;
        report["identities"] = to_json(identities);
        report["partition_sum"] = partition_sum;
        report["pass"] = pass;
        if (cfg.output == OutputFormat::Json) {
            out << report.dump() << "\n";
        } else {
            out << "section\tname\tlhs\trhs\tholds\n";
            for (std::uint32_t c = 1; c < q; ++c) {
                const auto& cert = certs[c - 1];
                out << "bijection\tc=" << c << "\t" << (cert ? std::to_string(cert->source_size) : "") << "\t"
                    << (cert ? std::to_string(cert->target_size) : "") << "\t" << (cert ? "1" : "0") << "\n";
            }
            for (const auto& check : identities.checks) {
                out << "identity\t" << check.name << "\t" << check.lhs << "\t" << check.rhs << "\t"
                    << (check.holds ? "1" : "0") << "\n";
            }
            out << "summary\tpass\t" << partition_sum << "\t\t" << (pass ? "1" : "0") << "\n";
        }
        return pass ? exit_status::ok : exit_status::mismatch;
    });
}

inline int cmd_show_elements(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const Field f = detail::field_of(cfg, cfg.field);
        if (cfg.output == OutputFormat::Tsv) {
            out << "index\telement\n";
            for (auto x : f.elements()) out << x.index() << "\t" << f.to_string(x) << "\n";
            return exit_status::ok;
        }
        Json elems = Json::array();
        for (auto x : f.elements()) elems.push_back({{"index", x.index()}, {"element", f.to_string(x)}});
        Json j = {{"q", f.order()},
                  {"p", f.characteristic()},
                  {"s", f.degree()},
                  {"modulus", f.modulus()},
                  {"generator", f.generator().index()},
                  {"elements", elems}};
        out << j.dump() << "\n";
        return exit_status::ok;
    });
}

}  // namespace ffcount::cli
