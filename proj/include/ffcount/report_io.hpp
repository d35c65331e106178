#pragma once

// JSON and TSV encodings of count reports and bijection checks.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ffcount/bijections.hpp"
#include "ffcount/counting.hpp"
#include "ffcount/error.hpp"
#include "ffcount/parse.hpp"

namespace ffcount {

using Json = nlohmann::ordered_json;

/// Counts that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline Json integer_to_json(const Integer& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
}

inline Integer integer_from_json(const Json& j) {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    fail(ErrorKind::Parse, "expected an integer");
}

inline Json to_json(const CountReport& r) {
    Json hyps = Json::array();
    for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}});
    return {{"q", r.q},
            {"n", r.n},
            {"value", integer_to_json(r.value)},
            {"method", std::string(to_string(r.method))},
            {"restricted", r.restricted},
            {"hypotheses", hyps}};
}

inline CountReport count_report_from_json(const Json& j) {
    try {
        CountReport r;
        r.q = j.at("q").get<std::uint64_t>();
        r.n = j.at("n").get<std::size_t>();
        r.value = integer_from_json(j.at("value"));
        const auto method = parse_method(j.at("method").get<std::string>());
        if (!method) fail(ErrorKind::Parse, "unknown method");
        r.method = *method;
        r.restricted = j.at("restricted").get<bool>();
        for (const auto& h : j.at("hypotheses")) r.hypotheses.push_back({h.at("name").get<std::string>(), h.at("holds").get<bool>()});
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, e.what());
    }
}

inline constexpr std::string_view kCountTsvHeader = "q\tn\tvalue\tmethod\trestricted\thypotheses";

/// Hypotheses as "name=1,name=0".
inline std::string hypotheses_to_text(const std::vector<Hypothesis>& hyps) {
    std::string out;
    for (const auto& h : hyps) {
        if (!out.empty()) out += ",";
        out += h.name + "=" + (h.holds ? "1" : "0");
    }
    return out;
}

inline std::vector<Hypothesis> hypotheses_from_text(std::string_view text) {
    std::vector<Hypothesis> out;
    if (text.empty()) return out;
    for (auto item : detail::split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || (item.substr(eq + 1) != "1" && item.substr(eq + 1) != "0")) {
            fail(ErrorKind::Parse, "bad hypothesis entry '" + std::string(item) + "'");
        }
        out.push_back({std::string(item.substr(0, eq)), item.substr(eq + 1) == "1"});
    }
    return out;
}

inline std::string to_tsv_row(const CountReport& r) {
    return std::to_string(r.q) + "\t" + std::to_string(r.n) + "\t" + r.value.str() + "\t" +
           std::string(to_string(r.method)) + "\t" + (r.restricted ? "1" : "0") + "\t" + hypotheses_to_text(r.hypotheses);
}

inline CountReport count_report_from_tsv_row(std::string_view row) {
    const auto cols = detail::split(row, '\t');
    if (cols.size() != 6) fail(ErrorKind::Parse, "expected 6 TSV columns");
    CountReport r;
    r.q = detail::parse_uint(cols[0], "q");
    r.n = detail::parse_uint(cols[1], "n");
    r.value = Integer(std::string(cols[2]));
    const auto method = parse_method(cols[3]);
    if (!method) fail(ErrorKind::Parse, "unknown method '" + std::string(cols[3]) + "'");
    r.method = *method;
    if (cols[4] != "0" && cols[4] != "1") fail(ErrorKind::Parse, "restricted must be 0 or 1");
    r.restricted = cols[4] == "1";
    r.hypotheses = hypotheses_from_text(cols[5]);
    return r;
}

inline Json tuple_to_json(const Tuple& x) {
    Json out = Json::array();
    for (auto e : x) out.push_back(e.index());
    return out;
}

inline Json to_json(const BijectionCertificate& cert, bool include_pairing = false) {
    Json out = {{"source_c", cert.source_c.index()},
                {"target_c", cert.target_c.index()},
                {"source_size", cert.source_size},
                {"target_size", cert.target_size},
                {"pairing_stored", cert.pairing_stored},
                {"pairing_hash", cert.pairing_hash},
                {"inverse_verified", cert.inverse_verified}};
    if (include_pairing && cert.pairing_stored) {
        Json pairs = Json::array();
        for (const auto& [x, y] : cert.pairing) pairs.push_back({tuple_to_json(x), tuple_to_json(y)});
        out["pairing"] = pairs;
    }
    return out;
}

inline Json to_json(const IdentityReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
    }
    return {{"kind", std::string(to_string(report.kind))},
            {"fiber_sizes", report.fiber_sizes},
            {"restricted_fiber_sizes", report.restricted_fiber_sizes},
            {"checks", checks},
            {"pass", report.all_hold()}};
}

}  // namespace ffcount
