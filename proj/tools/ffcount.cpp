#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "ffcount/cli.hpp"

namespace {

std::pair<std::size_t, std::size_t> parse_n_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const auto n = ffcount::detail::parse_uint(text, "--n-range");
        return {n, n};
    }
    return {ffcount::detail::parse_uint(text.substr(0, colon), "--n-range"),
            ffcount::detail::parse_uint(text.substr(colon + 1), "--n-range")};
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ffcount;
    cli::RunConfig cfg;
    std::string method = "auto";
    std::string output = "json";
    std::string q_list;
    std::string n_range;

    CLI::App app{"Exact solution counts for diagonal, Carlitz-type and quasi-homogeneous equations over finite fields"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_eq) {
        sub->add_option("--field", cfg.field, "Field as p or p^s, e.g. 7 or 3^2");
        if (needs_eq) sub->add_option("--eq", cfg.equation, "Equation, e.g. \"diag a=1,1 m=1,3\"");
        sub->add_option("--output", output, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
        sub->add_option("--cap", cfg.work_cap, "Maximum tuple evaluations")->envname("FFCOUNT_CAP")->check(CLI::PositiveNumber);
        sub->add_option("--workers", cfg.workers, "Worker threads")->envname("FFCOUNT_WORKERS")->check(CLI::PositiveNumber);
        sub->add_option("--field-cap", cfg.field_cap, "Largest accepted field order")->check(CLI::PositiveNumber);
    };

    auto* count = app.add_subcommand("count", "Count solutions, by closed form when one applies");
    add_common(count, true);
    count->add_option("--method", method, "auto, force-brute or force-formula")
        ->check(CLI::IsMember({"auto", "force-brute", "force-formula"}));
    count->add_flag("--restricted", cfg.restricted, "Count only solutions with every coordinate nonzero");

    auto* verify = app.add_subcommand("verify", "Compare the closed form against enumeration");
    add_common(verify, true);
    verify->add_flag("--restricted", cfg.restricted, "Count only solutions with every coordinate nonzero");
    verify->add_option("--fault-offset", cfg.fault_offset)->group("");

    auto* sweep = app.add_subcommand("sweep", "Tabulate closed forms and enumeration over fields and instances");
    add_common(sweep, true);
    sweep->add_flag("--restricted", cfg.restricted, "Count only solutions with every coordinate nonzero");
    sweep->add_option("--q-list", q_list, "Comma-separated field orders, e.g. 3,5,7,9 (p^s also accepted)");
    sweep->add_option("--n-range", n_range, "Variable counts lo:hi for generated instances");
    sweep->add_option("--family", cfg.sweep.family, "Generate random instances: diag or carlitz");
    sweep->add_option("--instances", cfg.sweep.instances, "Generated instances per (field, n)");
    sweep->add_option("--m-max", cfg.sweep.m_max, "Largest generated exponent");
    sweep->add_option("--seed", cfg.sweep.seed, "Seed for generated instances");
    sweep->add_flag("--only-applicable", cfg.sweep.only_applicable, "Keep only instances with a closed form");

    auto* bij = app.add_subcommand("bijection-check", "Verify the fiber bijections and counting identities");
    add_common(bij, true);
    bij->add_flag("--pairing", cfg.include_pairing, "Include explicit pairings in the report");

    auto* show = app.add_subcommand("show-elements", "Print the index to polynomial table of a field");
    add_common(show, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_status::parse;
    }

    static const std::map<std::string, MethodMode> modes = {
        {"auto", MethodMode::Auto}, {"force-brute", MethodMode::ForceBrute}, {"force-formula", MethodMode::ForceFormula}};
    cfg.method = modes.at(method);
    cfg.output = output == "tsv" ? cli::OutputFormat::Tsv : cli::OutputFormat::Json;

    try {
        if (!q_list.empty()) {
            for (auto part : ffcount::detail::split(q_list, ',')) cfg.sweep.q_list.emplace_back(ffcount::detail::strip(part));
        } else if (sweep->parsed() && sweep->count("--q-list") > 0) {
            throw Error(ErrorKind::Parse, "empty --q-list");
        }
        if (!n_range.empty()) cfg.sweep.n_range = parse_n_range(n_range);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_status::parse;
    }

    if (count->parsed()) return cli::cmd_count(cfg, std::cout, std::cerr);
    if (verify->parsed()) return cli::cmd_verify(cfg, std::cout, std::cerr);
    if (sweep->parsed()) return cli::cmd_sweep(cfg, std::cout, std::cerr);
    if (bij->parsed()) return cli::cmd_bijection_check(cfg, std::cout, std::cerr);
    return cli::cmd_show_elements(cfg, std::cout, std::cerr);
}
