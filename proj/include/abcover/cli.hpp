#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
//   abcover family   --variant main --m 2 --n 2 [--format json|table]
//   abcover validate <spec.json | ->
//   abcover analyze  <spec.json | ->
//   abcover table    --m 2..6 --n 2..6
//
// Exit codes: 0 ok, 1 validation failure, 2 malformed input, 3 unsupported.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "abcover/canonical.hpp"
#include "abcover/catalog.hpp"
#include "abcover/cover.hpp"
#include "abcover/errors.hpp"
#include "abcover/invariants.hpp"

namespace abcover::cli {

enum class Command { family, validate, analyze, table };
enum class Format { json, table };

enum ExitCode : int { ok = 0, validation_failed = 1, malformed = 2, unsupported = 3 };

struct CliConfig {
    Command command = Command::family;
    Variant variant = Variant::main;
    std::int64_t m = 2;
    std::int64_t n = 2;
    std::string input_path;
    Format format = Format::json;
    bool pretty = false;
    IntRange m_range;
    IntRange n_range;
};

/// "2..6" or "4".
inline IntRange parse_range(const std::string& s) {
    auto to_int = [&s](const std::string& t) -> std::int64_t {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(t, &used);
        } catch (const std::exception&) {
            throw MalformedInput("bad range '" + s + "'");
        }
        if (used != t.size()) throw MalformedInput("bad range '" + s + "'");
        return v;
    };
    const auto dots = s.find("..");
    IntRange r;
    if (dots == std::string::npos) {
        r.lo = r.hi = to_int(s);
    } else {
        r.lo = to_int(s.substr(0, dots));
        r.hi = to_int(s.substr(dots + 2));
    }
    if (r.lo > r.hi) throw MalformedInput("empty range '" + s + "'");
    return r;
}

namespace detail {

inline std::string dump(const nlohmann::json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

inline CoverSpec read_spec(const std::string& path, std::istream& in) {
    nlohmann::json j;
    try {
        if (path == "-") {
            j = nlohmann::json::parse(in);
        } else {
            std::ifstream file(path);
            if (!file) throw MalformedInput("cannot open '" + path + "'");
            j = nlohmann::json::parse(file);
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    return cover_spec_from_json(j);
}

inline std::string opt_str(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "-"; }

inline void print_table(std::ostream& out, const std::vector<FamilyRow>& rows) {
    out << std::left << std::setw(8) << "variant" << std::right << std::setw(4) << "m" << std::setw(4) << "n"
        << std::setw(8) << "K2" << std::setw(6) << "pg" << std::setw(4) << "q" << std::setw(6) << "deg"
        << std::setw(12) << "deg(Sigma)" << std::setw(6) << "bpf" << "  remark\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(8) << to_string(r.variant) << std::right << std::setw(4) << r.m
            << std::setw(4) << r.n << std::setw(8) << r.K2 << std::setw(6) << r.pg << std::setw(4) << r.q
            << std::setw(6) << opt_str(r.canonical_degree) << std::setw(12) << opt_str(r.image_degree)
            << std::setw(6) << (r.base_point_free ? (*r.base_point_free ? "yes" : "no") : "-") << "  "
            << r.remark.value_or("") << "\n";
    }
}

inline int run_family(const CliConfig& c, std::ostream& out) {
    const auto spec = family(c.variant, c.m, c.n);
    if (c.format == Format::json) {
        out << dump(nlohmann::json(spec), c.pretty) << "\n";
        return ok;
    }
    out << to_string(c.variant) << " family, m=" << c.m << ", n=" << c.n << ", blowups "
        << spec.surface().blowup_count() << "\n";
    for (const auto& b : spec.branch()) out << "  D_" << b.sigma.label() << " = " << to_string(b.cls) << "\n";
    for (const auto& [chi, l] : derive_L(spec)) out << "  L_" << chi.label() << " = " << to_string(l) << "\n";
    return ok;
}

inline int run_validate(const CliConfig& c, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto spec = read_spec(c.input_path, in);
    const auto rep = validate(spec);
    if (c.format == Format::json) {
        out << dump(nlohmann::json(rep), c.pretty) << "\n";
    } else {
        for (const auto& r : rep.relations)
            out << "chi_" << r.chi.label() << ": 2L = " << to_string(2 * r.L) << ", S = " << to_string(r.sum)
                << (r.pass ? "  pass" : "  FAIL residual " + to_string(r.residual)) << "\n";
        out << rep.relations_passed() << "/" << rep.relations.size() << " relations pass\n";
    }
    for (const auto& chi : rep.failing_characters())
        err << "relation for chi_" << chi.label() << " fails: 2L_chi != sum of D_sigma with chi(sigma) = -1\n";
    for (const auto& nt : rep.nontriviality)
        if (!nt.nontrivial) err << "L is trivial for chi_" << nt.chi.label() << "\n";
    return rep.ok() ? ok : validation_failed;
}

inline int run_analyze(const CliConfig& c, std::istream& in, std::ostream& out) {
    const auto spec = read_spec(c.input_path, in);
    const auto L = derive_L(spec);
    const auto inv = numerical_invariants(spec, L);
    const auto mini = minimality_report(spec);
    const auto can = canonical_map_report(spec);
    nlohmann::json j = {{"invariants", inv}, {"minimality", mini}, {"canonical", can}, {"L", character_map_json(L)}};
    if (can.gamma_triv.order() == 2 && spec.assumptions().pairwise_transversal)
        j["quotient_nodes"] = quotient_nodes(spec, can.gamma_triv);
    if (c.format == Format::json) {
        out << dump(j, c.pretty) << "\n";
        return ok;
    }
    out << "K2 " << inv.k_squared << "  pg " << inv.p_g << "  chi " << inv.chi << "  q " << inv.q << "\n"
        << "2K_X = f^*(" << to_string(inv.two_K_class) << "), " << mini.verdict << "\n"
        << "trivially acting subgroup of order " << can.gamma_triv.order() << "\n";
    for (const auto& [chi, d] : can.eigen_dims) out << "  h0 eigenspace chi_" << chi.label() << " = " << d << "\n";
    out << "canonical degree "
        << (can.canonical_degree ? std::to_string(*can.canonical_degree)
                                 : ">= " + std::to_string(can.degree_factor) + " (uncertified)")
        << ", base points " << detail::opt_str(can.base_points) << ", image degree "
        << detail::opt_str(can.image_degree) << "\n";
    for (const auto& r : can.remarks) out << "remark: " << r << "\n";
    return ok;
}

inline int run_table(const CliConfig& c, std::ostream& out) {
    const auto rows = theorem_table(c.m_range, c.n_range);
    if (c.format == Format::json)
        out << dump(nlohmann::json(rows), c.pretty) << "\n";
    else
        print_table(out, rows);
    return ok;
}

}  // namespace detail

inline int run(const CliConfig& c, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        switch (c.command) {
            case Command::family: return detail::run_family(c, out);
            case Command::validate: return detail::run_validate(c, in, out, err);
            case Command::analyze: return detail::run_analyze(c, in, out);
            case Command::table: return detail::run_table(c, out);
        }
    } catch (const UnsupportedConfiguration& e) {
        err << "unsupported configuration: " << e.what() << "\n";
        return unsupported;
    } catch (const CoverDataError& e) {
        err << "invalid building data: " << e.what() << "\n";
        return validation_failed;
    } catch (const ConsistencyError& e) {
        err << "consistency check failed: " << e.what() << "\n";
        return validation_failed;
    } catch (const TableIntegrityError& e) {
        err << "table integrity: " << e.what() << "\n";
        return validation_failed;
    } catch (const Error& e) {
        err << "malformed input: " << e.what() << "\n";
        return malformed;
    }
    return malformed;
}

/// Parses `args` (without the program name) and runs the command.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Z_2^r abelian covers of P1 x P1: building data, invariants, canonical maps"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string variant = "main";
    std::string format = "json";
    std::int64_t m = 2;
    std::int64_t n = 2;
    std::string m_range = "2..6";
    std::string n_range = "2..6";
    bool pretty = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_flag("--pretty", pretty, "Indent JSON output");
    };

    auto* fam = app.add_subcommand("family", "Emit the cover spec of a catalog family");
    fam->add_option("--variant", variant, "main, var1 or var2")->check(CLI::IsMember({"main", "var1", "var2"}));
    fam->add_option("--m", m, "Parameter m >= 1");
    fam->add_option("--n", n, "Parameter n >= 1");
    add_common(fam);

    auto* val = app.add_subcommand("validate", "Check the building-data relations of a spec");
    val->add_option("input", cfg.input_path, "Spec file, or - for stdin")->required();
    add_common(val);

    auto* ana = app.add_subcommand("analyze", "Invariants and canonical-map report of a spec");
    ana->add_option("input", cfg.input_path, "Spec file, or - for stdin")->required();
    add_common(ana);

    auto* tab = app.add_subcommand("table", "Reproduce the family table over parameter ranges");
    tab->add_option("--m", m_range, "Range lo..hi");
    tab->add_option("--n", n_range, "Range lo..hi");
    add_common(tab);

    std::vector<std::string> argv_store{"abcover"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return malformed;
    }

    try {
        cfg.format = format == "table" ? Format::table : Format::json;
        cfg.pretty = pretty;
        if (fam->parsed()) {
            cfg.command = Command::family;
            cfg.variant = parse_variant(variant);
            cfg.m = m;
            cfg.n = n;
        } else if (val->parsed()) {
            cfg.command = Command::validate;
        } else if (ana->parsed()) {
            cfg.command = Command::analyze;
        } else {
            cfg.command = Command::table;
            cfg.m_range = parse_range(m_range);
            cfg.n_range = parse_range(n_range);
        }
    } catch (const Error& e) {
        err << "malformed input: " << e.what() << "\n";
        return malformed;
    }
    return run(cfg, in, out, err);
}

}  // namespace abcover::cli
