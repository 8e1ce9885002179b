#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "stc/decode.hpp"
#include "stc/errors.hpp"
#include "stc/outcome_code.hpp"
#include "stc/sparsify.hpp"
#include "stc/spacetime.hpp"

namespace {

using nlohmann::json;

// Exit-code contract: 0 success, 2 parse, 3 validation, 4 budget, 5 internal.
constexpr int EXIT_PARSE = 2;
constexpr int EXIT_VALIDATION = 3;
constexpr int EXIT_BUDGET = 4;
constexpr int EXIT_INTERNAL = 5;

std::string read_input(const std::string &path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw stc::ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string pauli_string(const stc::PhasedPauli &p) { return p.to_string(); }

std::string bits_string(const stc::BitVec &v) {
    std::string s(v.size(), '0');
    for (size_t i = 0; i < v.size(); i++)
        if (v.get(i)) s[i] = '1';
    return s;
}

int cmd_validate(const std::string &path) {
    stc::Circuit c = stc::Circuit::parse_unvalidated(read_input(path));
    auto diags = c.validate();
    for (const auto &d : diags)
        std::cerr << "level " << d.level << ": " << d.message << "\n";
    if (!diags.empty()) return EXIT_VALIDATION;
    std::cout << "ok: qubits=" << c.num_qubits() << " depth=" << c.depth()
              << " operations=" << c.operations().size()
              << " measurements=" << c.num_measurements() << "\n";
    return 0;
}

int cmd_checks(const std::string &path, bool as_json, bool emit_linearized) {
    stc::Circuit c = stc::Circuit::parse(read_input(path));
    stc::OutcomeAnalysis a = stc::compute_outcome_code(c);

    std::ostream &report = emit_linearized ? std::cerr : std::cout;
    if (as_json) {
        report << stc::outcome_analysis_json(a) << "\n";
    } else {
        report << "m=" << a.code.m << " checks=" << a.code.num_checks()
               << " k=" << a.code.dimension()
               << " linear=" << (a.code.is_linear() ? "yes" : "no") << "\n";
        for (const auto &ch : a.code.checks)
            report << "check " << bits_string(ch.u) << " " << (ch.b ? 1 : 0) << "\n";
        for (const auto &g : a.group.generators)
            report << "output-stabilizer " << pauli_string(g) << "\n";
    }
    if (emit_linearized) std::cout << stc::linearize(c).serialize();
    return 0;
}

int cmd_spacetime(const std::string &path, const std::string &format, bool verify) {
    stc::Circuit c = stc::Circuit::parse(read_input(path));
    stc::OutcomeAnalysis a = stc::compute_outcome_code(c);
    stc::SpacetimeCode code = stc::build_spacetime_code(c, a.code);

    if (verify) {
        for (size_t i = 0; i < code.stabilizers.size(); i++)
            for (size_t j = i + 1; j < code.stabilizers.size(); j++)
                if (stc::commutator(code.stabilizers[i], code.stabilizers[j]))
                    throw stc::InternalError("check operators do not commute");
        for (const auto &u : code.check_basis)
            if (stc::check_operator(c, u) != stc::check_operator_forward(c, u))
                throw stc::InternalError("forward/backward check operators differ");
        std::cerr << "verify: " << code.stabilizers.size()
                  << " stabilizers commuting, forward/backward equal\n";
    }

    if (format == "alist") {
        std::cout << stc::export_alist(code.stabilizers, code.N);
    } else if (format == "mm") {
        std::cout << stc::export_matrix_market(code.stabilizers, code.N);
    } else if (format == "json") {
        std::cout << stc::spacetime_metadata_json(code) << "\n";
    } else {
        std::cout << "N=" << code.N << " K=" << code.K << " r=" << code.r << "\n";
        for (const auto &S : code.stabilizers)
            std::cout << "stabilizer " << S.to_string() << "\n";
        std::cout << "logical-generators " << code.logical_gens.size() << "\n";
    }
    return 0;
}

int cmd_sparsify(const std::string &path, uint32_t max_weight, bool as_json, bool skip_budget,
                 size_t budget) {
    stc::Circuit c = stc::Circuit::parse(read_input(path));
    stc::SparsifyOptions opt;
    opt.skip_budget_exceeded = skip_budget;
    opt.generator_budget = budget;
    stc::SparsifyResult res = stc::low_weight_stabilizers(c, max_weight, opt);

    if (res.report.fallback)
        std::cerr << "warning: connected weight-" << max_weight
                  << " stabilizers do not span; falling back to original checks\n";
    if (res.report.budget_hits)
        std::cerr << "warning: " << res.report.budget_hits << " balls skipped over budget\n";

    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["max_weight"] = max_weight;
        j["connected"] = json::array();
        for (const auto &F : res.connected) j["connected"].push_back(F.to_string());
        j["basis"] = json::array();
        for (const auto &F : res.basis) j["basis"].push_back(F.to_string());
        json hist = json::object();
        for (const auto &[w, count] : res.report.weight_histogram)
            hist[std::to_string(w)] = count;
        j["report"] = {{"balls_processed", res.report.balls_processed},
                       {"budget_hits", res.report.budget_hits},
                       {"fallback", res.report.fallback},
                       {"weight_histogram", hist}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "connected=" << res.connected.size() << " basis=" << res.basis.size()
                  << " fallback=" << (res.report.fallback ? "yes" : "no") << "\n";
        for (const auto &F : res.basis)
            std::cout << "generator weight=" << F.weight() << " " << F.to_string() << "\n";
        for (const auto &[w, count] : res.report.weight_histogram)
            std::cout << "histogram " << w << " " << count << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string &path, double p, uint64_t trials, uint64_t seed,
                 uint32_t max_faults, const std::string &table_path) {
    stc::Circuit c = stc::Circuit::parse(read_input(path));
    stc::OutcomeAnalysis a = stc::compute_outcome_code(c);
    if (!a.code.is_linear())
        throw stc::ValidationError(
            "circuit has affine checks; run `stc checks --emit-linearized` first");
    stc::SpacetimeCode code = stc::build_spacetime_code(c, a.code);
    stc::NoiseModel nm = stc::NoiseModel::uniform(p);
    stc::LookupDecoder d = stc::build_lookup_decoder(c, code, nm, max_faults);
    if (!table_path.empty()) {
        std::ofstream out(table_path, std::ios::binary);
        if (!out) throw stc::ValidationError("cannot open '" + table_path + "'");
        std::string bytes = stc::dump_lookup_table(d);
        out.write(bytes.data(), std::streamsize(bytes.size()));
    }
    stc::TrialReport rep = stc::monte_carlo(c, a, nm, d, trials, seed);

    uint64_t failures = rep.outcome_failures + rep.residual_failures;
    double rate = trials ? double(failures) / double(trials) : 0.0;
    double half = trials ? 1.96 * std::sqrt(rate * (1.0 - rate) / double(trials)) : 0.0;
    json j;
    j["schema_version"] = 1;
    j["trials"] = rep.trials;
    j["failures"] = failures;
    j["rate"] = rate;
    j["ci95"] = {std::max(0.0, rate - half), std::min(1.0, rate + half)};
    j["seed"] = rep.seed;
    j["max_faults"] = max_faults;
    j["p"] = p;
    j["successes"] = rep.successes;
    j["outcome_failures"] = rep.outcome_failures;
    j["residual_failures"] = rep.residual_failures;
    j["input_gauge_successes"] = rep.input_gauge_successes;
    j["misses"] = rep.misses;
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Outcome codes, spacetime stabilizer codes, and fault decoding "
                 "for Clifford circuits"};
    app.require_subcommand(1);

    std::string path;
    bool as_json = false, emit_linearized = false, verify = false, skip_budget = false;
    std::string format = "text", table_path;
    uint32_t max_weight = 4, max_faults = 1;
    size_t gen_budget = 20;
    double p = 0.0;
    uint64_t trials = 0, seed = 0;

    CLI::App *validate = app.add_subcommand("validate", "Parse and validate a circuit file");
    validate->add_option("path", path, "circuit file ('-' for stdin)")->required();

    CLI::App *checks = app.add_subcommand("checks", "Outcome code and output stabilizers");
    checks->add_option("path", path)->required();
    checks->add_flag("--json", as_json, "JSON report");
    checks->add_flag("--emit-linearized", emit_linearized,
                     "write the sign-fixed circuit to stdout (report moves to stderr)");

    CLI::App *spacetime = app.add_subcommand("spacetime", "Spacetime stabilizer code");
    spacetime->add_option("path", path)->required();
    auto *alist_flag = spacetime->add_flag("--alist", "check matrix in alist format");
    auto *mm_flag = spacetime->add_flag("--mm", "check matrix in Matrix Market format");
    auto *json_flag = spacetime->add_flag("--json", "metadata as JSON");
    alist_flag->excludes(mm_flag)->excludes(json_flag);
    mm_flag->excludes(json_flag);
    spacetime->add_flag("--verify", verify, "re-check commutation and sweep equality");

    CLI::App *sparsify = app.add_subcommand("sparsify", "Low-weight stabilizer generators");
    sparsify->add_option("path", path)->required();
    sparsify->add_option("--max-weight", max_weight, "weight bound M")->required();
    sparsify->add_flag("--json", as_json, "JSON report");
    sparsify->add_flag("--skip-budget-exceeded", skip_budget, "skip over-budget balls");
    sparsify->add_option("--generator-budget", gen_budget, "per-ball generator budget");

    CLI::App *simulate = app.add_subcommand("simulate", "Monte-Carlo decoding trials");
    simulate->add_option("path", path)->required();
    simulate->add_option("--p", p, "fault probability per location")->required();
    simulate->add_option("--trials", trials, "number of trials")->required();
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--max-faults", max_faults, "decoder enumeration bound M_f")
        ->required();
    simulate->add_option("--table", table_path, "dump the lookup table to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return EXIT_PARSE;
    }

    try {
        if (validate->parsed()) return cmd_validate(path);
        if (checks->parsed()) return cmd_checks(path, as_json, emit_linearized);
        if (spacetime->parsed()) {
            if (alist_flag->count()) format = "alist";
            else if (mm_flag->count()) format = "mm";
            else if (json_flag->count()) format = "json";
            return cmd_spacetime(path, format, verify);
        }
        if (sparsify->parsed())
            return cmd_sparsify(path, max_weight, as_json, skip_budget, gen_budget);
        if (simulate->parsed())
            return cmd_simulate(path, p, trials, seed, max_faults, table_path);
        std::cerr << "error: no subcommand\n";
        return EXIT_PARSE;
    } catch (const stc::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const stc::ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const stc::DimensionError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const stc::BudgetError &e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return EXIT_BUDGET;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return EXIT_INTERNAL;
    }
}
