#include "numrepair/circuit.hpp"
#include "numrepair/json_out.hpp"
#include "numrepair/project.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

using namespace numrepair;

constexpr int kExitTrue = 0;     // consistent / query true / repair checks out
constexpr int kExitFalse = 1;    // inconsistent / query false / not a repair
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;  // indeterminate within the declared limits

Semantics parse_semantics(const std::string& s) {
    if (s == "set") return Semantics::Set;
    if (s == "card") return Semantics::Card;
    fail(Error::Kind::Validate, "semantics must be 'set' or 'card'");
}

void apply_overrides(Limits& limits, std::optional<std::size_t> max_support,
                     std::optional<std::uint64_t> branch_cap) {
    if (const char* env = std::getenv("NUMREPAIR_MAX_BRANCHES")) {
        auto parsed = Rational::parse(env);
        if (!parsed || !parsed->is_integer() || parsed->sign() <= 0)
            fail(Error::Kind::Validate,
                 "NUMREPAIR_MAX_BRANCHES must be a positive integer, got '" +
                 std::string(env) + "'");
        limits.branch_cap = static_cast<std::uint64_t>(parsed->to_long());
    }
    if (max_support) limits.max_support_size = *max_support;
    if (branch_cap) limits.branch_cap = *branch_cap;
}

std::string cell_line(const Support& s) {
    std::string out;
    for (const CellRef& c : s) out += (out.empty() ? "" : ", ") + c.str();
    return "{" + out + "}";
}

int cmd_check(const std::string& dir, bool json) {
    Project project = load_project(dir);
    ViolationReport report = check(project.instance, project.constraints);
    if (json) {
        std::cout << violation_report_json(report).dump(2) << "\n";
    } else {
        std::cout << "checked " << report.checked << " ground constraint(s): "
                  << report.violations.size() << " violated\n";
        for (const Violation& v : report.violations) {
            std::string theta;
            for (const auto& [var, value] : v.ground.theta)
                theta += (theta.empty() ? "" : ", ") + var + "=" + value.display();
            std::cout << "  " << v.ground.source << " @ {" << theta << "}: lhs = "
                      << v.lhs.str() << ", needs " << comparator_text(v.ground.cmp) << " "
                      << v.ground.bound.str() << "\n";
        }
    }
    return report.consistent() ? kExitTrue : kExitFalse;
}

int cmd_repair(const std::string& dir, bool json, const std::string& semantics_name,
               std::optional<std::size_t> max_support, std::optional<std::uint64_t> branch_cap,
               bool dump_systems) {
    Project project = load_project(dir);
    apply_overrides(project.limits, max_support, branch_cap);
    Semantics semantics = parse_semantics(semantics_name);
    SupportFamily family =
        minimal_supports(project.instance, project.constraints, semantics, project.limits);

    if (json || dump_systems) {
        nlohmann::json out =
            repair_report_json(project.instance, family, semantics, project.limits);
        if (dump_systems) {
            ConstraintSet desugared = desugar_equalities(project.constraints);
            nlohmann::json systems = nlohmann::json::array();
            for (const Support& s : family.sets) {
                nlohmann::json branches = nlohmann::json::array();
                BranchSet bs = encode_support(project.instance, desugared, s);
                bs.for_each_branch(
                    [&](const LinearSystem& sys) {
                        nlohmann::json b = linear_system_json(sys);
                        b["solve"] = solve_result_json(solve(sys, project.limits.solver));
                        branches.push_back(std::move(b));
                        return false;
                    },
                    project.limits.branch_cap);
                systems.push_back(nlohmann::json{{"support", cell_line(s)},
                                                 {"branches", branches}});
            }
            out["systems"] = systems;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "semantics: " << semantics_text(semantics) << "\n";
        if (family.consistent) {
            std::cout << "instance is consistent; the empty repair is minimal\n";
        } else {
            if (family.kstar) std::cout << "k* = " << *family.kstar << "\n";
            for (std::size_t i = 0; i < family.sets.size(); ++i) {
                std::cout << "support " << cell_line(family.sets[i]) << ":";
                for (const AtomicUpdate& u : family.samples[i].updates)
                    std::cout << " " << u.cell.str() << " = "
                              << project.instance.value(u.cell).display() << " -> "
                              << u.new_value.display();
                std::cout << "\n";
            }
            if (family.sets.empty()) std::cout << "no feasible support found\n";
        }
        for (const auto& note : family.notes) std::cout << "note: " << note << "\n";
    }
    if (family.consistent) return kExitTrue;
    if (!family.sets.empty() || family.complete) return kExitFalse;
    return kExitUnknown;
}

int cmd_check_repair(const std::string& dir, bool json, const std::string& semantics_name,
                     const std::string& repair_file, std::optional<std::size_t> max_support,
                     std::optional<std::uint64_t> branch_cap) {
    Project project = load_project(dir);
    apply_overrides(project.limits, max_support, branch_cap);
    Semantics semantics = parse_semantics(semantics_name);
    UpdateSet updates = load_update_file(project.instance, repair_file);
    RepairVerdict verdict =
        check_repair(project.instance, project.constraints, updates, semantics, project.limits);
    if (json) {
        std::cout << repair_verdict_json(verdict, semantics).dump(2) << "\n";
    } else {
        std::cout << "repair: " << (verdict.is_repair ? "yes" : "no") << "\n";
        std::cout << "minimal (" << semantics_text(semantics)
                  << "): " << feasibility_text(verdict.minimal) << "\n";
        for (const auto& note : verdict.notes) std::cout << "note: " << note << "\n";
    }
    if (!verdict.is_repair) return kExitFalse;
    return verdict.minimal == Feasibility::Indeterminate ? kExitUnknown : kExitTrue;
}

int cmd_cqa(const std::string& dir, bool json, const std::string& semantics_name,
            const std::string& atom, std::optional<std::size_t> max_support,
            std::optional<std::uint64_t> branch_cap) {
    Project project = load_project(dir);
    apply_overrides(project.limits, max_support, branch_cap);
    Semantics semantics = parse_semantics(semantics_name);
    GroundAtom query = parse_ground_atom(project.instance.schema(), atom);
    CqaVerdict verdict =
        cqa(project.instance, project.constraints, query, semantics, project.limits);
    if (json) {
        std::cout << cqa_verdict_json(verdict).dump(2) << "\n";
    } else {
        std::cout << "query: " << print_ground_atom(query) << "\n";
        std::cout << "answer (" << semantics_text(semantics)
                  << "): " << cqa_answer_text(verdict.answer) << "\n";
        if (verdict.witness && !verdict.witness->empty()) {
            std::cout << "falsified by:";
            for (const AtomicUpdate& u : verdict.witness->updates)
                std::cout << " " << u.cell.str() << " -> " << u.new_value.display();
            std::cout << "\n";
        }
        for (const auto& note : verdict.notes) std::cout << "note: " << note << "\n";
    }
    switch (verdict.answer) {
        case CqaAnswer::True: return kExitTrue;
        case CqaAnswer::False: return kExitFalse;
        case CqaAnswer::Indeterminate: return kExitUnknown;
    }
    return kExitError;
}

int cmd_gen_circuit(std::size_t gates, std::size_t inputs, std::uint64_t seed,
                    const std::string& out_dir) {
    Circuit c = gen_circuit(gates, inputs, seed);
    write_circuit_project(c, out_dir);
    std::cout << "wrote " << out_dir << " (" << c.num_gates << " gate(s), " << c.num_inputs
              << " input(s), seed " << seed << ")\n";
    return kExitTrue;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numrepair: aggregate-constraint checking, repair and query answering"};
    app.require_subcommand(1);

    std::string dir, semantics = "set", repair_file, atom, out_dir;
    std::size_t gates = 1, inputs = 1;
    std::uint64_t seed = 0;
    bool json = false, dump_systems = false;
    std::optional<std::size_t> max_support;
    std::optional<std::uint64_t> branch_cap;

    auto add_common = [&](CLI::App* cmd, bool with_limits) {
        cmd->add_option("project", dir, "project directory")->required();
        cmd->add_flag("--json", json, "machine-readable output");
        if (with_limits) {
            cmd->add_option("--max-support", max_support, "largest support size searched");
            cmd->add_option("--branch-cap", branch_cap, "membership branch cap per support");
        }
    };

    CLI::App* c_check = app.add_subcommand("check", "evaluate all ground constraints");
    add_common(c_check, false);

    CLI::App* c_repair = app.add_subcommand("repair", "enumerate minimal repair supports");
    add_common(c_repair, true);
    c_repair->add_option("--semantics", semantics, "set or card")->capture_default_str();
    c_repair->add_flag("--dump-systems", dump_systems, "emit the branch systems as JSON");

    CLI::App* c_cr = app.add_subcommand("check-repair", "classify a candidate update set");
    add_common(c_cr, true);
    c_cr->add_option("--semantics", semantics, "set or card")->capture_default_str();
    c_cr->add_option("--repair", repair_file, "JSON update list")->required();

    CLI::App* c_cqa = app.add_subcommand("cqa", "consistent answer for a ground atom");
    add_common(c_cqa, true);
    c_cqa->add_option("--semantics", semantics, "set or card")->capture_default_str();
    c_cqa->add_option("--atom", atom, "ground atom Rel(v1,...,vn)")->required();

    CLI::App* c_gen = app.add_subcommand("gen-circuit", "write a NOR-circuit project");
    c_gen->add_option("--gates", gates, "number of gates (gate 0 is the output)")->required();
    c_gen->add_option("--inputs", inputs, "number of inputs")->required();
    c_gen->add_option("--seed", seed, "generator seed")->capture_default_str();
    c_gen->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (c_check->parsed()) return cmd_check(dir, json);
        if (c_repair->parsed())
            return cmd_repair(dir, json, semantics, max_support, branch_cap, dump_systems);
        if (c_cr->parsed())
            return cmd_check_repair(dir, json, semantics, repair_file, max_support, branch_cap);
        if (c_cqa->parsed()) return cmd_cqa(dir, json, semantics, atom, max_support, branch_cap);
        if (c_gen->parsed()) return cmd_gen_circuit(gates, inputs, seed, out_dir);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
