#include "numrepair/json_out.hpp"

namespace numrepair {

using nlohmann::json;

json rational_json(const Rational& r) {
    if (r.is_integer() && r.abs() <= Rational(1000000000L)) return r.to_long();
    return r.str();
}

json value_json(const Value& v) {
    return v.is_number() ? rational_json(v.num()) : json(v.str());
}

json limits_json(const Limits& limits) {
    json solver{{"box_scale", limits.solver.box_scale},
                {"max_nodes", limits.solver.max_nodes}};
    if (limits.solver.explicit_box)
        solver["explicit_box"] = rational_json(*limits.solver.explicit_box);
    return json{{"max_support_size", limits.max_support_size},
                {"branch_cap", limits.branch_cap},
                {"solver", solver}};
}

json update_set_json(const UpdateSet& updates) {
    json out = json::array();
    for (const AtomicUpdate& u : updates.updates)
        out.push_back(json{{"relation", u.cell.tuple.relation},
                           {"row", u.cell.tuple.row},
                           {"attribute", u.cell.attribute},
                           {"value", value_json(u.new_value)}});
    return out;
}

json violation_report_json(const ViolationReport& report) {
    json violations = json::array();
    for (const Violation& v : report.violations) {
        json theta = json::object();
        for (const auto& [var, value] : v.ground.theta) theta[var] = value_json(value);
        violations.push_back(json{{"constraint", v.ground.source},
                                  {"theta", theta},
                                  {"lhs", v.lhs.str()},
                                  {"cmp", comparator_text(v.ground.cmp)},
                                  {"k", v.ground.bound.str()}});
    }
    return json{{"consistent", report.consistent()},
                {"checked", report.checked},
                {"violations", violations}};
}

json repair_report_json(const Instance& instance, const SupportFamily& family,
                        Semantics semantics, const Limits& limits) {
    json supports = json::array();
    for (std::size_t i = 0; i < family.sets.size(); ++i) {
        json cells = json::array();
        for (const CellRef& c : family.sets[i])
            cells.push_back(json{{"relation", c.tuple.relation},
                                 {"row", c.tuple.row},
                                 {"attr", c.attribute}});
        json sample = json::array();
        for (const AtomicUpdate& u : family.samples[i].updates)
            sample.push_back(json{{"cell", u.cell.str()},
                                  {"old", value_json(instance.value(u.cell))},
                                  {"new", value_json(u.new_value)}});
        supports.push_back(json{{"cells", cells}, {"sample", sample}});
    }
    json out{{"semantics", semantics_text(semantics)},
             {"consistent", family.consistent},
             {"supports", supports},
             {"complete", family.complete},
             {"limits", limits_json(limits)}};
    if (family.kstar) out["kstar"] = *family.kstar;
    if (!family.notes.empty()) out["notes"] = family.notes;
    return out;
}

json repair_verdict_json(const RepairVerdict& verdict, Semantics semantics) {
    json out{{"semantics", semantics_text(semantics)},
             {"is_repair", verdict.is_repair},
             {"minimal", feasibility_text(verdict.minimal)}};
    if (!verdict.notes.empty()) out["notes"] = verdict.notes;
    return out;
}

json cqa_verdict_json(const CqaVerdict& verdict) {
    json out{{"semantics", semantics_text(verdict.semantics)},
             {"answer", cqa_answer_text(verdict.answer)},
             {"holds_now", verdict.holds_now},
             {"no_repair", verdict.no_repair},
             {"limits", limits_json(verdict.limits)}};
    if (verdict.witness) out["witness"] = update_set_json(*verdict.witness);
    if (!verdict.notes.empty()) out["notes"] = verdict.notes;
    return out;
}

json linear_system_json(const LinearSystem& sys) {
    json vars = json::array();
    for (const SystemVar& v : sys.vars)
        vars.push_back(json{{"cell", v.cell.str()},
                            {"domain", domain_name(v.domain)},
                            {"original", rational_json(v.original)}});
    json rows = json::array();
    for (const LinRow& r : sys.rows) {
        json coeffs = json::array();
        for (const Rational& c : r.coeffs) coeffs.push_back(rational_json(c));
        rows.push_back(json{{"coeffs", coeffs},
                            {"rel", row_rel_text(r.rel)},
                            {"rhs", rational_json(r.rhs)},
                            {"note", r.note}});
    }
    return json{{"vars", vars}, {"ineqs", rows}};
}

json solve_result_json(const SolveResult& result) {
    json out{{"status", solve_status_text(result.status)}, {"nodes", result.nodes}};
    if (result.status == SolveStatus::Feasible) {
        json witness = json::object();
        for (const auto& [cell, value] : result.witness)
            witness[cell.str()] = rational_json(value);
        out["witness"] = witness;
    }
    if (!result.certificate_notes.empty()) out["certificate"] = result.certificate_notes;
    return out;
}

} // namespace numrepair
