#pragma once

#include "numrepair/cqa.hpp"
#include "numrepair/evaluator.hpp"

#include "json.hpp"

namespace numrepair {

nlohmann::json rational_json(const Rational& r);   // integer, or "p/q" string
nlohmann::json value_json(const Value& v);
nlohmann::json limits_json(const Limits& limits);

// [{relation,row,attribute,value}]: the same shape load_update_file reads.
nlohmann::json update_set_json(const UpdateSet& updates);

nlohmann::json violation_report_json(const ViolationReport& report);

nlohmann::json repair_report_json(const Instance& instance, const SupportFamily& family,
                                  Semantics semantics, const Limits& limits);

nlohmann::json repair_verdict_json(const RepairVerdict& verdict, Semantics semantics);

nlohmann::json cqa_verdict_json(const CqaVerdict& verdict);

nlohmann::json linear_system_json(const LinearSystem& sys);

nlohmann::json solve_result_json(const SolveResult& result);

} // namespace numrepair
