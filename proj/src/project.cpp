#include "numrepair/project.hpp"

#include "numrepair/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace numrepair {

namespace {

std::string slurp(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(Error::Kind::Load, "cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json parse_json_file(const std::filesystem::path& file) {
    try {
        return nlohmann::json::parse(slurp(file));
    } catch (const nlohmann::json::exception& e) {
        fail(Error::Kind::Load, file.string() + ": " + e.what());
    }
}

Rational json_rational(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        if (auto r = Rational::parse(v.get<std::string>())) return *r;
        fail(Error::Kind::Load, where + ": cannot parse number " + v.get<std::string>());
    }
    fail(Error::Kind::Load, where + ": expected an integer or a rational string");
}

Limits load_limits(const std::filesystem::path& file) {
    Limits limits;
    if (!std::filesystem::exists(file)) return limits;
    nlohmann::json cfg = parse_json_file(file);
    if (!cfg.is_object()) fail(Error::Kind::Load, file.string() + ": expected an object");
    if (cfg.contains("max_support_size"))
        limits.max_support_size = cfg["max_support_size"].get<std::size_t>();
    if (cfg.contains("branch_cap")) limits.branch_cap = cfg["branch_cap"].get<std::uint64_t>();
    if (cfg.contains("solver")) {
        const auto& s = cfg["solver"];
        if (s.contains("box_scale")) limits.solver.box_scale = s["box_scale"].get<long>();
        if (s.contains("max_nodes")) limits.solver.max_nodes = s["max_nodes"].get<std::uint64_t>();
        if (s.contains("explicit_box"))
            limits.solver.explicit_box = json_rational(s["explicit_box"], file.string());
    }
    return limits;
}

} // namespace

Project load_project(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        fail(Error::Kind::Load, dir.string() + " is not a directory");
    Schema schema = parse_schema(slurp(dir / "schema.txt"));
    std::map<std::string, std::filesystem::path> csvs;
    for (const auto& rel : schema.relations) csvs.emplace(rel.name, dir / (rel.name + ".csv"));
    Instance instance = load_instance(schema, csvs);
    ConstraintSet constraints = parse_constraints(schema, slurp(dir / "constraints.txt"));
    Limits limits = load_limits(dir / "config.json");
    return Project{std::move(instance), std::move(constraints), limits};
}

UpdateSet load_update_file(const Instance& instance, const std::filesystem::path& file) {
    nlohmann::json doc = parse_json_file(file);
    if (!doc.is_array()) fail(Error::Kind::Load, file.string() + ": expected a JSON list");
    std::vector<AtomicUpdate> updates;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        std::string where = file.string() + "[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("relation") || !entry.contains("row") ||
            !entry.contains("attribute") || !entry.contains("value"))
            fail(Error::Kind::Load,
                 where + ": expected {relation, row, attribute, value}");
        CellRef cell{TupleId{entry["relation"].get<std::string>(),
                             entry["row"].get<std::size_t>()},
                     entry["attribute"].get<std::string>()};
        updates.push_back(AtomicUpdate{cell, Value::number(json_rational(entry["value"], where))});
    }
    return validate_update_set(instance, std::move(updates));
}

} // namespace numrepair
