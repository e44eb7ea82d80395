#include "numrepair/instance.hpp"

#include "numrepair/error.hpp"

#include <fstream>
#include <sstream>

namespace numrepair {

std::string CellRef::str() const {
    return tuple.relation + "[" + std::to_string(tuple.row) + "]." + attribute;
}

Instance::Instance(Schema schema) : schema_(std::move(schema)) {
    tables_.resize(schema_.relations.size());
}

std::size_t Instance::relation_slot(std::string_view relation) const {
    for (std::size_t i = 0; i < schema_.relations.size(); ++i)
        if (schema_.relations[i].name == relation) return i;
    fail(Error::Kind::Validate, "unknown relation '" + std::string(relation) + "'");
}

const std::vector<Row>& Instance::rows(std::string_view relation) const {
    return tables_[relation_slot(relation)];
}

std::vector<Row>& Instance::rows(std::string_view relation) {
    return tables_[relation_slot(relation)];
}

namespace {

void check_row(const RelationSchema& rel, const Row& row) {
    if (row.size() != rel.attributes.size())
        fail(Error::Kind::Validate,
             "row for " + rel.name + " has " + std::to_string(row.size()) +
             " values, schema has " + std::to_string(rel.attributes.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!row[i].conforms(rel.attributes[i].domain))
            fail(Error::Kind::Validate,
                 rel.name + "." + rel.attributes[i].name + ": value " +
                 row[i].display() + " is not in domain " +
                 domain_name(rel.attributes[i].domain));
}

} // namespace

TupleId Instance::append_row(std::string_view relation, Row row) {
    std::size_t slot = relation_slot(relation);
    check_row(schema_.relations[slot], row);
    tables_[slot].push_back(std::move(row));
    return TupleId{std::string(relation), tables_[slot].size() - 1};
}

const Value& Instance::value(const TupleId& tuple, std::string_view attribute) const {
    std::size_t slot = relation_slot(tuple.relation);
    const auto& table = tables_[slot];
    if (tuple.row >= table.size())
        fail(Error::Kind::Validate,
             tuple.relation + " has no row " + std::to_string(tuple.row));
    const auto& rel = schema_.relations[slot];
    auto idx = rel.attribute_index(attribute);
    if (!idx) fail(Error::Kind::Validate,
                   tuple.relation + " has no attribute '" + std::string(attribute) + "'");
    return table[tuple.row][*idx];
}

const Value& Instance::value(const CellRef& cell) const {
    return value(cell.tuple, cell.attribute);
}

void Instance::set_value(const CellRef& cell, Value v) {
    std::size_t slot = relation_slot(cell.tuple.relation);
    auto& table = tables_[slot];
    if (cell.tuple.row >= table.size())
        fail(Error::Kind::Validate,
             cell.tuple.relation + " has no row " + std::to_string(cell.tuple.row));
    const auto& rel = schema_.relations[slot];
    auto idx = rel.attribute_index(cell.attribute);
    if (!idx) fail(Error::Kind::Validate,
                   cell.tuple.relation + " has no attribute '" + cell.attribute + "'");
    if (!v.conforms(rel.attributes[*idx].domain))
        fail(Error::Kind::Validate,
             cell.str() + ": value " + v.display() + " is not in domain " +
             domain_name(rel.attributes[*idx].domain));
    table[cell.tuple.row][*idx] = std::move(v);
}

std::vector<CellRef> Instance::measure_cells() const {
    std::vector<CellRef> cells;
    for (std::size_t slot = 0; slot < schema_.relations.size(); ++slot) {
        const auto& rel = schema_.relations[slot];
        for (std::size_t row = 0; row < tables_[slot].size(); ++row)
            for (const auto& attr : rel.attributes)
                if (attr.measure)
                    cells.push_back(CellRef{TupleId{rel.name, row}, attr.name});
    }
    return cells;
}

std::set<CellRef> UpdateSet::support() const {
    std::set<CellRef> cells;
    for (const auto& u : updates) cells.insert(u.cell);
    return cells;
}

UpdateSet validate_update_set(const Instance& instance, std::vector<AtomicUpdate> updates) {
    std::set<CellRef> seen;
    for (const auto& u : updates) {
        if (!seen.insert(u.cell).second)
            fail(Error::Kind::Validate, "duplicate update for cell " + u.cell.str());
        const auto& rel = instance.schema().relation(u.cell.tuple.relation);
        const auto& attr = rel.attribute(u.cell.attribute);
        if (!attr.measure)
            fail(Error::Kind::Validate,
                 u.cell.str() + " is not a measure attribute");
        if (!u.new_value.conforms(attr.domain))
            fail(Error::Kind::Validate,
                 u.cell.str() + ": value " + u.new_value.display() +
                 " is not in domain " + domain_name(attr.domain));
        if (instance.value(u.cell) == u.new_value)
            fail(Error::Kind::Validate,
                 u.cell.str() + ": update does not change the stored value " +
                 u.new_value.display());
    }
    return UpdateSet{std::move(updates)};
}

Instance apply_update_set(const Instance& instance, const UpdateSet& updates) {
    Instance out = instance;
    for (const auto& u : updates.updates) out.set_value(u.cell, u.new_value);
    return out;
}

namespace {

// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_record(std::string_view line, const std::string& where) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    bool field_was_quoted = false;
    auto push = [&] {
        if (!field_was_quoted) {
            std::size_t b = cur.find_first_not_of(" \t");
            std::size_t e = cur.find_last_not_of(" \t");
            cur = b == std::string::npos ? "" : cur.substr(b, e - b + 1);
        }
        fields.push_back(cur);
        cur.clear();
        field_was_quoted = false;
    };
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; i += 2; continue; }
                quoted = false;
                ++i;
            } else {
                cur += c;
                ++i;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
            field_was_quoted = true;
            ++i;
        } else if (c == ',') {
            push();
            ++i;
        } else {
            cur += c;
            ++i;
        }
    }
    if (quoted) fail(Error::Kind::Load, where + ": unterminated quote");
    push();
    return fields;
}

Value parse_field(const AttributeSchema& attr, const std::string& field, const std::string& where) {
    if (attr.domain == Domain::String) return Value::string(field);
    auto r = Rational::parse(field);
    if (!r) fail(Error::Kind::Load,
                 where + ": '" + field + "' is not a number for attribute " + attr.name);
    if (attr.domain == Domain::Integer && !r->is_integer())
        fail(Error::Kind::Load,
             where + ": '" + field + "' is not an integer for attribute " + attr.name);
    return Value::number(std::move(*r));
}

} // namespace

std::vector<Row> parse_relation_csv(const RelationSchema& rel, std::string_view csv,
                                    const std::string& source_name) {
    std::vector<Row> rows;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos <= csv.size()) {
        std::size_t nl = csv.find('\n', pos);
        std::string_view line = csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos
                                                                             : nl - pos);
        pos = nl == std::string_view::npos ? csv.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::string where = source_name + ":" + std::to_string(lineno);
        auto fields = split_csv_record(line, where);
        if (!saw_header) {
            if (fields.size() != rel.attributes.size())
                fail(Error::Kind::Load, where + ": header has " + std::to_string(fields.size()) +
                     " columns, schema for " + rel.name + " has " +
                     std::to_string(rel.attributes.size()));
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] != rel.attributes[i].name)
                    fail(Error::Kind::Load, where + ": header column '" + fields[i] +
                         "' does not match schema attribute '" + rel.attributes[i].name + "'");
            saw_header = true;
            continue;
        }
        if (fields.size() != rel.attributes.size())
            fail(Error::Kind::Load, where + ": expected " +
                 std::to_string(rel.attributes.size()) + " fields, got " +
                 std::to_string(fields.size()));
        Row row;
        row.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            row.push_back(parse_field(rel.attributes[i], fields[i], where));
        rows.push_back(std::move(row));
    }
    if (!saw_header)
        fail(Error::Kind::Load, source_name + ": missing header row");
    return rows;
}

Instance load_instance(const Schema& schema,
                       const std::map<std::string, std::filesystem::path>& csv_files) {
    Instance instance(schema);
    for (const auto& rel : schema.relations) {
        auto it = csv_files.find(rel.name);
        if (it == csv_files.end())
            fail(Error::Kind::Load, "no data file for relation " + rel.name);
        std::ifstream in(it->second);
        if (!in) fail(Error::Kind::Load, "cannot open " + it->second.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        for (auto& row : parse_relation_csv(rel, buf.str(), it->second.filename().string()))
            instance.append_row(rel.name, std::move(row));
    }
    return instance;
}

namespace {

bool csv_needs_quotes(const std::string& s) {
    if (s.empty()) return false;
    if (s.front() == ' ' || s.back() == ' ' || s.front() == '"') return true;
    return s.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_field(const Value& v) {
    if (v.is_number()) return v.num().str();
    const std::string& s = v.str();
    if (!csv_needs_quotes(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string print_relation_csv(const Instance& instance, std::string_view relation) {
    const auto& rel = instance.schema().relation(relation);
    std::ostringstream out;
    for (std::size_t i = 0; i < rel.attributes.size(); ++i)
        out << (i ? "," : "") << rel.attributes[i].name;
    out << '\n';
    for (const auto& row : instance.rows(relation)) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    }
    return out.str();
}

} // namespace numrepair
