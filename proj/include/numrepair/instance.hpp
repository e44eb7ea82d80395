#pragma once

#include "numrepair/schema.hpp"
#include "numrepair/value.hpp"

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace numrepair {

// Tuple identity is positional: relation name plus 0-based row index.
// Two syntactically equal rows are still distinct tuples.
struct TupleId {
    std::string relation;
    std::size_t row = 0;

    friend auto operator<=>(const TupleId&, const TupleId&) = default;
};

struct CellRef {
    TupleId tuple;
    std::string attribute;

    friend auto operator<=>(const CellRef&, const CellRef&) = default;

    std::string str() const;
};

using Row = std::vector<Value>;

class Instance {
public:
    explicit Instance(Schema schema);

    const Schema& schema() const { return schema_; }

    const std::vector<Row>& rows(std::string_view relation) const;
    std::vector<Row>& rows(std::string_view relation);

    // Appends after domain checking; returns the new tuple's id.
    TupleId append_row(std::string_view relation, Row row);

    const Value& value(const CellRef& cell) const;
    const Value& value(const TupleId& tuple, std::string_view attribute) const;

    void set_value(const CellRef& cell, Value v); // domain-checked

    // Every measure cell of the instance, in (relation, row, attribute) order.
    std::vector<CellRef> measure_cells() const;

private:
    std::size_t relation_slot(std::string_view relation) const;

    Schema schema_;
    std::vector<std::vector<Row>> tables_; // parallel to schema_.relations
};

struct AtomicUpdate {
    CellRef cell;
    Value new_value;

    friend auto operator<=>(const AtomicUpdate&, const AtomicUpdate&) = default;
};

// A consistent update set: pairwise-distinct cells, each a measure attribute,
// each new value different from the current one and inside the domain.
struct UpdateSet {
    std::vector<AtomicUpdate> updates;

    std::set<CellRef> support() const;
    std::size_t size() const { return updates.size(); }
    bool empty() const { return updates.empty(); }
};

// Checks the consistency conditions above against `instance`; throws Validate.
UpdateSet validate_update_set(const Instance& instance, std::vector<AtomicUpdate> updates);

Instance apply_update_set(const Instance& instance, const UpdateSet& updates);

// CSV loading. The header row must name the relation's attributes in schema
// order. Fields may be double-quoted ("" escapes a quote inside).
std::vector<Row> parse_relation_csv(const RelationSchema& rel, std::string_view csv,
                                    const std::string& source_name);

Instance load_instance(const Schema& schema,
                       const std::map<std::string, std::filesystem::path>& csv_files);

std::string print_relation_csv(const Instance& instance, std::string_view relation);

} // namespace numrepair
