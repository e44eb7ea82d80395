#pragma once

#include "numrepair/repair.hpp"

#include <optional>
#include <string>
#include <vector>

namespace numrepair {

enum class CqaAnswer { True, False, Indeterminate };

std::string cqa_answer_text(CqaAnswer a);

struct CqaVerdict {
    Semantics semantics = Semantics::Set;
    CqaAnswer answer = CqaAnswer::Indeterminate;
    bool holds_now = false;  // q is a tuple of the instance as stored
    bool no_repair = false;  // answer is false because no repair exists at all
    std::optional<UpdateSet> witness; // minimal repair falsifying q, when found
    Limits limits;
    std::vector<std::string> notes;
};

// Throws Validate unless the query names a known relation with one value per
// attribute, each inside its domain.
void validate_query(const Schema& schema, const GroundAtom& query);

// Tuples agreeing with the query on every non-measure attribute. Repairs
// never insert tuples or touch non-measure values, so the query holds in a
// repaired instance iff one of these tuples carries the query's measure
// values after the update.
std::vector<TupleId> match_tuples(const Instance& instance, const GroundAtom& query);

// True iff the query holds in every minimal repair (per the chosen
// semantics); false iff some minimal repair avoids it or none exists;
// indeterminate when resource limits hide a potential witness.
CqaVerdict cqa(const Instance& instance, const ConstraintSet& cs, const GroundAtom& query,
               Semantics semantics, const Limits& limits = {});

} // namespace numrepair
