#pragma once

#include <stdexcept>
#include <string>

namespace numrepair {

// Every failure the library reports deliberately goes through this type;
// anything else escaping is a bug.
class Error : public std::runtime_error {
public:
    enum class Kind {
        Load,      // unreadable/malformed input files
        Parse,     // constraint or query text rejected
        Validate,  // schema violations, bad update sets, bad queries
        Resource,  // branch caps, node budgets, size limits
        Internal,  // broken invariants
    };

    Error(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, std::string message) {
    throw Error(kind, std::move(message));
}

} // namespace numrepair
