#pragma once

#include <stdexcept>
#include <string>

namespace so6synth {

// Checked-arithmetic overflow of a packed dyadic field or a widened
// intermediate. Never silently wrapped.
class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// A value failed a structural invariant (non-reduced entry, non-orthogonal
// matrix, determinant outside {+1,-1}, corrupt table record, ...).
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text or binary input.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Resource exhaustion (memory, depth caps, budgets) distinct from logic or
// data errors; carries partial-progress context where available.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace so6synth
