#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace curvedeg {

/// Input whose ids or structure cannot be resolved at all, as opposed to a
/// well-formed object that merely violates an invariant.
class malformed_error : public std::runtime_error {
public:
    explicit malformed_error(const std::string& what) : std::runtime_error(what) {}
};

/// Interchange-format rejection. `where` is a field path like "edges[2].flags".
class parse_error : public std::runtime_error {
public:
    parse_error(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// Derived quantities contradict each other; signals data that cannot come
/// from an actual action (e.g. a negative eigenspace dimension).
class inconsistency_error : public std::runtime_error {
public:
    explicit inconsistency_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace curvedeg
