#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace torface {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document (bad JSON, missing sections, wrong shapes).
struct ParseError : Error {
    explicit ParseError(const std::string& msg, int line_hint = -1)
        : Error("ParseError: " + msg), line(line_hint) {}
    int line;
};

/// A named validation rule failed. `rule` is stable and machine-checkable
/// (e.g. "MissingEmptyCell", "NoMeet", "GroupNotSaturated").
struct ValidationError : Error {
    ValidationError(std::string rule_, const std::string& detail)
        : Error("ValidationError[" + rule_ + "]: " + detail), rule(std::move(rule_)) {}
    std::string rule;
};

struct OverflowError : ValidationError {
    explicit OverflowError(const std::string& detail)
        : ValidationError("Overflow", detail) {}
};

/// Membership search hit the iteration cap without a certificate either way.
/// Surfaced to the caller, never converted to a boolean.
struct UndecidedError : Error {
    UndecidedError(std::string cell_, std::vector<long long> coords_, std::string site_)
        : Error("UndecidedAtCap: degree at cell " + cell_ + " undecided for site " + site_),
          cell(std::move(cell_)), coords(std::move(coords_)), site(std::move(site_)) {}
    std::string cell;
    std::vector<long long> coords;
    std::string site;
};

struct OracleBoundError : Error {
    explicit OracleBoundError(const std::string& detail)
        : Error("OracleBoundExceeded: " + detail) {}
};

} // namespace torface
