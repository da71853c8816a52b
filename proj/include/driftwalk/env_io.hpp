#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "driftwalk/fields.hpp"
#include "driftwalk/validate.hpp"

namespace dwalk {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    ValidationError(std::string msg, ValidationReport rep)
        : std::runtime_error(std::move(msg)), report(std::move(rep)) {}
    ValidationReport report;
};

/// Shortest round-trip decimal for a double (what env files store).
std::string format_double(double x);

/// Environment file: {"dims":{"d":..,"L":..}, "kind":"drift"|"stream",
/// "data":[ ...stored components as decimal strings... ]} — site-major,
/// axis (drift) or lexicographic pair (stream) order within a site.
void save_environment(const DriftField& v, const std::string& path);
void save_environment(const StreamTensorField& h, const std::string& path);

using Environment = std::variant<DriftField, StreamTensorField>;

/// Parses and validates. Throws ParseError on malformed input and
/// ValidationError (with the full report) when the field violates its
/// invariants.
Environment load_environment(const std::string& path);

/// Convenience: loads and requires kind == drift.
DriftField load_drift(const std::string& path);

}  // namespace dwalk
