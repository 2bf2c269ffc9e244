#pragma once

#include <string>

#include "curvedeg/degeneration.hpp"

namespace curvedeg {

/// Parses a degeneration document. Structural only: the result may still
/// fail validate_degeneration. Rejects unknown fields, duplicate ids,
/// non-reduced rationals and version mismatches with a field-addressed
/// parse_error. Omitted sigma entries default to the identity, omitted
/// valencies to 0, omitted ramification records to the empty type.
DegenerationType parse_degeneration(const std::string& text);
DegenerationType load_degeneration_file(const std::string& path);

/// Canonical serialization: fixed field order, every record listed
/// explicitly, ids ascending, rationals as reduced integer pairs. parse of
/// the output reproduces the value bit-exactly.
std::string serialize_degeneration(const DegenerationType& d);

/// Graphviz DOT text of the dual graph.
std::string export_dot(const StableGraph& g);

/// Plain-text invariant tables: quotient genera, eigenspace dimensions,
/// edge characters, screw numbers, amphidromy. Requires a valid input.
std::string invariants_report(const DegenerationType& d);

/// JSON report of the local models: one entry per smooth ramification class
/// and per edge orbit, with singularity types and exceptional chains
/// (amphidrome edges report their invariant tuple, no chain).
std::string resolve_report(const DegenerationType& d);

/// One realized pair as a single-line JSON record.
std::string realized_pair_record(const RealizedPair& p);

/// One enumerated degeneration as a single-line JSON record with its screw
/// congruence families.
std::string degeneration_record(const DegenerationType& d);

} // namespace curvedeg
