#pragma once

// Report and witness serialization: JSON, DOT, plain arc lists.

#include <istream>
#include <string>
#include <string_view>

#include "dagreal/core.hpp"
#include "dagreal/exact.hpp"
#include "dagreal/metrics.hpp"

namespace dagreal {

enum class DagFormat { Json, Dot, None };

/// One JSON object: outcome, strategy, stage, stats{...}, and the witness as
/// "arcs" (Json), a "dot" string (Dot) or nothing (None).
std::string report_to_json(const SolveReport& report, DagFormat format = DagFormat::Json);

std::string profile_to_json(const SequenceProfile& p);

/// `digraph G { ... }` with one node per vertex, named by its label.
std::string to_dot(const Dag& dag);

/// Reads "u -> v" statements of a DOT digraph with integer node ids; node
/// statements and attributes are ignored. Throws ParseError.
Dag parse_dot(std::istream& in);
Dag parse_dot(std::string_view text);

/// Reads a witness either as DOT or as "u v" lines with integer labels.
Dag parse_dag(std::string_view text);

}  // namespace dagreal
