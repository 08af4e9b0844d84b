#pragma once

// Instance sources: exhaustive multiset enumeration, random dag sampling and
// edge-list ingestion.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dagreal/core.hpp"

namespace dagreal {

inline constexpr std::size_t kMaxEnumerationN = 10;

/// Which balanced zero-free multisets of n tuples with m arcs to emit.
struct EnumerationSpec {
    std::size_t n = 0;
    long long m = 0;
    /// Minimum number of stream tuples. 2 drops source-sink sequences and
    /// sequences with a single stream tuple; 0 emits every candidate.
    std::size_t min_streams = 2;
    /// Skip multisets that cannot be dag sequences for trivial reasons: a
    /// tuple with a+b > n-1, or (m > 0) no source or no sink.
    bool dag_filter = true;
};

/// Position in the enumeration: tuple-type indices of one multiset in
/// nondecreasing order. Types are all (a|b) != (0|0) with a, b <= n-1, or
/// a+b <= n-1 under the dag filter, ordered lexicographically.
struct Cursor {
    std::vector<std::uint16_t> types;

    std::string encode() const;
    static Cursor decode(std::string_view token);
    friend bool operator==(const Cursor&, const Cursor&) = default;
};

/// Receives each canonical sequence with its cursor; return false to stop.
using SequenceVisitor = std::function<bool(const Sequence&, const Cursor&)>;

/// Emits every matching multiset exactly once, in cursor order, starting at
/// `from` (inclusive). Throws std::invalid_argument when n exceeds the cap.
void enumerate_sequences(const EnumerationSpec& spec, const SequenceVisitor& visit,
                         const std::optional<Cursor>& from = std::nullopt);

/// Number of enumeration chunks (one per type index of the smallest tuple).
std::size_t enumeration_chunks(const EnumerationSpec& spec);
/// Emits only multisets whose smallest tuple has type index `chunk`.
void enumerate_chunk(const EnumerationSpec& spec, std::size_t chunk, const SequenceVisitor& visit);

/// splitmix64 step; derives independent sub-seeds from (seed, index).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept;

using Rng = std::mt19937_64;

/// Degree sequence of the complete dag on n vertices (in topological order)
/// after deleting a uniform random subset of C(n,2) - m arcs.
Sequence random_dag_sequence(std::size_t n, long long m, Rng& rng);

struct IngestedGraph {
    Sequence sequence;
    bool was_acyclic = true;
    std::size_t zero_tuples_stripped = 0;
    /// Vertex names in label order (label i is names[i-1]).
    std::vector<std::string> names;
    std::size_t arcs = 0;
};

/// Parses "u v" arc lines ('#' comments, blank lines ignored). Vertex ids are
/// arbitrary tokens, labeled in order of first appearance. Duplicate arcs and
/// self-loops raise ParseError.
IngestedGraph ingest_edge_list(std::istream& in);
IngestedGraph ingest_edge_list(std::string_view text);

}  // namespace dagreal
