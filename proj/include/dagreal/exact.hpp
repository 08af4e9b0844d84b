#pragma once

// The opposed order, minimal candidate sets, the exact backtracking solver,
// the lexmax strategy and the forest-sequence solvers.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dagreal/core.hpp"

namespace dagreal {

/// (a1|b1) <=opp (a2|b2)  iff  a1 <= a2 and b1 >= b2.
constexpr bool opposed_leq(const DegreeTuple& x, const DegreeTuple& y) noexcept {
    return x.a <= y.a && x.b >= y.b;
}

constexpr bool opposed_less(const DegreeTuple& x, const DegreeTuple& y) noexcept {
    return opposed_leq(x, y) && x != y;
}

constexpr bool opposed_comparable(const DegreeTuple& x, const DegreeTuple& y) noexcept {
    return opposed_leq(x, y) || opposed_leq(y, x);
}

struct VminMember {
    DegreeTuple value;
    Label label = 0;
    std::size_t index = 0;  // position in the sequence the set was computed on
};

/// Opposed-minimal stream tuples of a canonical sequence.
struct VminSet {
    std::size_t sources = 0;
    /// Every minimal stream tuple with a <= sources, in sequence order.
    std::vector<VminMember> all;
    /// One representative (smallest label) per distinct value, in decreasing
    /// lexicographic (a, b) order.
    std::vector<VminMember> distinct;
    /// Minimal stream tuples excluded because a > sources.
    std::vector<VminMember> blocked;
};

/// Throws ContractViolation when `seq` has no source or no stream tuple.
VminSet compute_vmin(const Sequence& seq);
/// As compute_vmin, but returns an empty set instead of throwing.
VminSet compute_vmin_unchecked(const Sequence& seq);

struct TupleReduction {
    Sequence residual;
    std::vector<Arc> arcs;
};

/// Connects the a largest sources of a canonical sequence to the stream tuple
/// labeled `chosen`, turns it into a source, strips zero tuples and restores
/// canonical order.
TupleReduction reduce_by_tuple(const Sequence& seq, Label chosen);

enum class Outcome { Realizable, Unrealizable, NotFound, ExhaustedBudget };

std::string to_string(Outcome o);

struct SolveReport {
    Outcome outcome = Outcome::NotFound;
    std::optional<Dag> witness;
    std::uint64_t nodes_expanded = 0;
    std::uint32_t max_depth = 0;
    std::string strategy;
    /// Pipeline stage that produced the outcome (e.g. "lexmax", "rand4").
    std::string stage;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    /// Stream labels in the order they were placed on the successful path.
    std::vector<Label> choice_path;

    bool realizable() const noexcept { return outcome == Outcome::Realizable; }
};

enum class ChildOrder { LexmaxFirst, LexminFirst };

struct ExactOptions {
    ChildOrder child_order = ChildOrder::LexmaxFirst;
    std::optional<std::uint64_t> node_budget;
    bool memoize = true;
};

/// Depth-first search over the distinct minimal candidates at every level.
SolveReport solve_exact(const Sequence& seq, const ExactOptions& opts = {});

/// Picks the index of one member of `candidates.distinct`; receives the
/// current canonical residual and the number of placements made so far.
using CandidatePicker = std::function<std::size_t(const VminSet& candidates, const Sequence& current, std::size_t step)>;

/// One root-to-leaf path of the search tree, no backtracking. Outcome is
/// Realizable or NotFound.
SolveReport solve_single_path(const Sequence& seq, const CandidatePicker& pick);

/// Greedy path always taking the lexicographically largest candidate.
SolveReport solve_lexmax(const Sequence& seq);

/// Stream tuples form a chain under the opposed order.
bool is_opposed_sequence(const Sequence& seq);

bool is_forest_sequence(const Sequence& seq);

enum class ForestPolicy { First, Random, Lexmax };

struct ForestPicker {
    ForestPolicy policy = ForestPolicy::First;
    std::uint64_t seed = 0;
};

/// Forest sequences only (sum of indegrees <= n-1): any stream tuple with
/// a <= #sources may be placed next. Throws ContractViolation otherwise.
SolveReport solve_forest(const Sequence& seq, ForestPicker picker = {});

/// Forest sequences only: digraph realization followed by arc swaps across
/// weak components until no directed cycle remains.
SolveReport solve_forest_via_swaps(const Sequence& seq);

/// Digraph (not necessarily acyclic) realization by the Kleitman-Wang greedy.
std::optional<Dag> realize_digraph(const Sequence& seq);

/// True iff the stream vertices of `dag` admit a topological order in which no
/// later stream tuple is strictly opposed-below an earlier one.
bool admits_opposed_topological_sorting(const Dag& dag, const Sequence& seq);

/// Strips zero tuples and canonicalizes; throws ContractViolation when the
/// sequence fails validation.
Sequence prepare_for_solving(const Sequence& seq);

}  // namespace dagreal
