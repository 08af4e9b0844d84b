#pragma once

// Safe simplification rules that force arcs before any search happens.

#include <optional>
#include <vector>

#include "dagreal/core.hpp"
#include "dagreal/exact.hpp"

namespace dagreal {

enum class Rule { UniqueVmin = 1, DegreeDominance = 2, TotalDegree = 3 };

struct ReductionStep {
    Rule rule = Rule::UniqueVmin;
    /// Applied to the mirrored sequence (arcs already reversed back).
    bool mirrored = false;
    /// Labels of the tuples the rule pivoted on.
    std::vector<Label> labels;
    std::vector<Arc> arcs;
    /// Canonical sequence after the step.
    Sequence residual;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    Sequence residual;

    std::vector<Arc> forced_arcs() const;
    bool progressed() const noexcept { return !steps.empty(); }
};

/// Rule 1: a single distinct minimal candidate, looked for on the sequence
/// and on its mirror.
std::optional<ReductionStep> rule_unique_vmin(const Sequence& seq);

/// Rule 2: a tuple whose outdegree equals the number of other non-sources
/// (or, mirrored, whose indegree equals the number of other non-sinks).
std::optional<ReductionStep> rule_degree_dominance(const Sequence& seq);

/// Rule 3: a stream tuple adjacent to every other vertex takes the unit
/// sources and unit sinks.
std::optional<ReductionStep> rule_total_degree(const Sequence& seq);

/// First applicable rule in priority order 1, 2, 3.
std::optional<ReductionStep> reduce_once(const Sequence& seq);

/// Applies reduce_once until no rule fires. Input need not be canonical.
ReductionTrace reduce_fixpoint(const Sequence& seq);

/// Single search path with the rules run to a fixpoint before every choice.
/// Outcome is Realizable or NotFound; `nodes_expanded` counts choices plus
/// rule applications.
SolveReport solve_path_with_reductions(const Sequence& seq, const CandidatePicker& pick);

/// Lexmax strategy interleaved with the reduction rules.
SolveReport solve_lexmax_with_reductions(const Sequence& seq);

}  // namespace dagreal
