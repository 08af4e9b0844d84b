#pragma once

// Realization under a prescribed topological order, source-sink realization,
// and witness verification.

#include <optional>
#include <vector>

#include "dagreal/core.hpp"

namespace dagreal {

/// A sequence together with an intended topological order.
///
/// `order[i]` is the index into `seq` of the vertex at topological position i.
/// On construction source tuples are moved to the front, sorted by decreasing
/// outdegree (stable in the given order); all other positions stay as given.
class OrderedSequence {
public:
    OrderedSequence(Sequence seq, std::vector<std::size_t> order);
    /// Identity order.
    explicit OrderedSequence(Sequence seq);

    const Sequence& sequence() const noexcept { return seq_; }
    const std::vector<std::size_t>& order() const noexcept { return order_; }

private:
    Sequence seq_;
    std::vector<std::size_t> order_;
};

/// Greedy realization for a fixed topological order: every non-source tuple,
/// in order, takes its in-arcs from the sources with largest residual outdegree.
/// Returns nullopt if this order admits no realization.
std::optional<Dag> realize_with_order(const OrderedSequence& oseq);

/// Realization of a sequence without stream tuples. Throws ContractViolation
/// if a stream tuple is present.
std::optional<Dag> realize_source_sink(const Sequence& seq);

/// Topological order of the labels 1..n_vertices, or nullopt on a cycle
/// (also nullopt for out-of-range labels).
std::optional<std::vector<Label>> topological_order(const Dag& dag);

/// Acyclic, loop-free, no parallel arcs, and every labeled vertex of `seq`
/// has exactly its demanded degrees; vertices not in `seq` are isolated.
bool verify_realization(const Dag& dag, const Sequence& seq);

}  // namespace dagreal
