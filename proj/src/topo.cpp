#include "dagreal/topo.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dagreal {

namespace {

struct Residual {
    int demand;
    std::size_t position;
    Label label;
};

bool larger_first(const Residual& x, const Residual& y) {
    if (x.demand != y.demand) return x.demand > y.demand;
    return x.position < y.position;
}

// Spends one unit on each of the first `count` entries of a pool sorted by
// larger_first and restores the order. Exhausted entries are dropped.
void take_largest(std::vector<Residual>& pool, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) --pool[i].demand;
    auto spent_end = std::remove_if(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count),
                                    [](const Residual& r) { return r.demand == 0; });
    const auto live = spent_end - pool.begin();
    pool.erase(spent_end, pool.begin() + static_cast<std::ptrdiff_t>(count));
    std::inplace_merge(pool.begin(), pool.begin() + live, pool.end(), larger_first);
}

}  // namespace

OrderedSequence::OrderedSequence(Sequence seq, std::vector<std::size_t> order)
    : seq_(std::move(seq)), order_(std::move(order)) {
    if (order_.size() != seq_.n()) throw ContractViolation("OrderedSequence: order length mismatch");
    std::vector<char> seen(order_.size(), 0);
    for (std::size_t idx : order_) {
        if (idx >= order_.size() || seen[idx]) throw ContractViolation("OrderedSequence: order is not a permutation");
        seen[idx] = 1;
    }
    std::stable_partition(order_.begin(), order_.end(),
                          [&](std::size_t i) { return seq_.tuples[i].is_source(); });
    const auto q = seq_.sources();
    std::stable_sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(q),
                     [&](std::size_t x, std::size_t y) { return seq_.tuples[x].b > seq_.tuples[y].b; });
}

OrderedSequence::OrderedSequence(Sequence seq) : OrderedSequence(seq, [&] {
    std::vector<std::size_t> id(seq.n());
    std::iota(id.begin(), id.end(), std::size_t{0});
    return id;
}()) {}

std::optional<Dag> realize_with_order(const OrderedSequence& oseq) {
    const Sequence& seq = oseq.sequence();
    Dag dag{seq.label_space, {}};
    std::vector<Residual> sources;
    for (std::size_t pos = 0; pos < oseq.order().size(); ++pos) {
        const std::size_t idx = oseq.order()[pos];
        const DegreeTuple t = seq.tuples[idx];
        const Label label = seq.labels[idx];
        if (t.is_zero()) continue;
        if (!t.is_source()) {
            const auto need = static_cast<std::size_t>(t.a);
            if (sources.size() < need) return std::nullopt;
            for (std::size_t i = 0; i < need; ++i) dag.arcs.push_back({sources[i].label, label});
            take_largest(sources, need);
        }
        if (t.b > 0) {
            Residual r{t.b, pos, label};
            sources.insert(std::upper_bound(sources.begin(), sources.end(), r, larger_first), r);
        }
    }
    if (!sources.empty()) return std::nullopt;
    return dag;
}

std::optional<Dag> realize_source_sink(const Sequence& seq) {
    std::vector<Residual> sources, sinks;
    for (std::size_t i = 0; i < seq.n(); ++i) {
        const auto& t = seq.tuples[i];
        if (t.is_stream()) throw ContractViolation("realize_source_sink: stream tuple " + to_string(t));
        if (t.is_source()) sources.push_back({t.b, i, seq.labels[i]});
        if (t.is_sink()) sinks.push_back({t.a, i, seq.labels[i]});
    }
    std::stable_sort(sources.begin(), sources.end(), larger_first);
    std::stable_sort(sinks.begin(), sinks.end(), larger_first);
    Dag dag{seq.label_space, {}};
    for (const auto& src : sources) {
        const auto need = static_cast<std::size_t>(src.demand);
        if (sinks.size() < need) return std::nullopt;
        for (std::size_t i = 0; i < need; ++i) dag.arcs.push_back({src.label, sinks[i].label});
        take_largest(sinks, need);
    }
    if (!sinks.empty()) return std::nullopt;
    return dag;
}

std::optional<std::vector<Label>> topological_order(const Dag& dag) {
    const std::size_t n = dag.n_vertices;
    std::vector<std::vector<Label>> out(n + 1);
    std::vector<std::size_t> indeg(n + 1, 0);
    for (const auto& arc : dag.arcs) {
        if (arc.from < 1 || arc.from > n || arc.to < 1 || arc.to > n) return std::nullopt;
        out[arc.from].push_back(arc.to);
        ++indeg[arc.to];
    }
    std::vector<Label> order;
    order.reserve(n);
    for (Label v = 1; v <= n; ++v)
        if (indeg[v] == 0) order.push_back(v);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Label w : out[order[head]])
            if (--indeg[w] == 0) order.push_back(w);
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

bool verify_realization(const Dag& dag, const Sequence& seq) {
    const std::size_t n = dag.n_vertices;
    std::vector<int> indeg(n + 1, 0), outdeg(n + 1, 0);
    std::set<Arc> seen;
    for (const auto& arc : dag.arcs) {
        if (arc.from < 1 || arc.from > n || arc.to < 1 || arc.to > n) return false;
        if (arc.from == arc.to) return false;
        if (!seen.insert(arc).second) return false;
        ++outdeg[arc.from];
        ++indeg[arc.to];
    }
    if (!topological_order(dag)) return false;
    std::vector<char> covered(n + 1, 0);
    for (std::size_t i = 0; i < seq.n(); ++i) {
        const Label v = seq.labels[i];
        if (v < 1 || v > n || covered[v]) return false;
        covered[v] = 1;
        if (indeg[v] != seq.tuples[i].a || outdeg[v] != seq.tuples[i].b) return false;
    }
    for (Label v = 1; v <= n; ++v)
        if (!covered[v] && (indeg[v] != 0 || outdeg[v] != 0)) return false;
    return true;
}

}  // namespace dagreal
