#include "dagreal/reduce.hpp"

#include <algorithm>

#include "dagreal/topo.hpp"

namespace dagreal {

std::vector<Arc> ReductionTrace::forced_arcs() const {
    std::vector<Arc> arcs;
    for (const auto& step : steps) arcs.insert(arcs.end(), step.arcs.begin(), step.arcs.end());
    return arcs;
}

std::optional<ReductionStep> rule_unique_vmin(const Sequence& seq) {
    if (seq.is_source_sink()) return std::nullopt;
    const auto primal = compute_vmin_unchecked(seq);
    if (primal.distinct.size() == 1) {
        const Label pivot = primal.distinct.front().label;
        auto r = reduce_by_tuple(seq, pivot);
        return ReductionStep{Rule::UniqueVmin, false, {pivot}, std::move(r.arcs), std::move(r.residual)};
    }
    const Sequence flipped = canonicalized(mirror(seq));
    const auto dual = compute_vmin_unchecked(flipped);
    if (dual.distinct.size() == 1) {
        const Label pivot = dual.distinct.front().label;
        auto r = reduce_by_tuple(flipped, pivot);
        ReductionStep step{Rule::UniqueVmin, true, {pivot}, {}, canonicalized(mirror(r.residual))};
        for (const auto& arc : r.arcs) step.arcs.push_back({arc.to, arc.from});
        return step;
    }
    return std::nullopt;
}

namespace {

// Outdegree side of rule 2; the mirrored side runs this on mirror(seq).
std::optional<ReductionStep> dominance_one_side(const Sequence& seq) {
    const auto non_sources = static_cast<int>(seq.n() - seq.sources());
    std::vector<std::size_t> by_label(seq.n());
    for (std::size_t i = 0; i < seq.n(); ++i) by_label[i] = i;
    std::sort(by_label.begin(), by_label.end(),
              [&](std::size_t x, std::size_t y) { return seq.labels[x] < seq.labels[y]; });
    for (std::size_t i : by_label) {
        const auto& t = seq.tuples[i];
        if (t.b == 0) continue;
        const int others = non_sources - (t.a > 0 ? 1 : 0);
        // It precedes every other non-source, so only sources can feed it.
        if (t.b != others || t.a > static_cast<int>(seq.sources())) continue;
        ReductionStep step;
        step.rule = Rule::DegreeDominance;
        step.labels = {seq.labels[i]};
        Sequence next = seq;
        // A stream tuple here can open the topological order after the
        // sources, so it takes its indegree from the a largest sources.
        for (std::size_t j = 0; j < static_cast<std::size_t>(t.a); ++j) {
            step.arcs.push_back({seq.labels[j], seq.labels[i]});
            --next.tuples[j].b;
        }
        for (std::size_t j = 0; j < seq.n(); ++j) {
            if (j == i || seq.tuples[j].a == 0) continue;
            step.arcs.push_back({seq.labels[i], seq.labels[j]});
            --next.tuples[j].a;
        }
        next.tuples[i] = {0, 0};
        step.residual = canonicalized(strip_zero_tuples(next));
        return step;
    }
    return std::nullopt;
}

}  // namespace

std::optional<ReductionStep> rule_degree_dominance(const Sequence& seq) {
    if (auto step = dominance_one_side(seq)) return step;
    if (auto step = dominance_one_side(canonicalized(mirror(seq)))) {
        step->mirrored = true;
        for (auto& arc : step->arcs) std::swap(arc.from, arc.to);
        step->residual = canonicalized(mirror(step->residual));
        return step;
    }
    return std::nullopt;
}

std::optional<ReductionStep> rule_total_degree(const Sequence& seq) {
    const auto n = static_cast<int>(seq.n());
    const auto q = static_cast<int>(seq.sources());
    const auto s = static_cast<int>(seq.sinks());
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < seq.n(); ++i) {
        const auto& t = seq.tuples[i];
        // Adjacent to all others: every source feeds it and it feeds every sink.
        if (t.is_stream() && t.a + t.b == n - 1 && q <= t.a && s <= t.b) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t x, std::size_t y) { return seq.labels[x] < seq.labels[y]; });
    for (std::size_t i : candidates) {
        ReductionStep step;
        step.rule = Rule::TotalDegree;
        step.labels = {seq.labels[i]};
        Sequence next = seq;
        for (std::size_t j = 0; j < seq.n(); ++j) {
            const auto& t = seq.tuples[j];
            if (t.is_source() && t.b == 1) {
                step.arcs.push_back({seq.labels[j], seq.labels[i]});
                next.tuples[j].b = 0;
                --next.tuples[i].a;
            } else if (t.is_sink() && t.a == 1) {
                step.arcs.push_back({seq.labels[i], seq.labels[j]});
                next.tuples[j].a = 0;
                --next.tuples[i].b;
            }
        }
        if (step.arcs.empty()) continue;
        step.residual = canonicalized(strip_zero_tuples(next));
        return step;
    }
    return std::nullopt;
}

std::optional<ReductionStep> reduce_once(const Sequence& seq) {
    if (seq.is_source_sink()) return std::nullopt;
    if (auto step = rule_unique_vmin(seq)) return step;
    if (auto step = rule_degree_dominance(seq)) return step;
    return rule_total_degree(seq);
}

ReductionTrace reduce_fixpoint(const Sequence& seq) {
    ReductionTrace trace;
    trace.residual = canonicalized(strip_zero_tuples(seq));
    while (auto step = reduce_once(trace.residual)) {
        trace.residual = step->residual;
        trace.steps.push_back(std::move(*step));
    }
    return trace;
}

SolveReport solve_path_with_reductions(const Sequence& seq, const CandidatePicker& pick) {
    Sequence cur = prepare_for_solving(seq);
    SolveReport report;
    report.outcome = Outcome::NotFound;
    std::vector<Arc> arcs;
    for (std::size_t step = 0;; ++step) {
        while (auto forced = reduce_once(cur)) {
            ++report.nodes_expanded;
            arcs.insert(arcs.end(), forced->arcs.begin(), forced->arcs.end());
            cur = std::move(forced->residual);
        }
        ++report.nodes_expanded;
        report.max_depth = static_cast<std::uint32_t>(step);
        if (cur.is_source_sink()) {
            auto leaf = realize_source_sink(cur);
            if (!leaf) return report;
            arcs.insert(arcs.end(), leaf->arcs.begin(), leaf->arcs.end());
            Dag dag{cur.label_space, std::move(arcs)};
            if (!verify_realization(dag, seq)) return report;
            report.outcome = Outcome::Realizable;
            report.witness = std::move(dag);
            return report;
        }
        const VminSet candidates = compute_vmin_unchecked(cur);
        if (candidates.distinct.empty()) return report;
        const Label label = candidates.distinct.at(pick(candidates, cur, step)).label;
        auto next = reduce_by_tuple(cur, label);
        arcs.insert(arcs.end(), next.arcs.begin(), next.arcs.end());
        report.choice_path.push_back(label);
        cur = std::move(next.residual);
    }
}

SolveReport solve_lexmax_with_reductions(const Sequence& seq) {
    auto report =
        solve_path_with_reductions(seq, [](const VminSet&, const Sequence&, std::size_t) { return std::size_t{0}; });
    report.strategy = "lexmax_reduced";
    report.stage = "lexmax_reduced";
    return report;
}

}  // namespace dagreal
