#include "dagreal/exact.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "dagreal/topo.hpp"

namespace dagreal {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Realizable: return "realizable";
        case Outcome::Unrealizable: return "unrealizable";
        case Outcome::NotFound: return "not_found";
        case Outcome::ExhaustedBudget: return "exhausted_budget";
    }
    return "?";
}

Sequence prepare_for_solving(const Sequence& seq) {
    const auto report = validate(seq);
    if (!report.ok()) throw ContractViolation("sequence fails validation: " + report.violations.front());
    return canonicalized(strip_zero_tuples(seq));
}

VminSet compute_vmin_unchecked(const Sequence& seq) {
    VminSet set;
    set.sources = seq.sources();
    std::vector<std::size_t> streams;
    for (std::size_t i = 0; i < seq.n(); ++i)
        if (seq.tuples[i].is_stream()) streams.push_back(i);
    for (std::size_t i : streams) {
        const auto& t = seq.tuples[i];
        const bool minimal = std::none_of(streams.begin(), streams.end(),
                                          [&](std::size_t j) { return opposed_less(seq.tuples[j], t); });
        if (!minimal) continue;
        VminMember member{t, seq.labels[i], i};
        if (static_cast<std::size_t>(t.a) <= set.sources)
            set.all.push_back(member);
        else
            set.blocked.push_back(member);
    }
    for (const auto& member : set.all) {
        auto same = std::find_if(set.distinct.begin(), set.distinct.end(),
                                 [&](const VminMember& d) { return d.value == member.value; });
        if (same == set.distinct.end())
            set.distinct.push_back(member);
        else if (member.label < same->label)
            *same = member;
    }
    std::sort(set.distinct.begin(), set.distinct.end(),
              [](const VminMember& x, const VminMember& y) { return x.value > y.value; });
    return set;
}

VminSet compute_vmin(const Sequence& seq) {
    if (seq.sources() == 0) throw ContractViolation("compute_vmin: sequence has no source tuple");
    if (seq.streams() == 0) throw ContractViolation("compute_vmin: sequence has no stream tuple");
    return compute_vmin_unchecked(seq);
}

TupleReduction reduce_by_tuple(const Sequence& seq, Label chosen) {
    const auto it = std::find(seq.labels.begin(), seq.labels.end(), chosen);
    if (it == seq.labels.end()) throw ContractViolation("reduce_by_tuple: unknown label");
    const auto idx = static_cast<std::size_t>(it - seq.labels.begin());
    const DegreeTuple t = seq.tuples[idx];
    if (!t.is_stream()) throw ContractViolation("reduce_by_tuple: chosen tuple is not a stream tuple");
    const std::size_t k = seq.sources();
    if (static_cast<std::size_t>(t.a) > k) throw ContractViolation("reduce_by_tuple: indegree exceeds source count");

    TupleReduction out;
    Sequence next = seq;
    // Sources occupy the first k positions, largest outdegree first.
    for (std::size_t i = 0; i < static_cast<std::size_t>(t.a); ++i) {
        out.arcs.push_back({seq.labels[i], chosen});
        --next.tuples[i].b;
    }
    next.tuples[idx].a = 0;
    out.residual = canonicalized(strip_zero_tuples(next));
    return out;
}

namespace {

std::string memo_key(const Sequence& seq) {
    std::vector<DegreeTuple> values = seq.tuples;
    std::sort(values.begin(), values.end());
    std::string key;
    key.reserve(values.size() * 2 * sizeof(int));
    for (const auto& v : values) {
        key.append(reinterpret_cast<const char*>(&v.a), sizeof(int));
        key.append(reinterpret_cast<const char*>(&v.b), sizeof(int));
    }
    return key;
}

class ExactSearch {
public:
    ExactSearch(const ExactOptions& opts, SolveReport& report) : opts_(opts), report_(report) {}

    bool search(const Sequence& cur, std::uint32_t depth) {
        if (opts_.node_budget && report_.nodes_expanded >= *opts_.node_budget) {
            exhausted_ = true;
            return false;
        }
        ++report_.nodes_expanded;
        report_.max_depth = std::max(report_.max_depth, depth);

        if (cur.is_source_sink()) {
            auto leaf = realize_source_sink(cur);
            if (!leaf) return false;
            arcs_.insert(arcs_.end(), leaf->arcs.begin(), leaf->arcs.end());
            return true;
        }
        std::string key;
        if (opts_.memoize) {
            key = memo_key(cur);
            if (failed_.count(key)) return false;
        }
        auto candidates = compute_vmin_unchecked(cur).distinct;
        if (opts_.child_order == ChildOrder::LexminFirst) std::reverse(candidates.begin(), candidates.end());
        for (const auto& cand : candidates) {
            const std::size_t arc_mark = arcs_.size();
            const std::size_t path_mark = path_.size();
            auto step = reduce_by_tuple(cur, cand.label);
            arcs_.insert(arcs_.end(), step.arcs.begin(), step.arcs.end());
            path_.push_back(cand.label);
            if (search(step.residual, depth + 1)) return true;
            arcs_.resize(arc_mark);
            path_.resize(path_mark);
            if (exhausted_) return false;
        }
        if (opts_.memoize && !exhausted_) failed_.insert(std::move(key));
        return false;
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::vector<Arc>& arcs() noexcept { return arcs_; }
    std::vector<Label>& path() noexcept { return path_; }

private:
    const ExactOptions& opts_;
    SolveReport& report_;
    std::unordered_set<std::string> failed_;
    std::vector<Arc> arcs_;
    std::vector<Label> path_;
    bool exhausted_ = false;
};

}  // namespace

SolveReport solve_exact(const Sequence& seq, const ExactOptions& opts) {
    const Sequence start = prepare_for_solving(seq);
    SolveReport report;
    report.strategy = "exact";
    report.stage = "exact";
    ExactSearch search(opts, report);
    if (search.search(start, 0)) {
        report.outcome = Outcome::Realizable;
        report.witness = Dag{start.label_space, std::move(search.arcs())};
        report.choice_path = std::move(search.path());
    } else {
        report.outcome = search.exhausted() ? Outcome::ExhaustedBudget : Outcome::Unrealizable;
    }
    return report;
}

SolveReport solve_single_path(const Sequence& seq, const CandidatePicker& pick) {
    Sequence cur = prepare_for_solving(seq);
    SolveReport report;
    report.outcome = Outcome::NotFound;
    std::vector<Arc> arcs;
    for (std::size_t step = 0;; ++step) {
        ++report.nodes_expanded;
        report.max_depth = static_cast<std::uint32_t>(step);
        if (cur.is_source_sink()) {
            auto leaf = realize_source_sink(cur);
            if (!leaf) return report;
            arcs.insert(arcs.end(), leaf->arcs.begin(), leaf->arcs.end());
            report.outcome = Outcome::Realizable;
            report.witness = Dag{cur.label_space, std::move(arcs)};
            return report;
        }
        const VminSet candidates = compute_vmin_unchecked(cur);
        if (candidates.distinct.empty()) return report;
        const std::size_t choice = pick(candidates, cur, step);
        const Label label = candidates.distinct.at(choice).label;
        auto next = reduce_by_tuple(cur, label);
        arcs.insert(arcs.end(), next.arcs.begin(), next.arcs.end());
        report.choice_path.push_back(label);
        cur = std::move(next.residual);
    }
}

SolveReport solve_lexmax(const Sequence& seq) {
    auto report = solve_single_path(seq, [](const VminSet&, const Sequence&, std::size_t) { return std::size_t{0}; });
    report.strategy = "lexmax";
    report.stage = "lexmax";
    return report;
}

bool is_opposed_sequence(const Sequence& seq) {
    std::vector<DegreeTuple> streams;
    for (const auto& t : seq.tuples)
        if (t.is_stream()) streams.push_back(t);
    std::sort(streams.begin(), streams.end(), [](const DegreeTuple& x, const DegreeTuple& y) {
        return x.a != y.a ? x.a < y.a : x.b > y.b;
    });
    for (std::size_t i = 1; i < streams.size(); ++i)
        if (!opposed_leq(streams[i - 1], streams[i])) return false;
    return true;
}

bool is_forest_sequence(const Sequence& seq) {
    const Sequence stripped = strip_zero_tuples(seq);
    return stripped.sum_in() <= static_cast<long long>(stripped.n()) - 1;
}

SolveReport solve_forest(const Sequence& seq, ForestPicker picker) {
    Sequence cur = prepare_for_solving(seq);
    if (cur.sum_in() > static_cast<long long>(cur.n()) - 1)
        throw ContractViolation("solve_forest: not a forest sequence (sum of indegrees > n-1)");
    SolveReport report;
    report.strategy = "forest";
    report.stage = "forest";
    if (picker.policy == ForestPolicy::Random) report.seed = picker.seed;
    std::mt19937_64 rng(picker.seed);
    std::vector<Arc> arcs;
    for (std::uint32_t depth = 0;; ++depth) {
        ++report.nodes_expanded;
        report.max_depth = depth;
        if (cur.is_source_sink()) {
            auto leaf = realize_source_sink(cur);
            if (!leaf) {
                report.outcome = Outcome::Unrealizable;
                return report;
            }
            arcs.insert(arcs.end(), leaf->arcs.begin(), leaf->arcs.end());
            report.outcome = Outcome::Realizable;
            report.witness = Dag{cur.label_space, std::move(arcs)};
            return report;
        }
        const std::size_t k = cur.sources();
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < cur.n(); ++i)
            if (cur.tuples[i].is_stream() && static_cast<std::size_t>(cur.tuples[i].a) <= k) eligible.push_back(i);
        if (eligible.empty()) {
            report.outcome = Outcome::Unrealizable;
            return report;
        }
        std::size_t pick = eligible.front();
        if (picker.policy == ForestPolicy::Random) {
            pick = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
        } else if (picker.policy == ForestPolicy::Lexmax) {
            pick = *std::max_element(eligible.begin(), eligible.end(),
                                     [&](std::size_t x, std::size_t y) { return cur.tuples[x] < cur.tuples[y]; });
        }
        auto next = reduce_by_tuple(cur, cur.labels[pick]);
        arcs.insert(arcs.end(), next.arcs.begin(), next.arcs.end());
        report.choice_path.push_back(cur.labels[pick]);
        cur = std::move(next.residual);
    }
}

std::optional<Dag> realize_digraph(const Sequence& seq) {
    const std::size_t n = seq.n();
    std::vector<int> in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        in[i] = seq.tuples[i].a;
        out[i] = seq.tuples[i].b;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return out[x] > out[y]; });

    Dag dag{seq.label_space, {}};
    std::vector<std::size_t> targets;
    for (std::size_t v : order) {
        if (out[v] == 0) break;
        targets.clear();
        for (std::size_t w = 0; w < n; ++w)
            if (w != v && in[w] > 0) targets.push_back(w);
        if (targets.size() < static_cast<std::size_t>(out[v])) return std::nullopt;
        // Largest residual indegree first, then largest residual outdegree.
        std::stable_sort(targets.begin(), targets.end(), [&](std::size_t x, std::size_t y) {
            if (in[x] != in[y]) return in[x] > in[y];
            return out[x] > out[y];
        });
        for (int i = 0; i < out[v]; ++i) {
            const std::size_t w = targets[static_cast<std::size_t>(i)];
            --in[w];
            dag.arcs.push_back({seq.labels[v], seq.labels[w]});
        }
        out[v] = 0;
    }
    if (std::any_of(in.begin(), in.end(), [](int x) { return x != 0; })) return std::nullopt;
    return dag;
}

namespace {

// Index of one arc lying on a directed cycle, or nullopt if acyclic.
std::optional<std::size_t> arc_on_cycle(const Dag& g) {
    const std::size_t n = g.n_vertices;
    std::vector<std::vector<std::size_t>> out(n + 1);
    for (std::size_t e = 0; e < g.arcs.size(); ++e) out[g.arcs[e].from].push_back(e);
    std::vector<int> color(n + 1, 0);
    std::vector<std::pair<Label, std::size_t>> stack;
    for (Label root = 1; root <= n; ++root) {
        if (color[root] != 0) continue;
        stack.push_back({root, 0});
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == out[v].size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            const std::size_t e = out[v][next++];
            const Label w = g.arcs[e].to;
            if (color[w] == 1) return e;
            if (color[w] == 0) {
                color[w] = 1;
                stack.push_back({w, 0});
            }
        }
    }
    return std::nullopt;
}

std::vector<Label> weak_components(const Dag& g) {
    std::vector<Label> parent(g.n_vertices + 1);
    std::iota(parent.begin(), parent.end(), Label{0});
    auto find = [&](Label x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& arc : g.arcs) parent[find(arc.from)] = find(arc.to);
    for (Label v = 0; v <= g.n_vertices; ++v) parent[v] = find(v);
    return parent;
}

}  // namespace

SolveReport solve_forest_via_swaps(const Sequence& seq) {
    const Sequence start = prepare_for_solving(seq);
    if (start.sum_in() > static_cast<long long>(start.n()) - 1)
        throw ContractViolation("solve_forest_via_swaps: not a forest sequence (sum of indegrees > n-1)");
    SolveReport report;
    report.strategy = "forest_swaps";
    report.stage = "forest_swaps";
    report.nodes_expanded = 1;
    auto digraph = realize_digraph(start);
    if (!digraph) {
        report.outcome = Outcome::Unrealizable;
        return report;
    }
    Dag g = std::move(*digraph);
    for (std::size_t swaps = 0;; ++swaps) {
        const auto cyc = arc_on_cycle(g);
        if (!cyc) break;
        if (swaps > start.n()) throw std::logic_error("solve_forest_via_swaps: swap bound exceeded");
        const auto comp = weak_components(g);
        const Arc first = g.arcs[*cyc];
        const auto other = std::find_if(g.arcs.begin(), g.arcs.end(),
                                        [&](const Arc& arc) { return comp[arc.from] != comp[first.from]; });
        if (other == g.arcs.end()) throw std::logic_error("solve_forest_via_swaps: cycle inside a single weak component");
        const Arc second = *other;
        g.arcs[*cyc] = {first.from, second.to};
        *other = {second.from, first.to};
        ++report.nodes_expanded;
    }
    report.outcome = Outcome::Realizable;
    report.witness = std::move(g);
    return report;
}

bool admits_opposed_topological_sorting(const Dag& dag, const Sequence& seq) {
    std::vector<std::size_t> streams;
    std::vector<std::ptrdiff_t> slot(dag.n_vertices + 1, -1);
    for (std::size_t i = 0; i < seq.n(); ++i) {
        if (!seq.tuples[i].is_stream()) continue;
        if (seq.labels[i] > dag.n_vertices) return false;
        slot[seq.labels[i]] = static_cast<std::ptrdiff_t>(streams.size());
        streams.push_back(i);
    }
    // Precedence constraints: arcs between stream vertices and strict opposed
    // order. A valid sorting exists iff their union is acyclic.
    const std::size_t k = streams.size();
    std::vector<std::vector<std::size_t>> succ(k);
    std::vector<std::size_t> indeg(k, 0);
    for (const auto& arc : dag.arcs) {
        if (arc.from > dag.n_vertices || arc.to > dag.n_vertices) return false;
        const auto x = slot[arc.from], y = slot[arc.to];
        if (x < 0 || y < 0) continue;
        succ[static_cast<std::size_t>(x)].push_back(static_cast<std::size_t>(y));
    }
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
            if (opposed_less(seq.tuples[streams[x]], seq.tuples[streams[y]])) succ[x].push_back(y);
    for (const auto& s : succ)
        for (std::size_t y : s) ++indeg[y];
    std::vector<std::size_t> ready;
    for (std::size_t x = 0; x < k; ++x)
        if (indeg[x] == 0) ready.push_back(x);
    std::size_t done = 0;
    while (!ready.empty()) {
        const std::size_t x = ready.back();
        ready.pop_back();
        ++done;
        for (std::size_t y : succ[x])
            if (--indeg[y] == 0) ready.push_back(y);
    }
    return done == k;
}

}  // namespace dagreal
