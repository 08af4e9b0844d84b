#include "dagreal/rand.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "dagreal/reduce.hpp"
#include "dagreal/topo.hpp"

namespace dagreal {

std::pair<int, int> lemma4_bounds(int n, int q, int s, int i) {
    return {std::min(n - s, i - 1), std::min(n - q, n - i)};
}

BoundingGraph build_bounding_graph(const Sequence& seq) {
    BoundingGraph bg;
    const int n = static_cast<int>(seq.n());
    const int q = static_cast<int>(seq.sources());
    const int s = static_cast<int>(seq.sinks());
    for (std::size_t j = 0; j < seq.n(); ++j)
        if (seq.tuples[j].is_stream()) bg.stream_index.push_back(j);
    const std::size_t k = bg.stream_index.size();
    bg.left.resize(k);
    bg.right.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        bg.bounds.push_back(lemma4_bounds(n, q, s, q + 1 + static_cast<int>(i)));
        const auto [amax, bmax] = bg.bounds.back();
        for (std::size_t j = 0; j < k; ++j) {
            const auto& t = seq.tuples[bg.stream_index[j]];
            if (t.a <= amax && t.b <= bmax) {
                bg.left[i].push_back(j);
                bg.right[j].push_back(i);
            }
        }
    }
    bg.has_isolated_right = std::any_of(bg.right.begin(), bg.right.end(), [](const auto& adj) { return adj.empty(); });
    return bg;
}

bool has_perfect_matching(const BoundingGraph& bg) {
    const std::size_t k = bg.size();
    if (bg.has_isolated_right) return false;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_right(k, none);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
        for (std::size_t v : bg.left[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            if (match_right[v] == none || augment(match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < k; ++u) {
        seen.assign(k, 0);
        if (!augment(u)) return false;
    }
    return true;
}

namespace {

constexpr std::size_t kMaxSubsetDp = 24;

// completions[mask]: perfect matchings of left positions popcount(mask).. onto
// the right vertices outside mask.
std::vector<std::uint64_t> completions(const BoundingGraph& bg) {
    const std::size_t k = bg.size();
    if (k > kMaxSubsetDp) throw CapacityError("matching count: too many stream tuples for subset enumeration");
    const std::size_t full = (std::size_t{1} << k) - 1;
    std::vector<std::uint64_t> g(full + 1, 0);
    g[full] = 1;
    for (std::size_t mask = full; mask-- > 0;) {
        const auto pos = static_cast<std::size_t>(std::popcount(mask));
        std::uint64_t total = 0;
        for (std::size_t j : bg.left[pos])
            if (!(mask >> j & 1)) total += g[mask | std::size_t{1} << j];
        g[mask] = total;
    }
    return g;
}

}  // namespace

std::uint64_t count_perfect_matchings(const BoundingGraph& bg) {
    if (bg.size() == 0) return 1;
    return completions(bg)[0];
}

std::vector<std::vector<std::size_t>> enumerate_perfect_matchings(const BoundingGraph& bg) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::vector<char> used(bg.size(), 0);
    std::function<void()> rec = [&] {
        const std::size_t pos = cur.size();
        if (pos == bg.size()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j : bg.left[pos]) {
            if (used[j]) continue;
            used[j] = 1;
            cur.push_back(j);
            rec();
            cur.pop_back();
            used[j] = 0;
        }
    };
    rec();
    return out;
}

std::optional<std::vector<std::size_t>> sample_order_uniform(const BoundingGraph& bg, Rng& rng, std::size_t cap) {
    const std::size_t k = bg.size();
    if (k > cap || k > kMaxSubsetDp)
        throw CapacityError("Rand II needs exhaustive matching enumeration and is unavailable above " +
                            std::to_string(std::min(cap, kMaxSubsetDp)) +
                            " stream tuples (an MCMC matching sampler is not implemented)");
    if (k == 0) return std::vector<std::size_t>{};
    if (bg.has_isolated_right) return std::nullopt;
    const auto g = completions(bg);
    if (g[0] == 0) return std::nullopt;
    std::vector<std::size_t> order;
    std::size_t mask = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
        auto r = std::uniform_int_distribution<std::uint64_t>(0, g[mask] - 1)(rng);
        for (std::size_t j : bg.left[pos]) {
            if (mask >> j & 1) continue;
            const auto w = g[mask | std::size_t{1} << j];
            if (r < w) {
                order.push_back(j);
                mask |= std::size_t{1} << j;
                break;
            }
            r -= w;
        }
    }
    return order;
}

std::string to_string(RandVariant v) {
    switch (v) {
        case RandVariant::I: return "rand1";
        case RandVariant::II: return "rand2";
        case RandVariant::III: return "rand3";
        case RandVariant::IV: return "rand4";
    }
    return "?";
}

namespace {

SolveReport realize_stream_order(const Sequence& cur, const std::vector<std::size_t>& streams) {
    SolveReport report;
    report.nodes_expanded = 1;
    std::vector<std::size_t> order;
    order.reserve(cur.n());
    for (std::size_t i = 0; i < cur.n(); ++i)
        if (cur.tuples[i].is_source()) order.push_back(i);
    order.insert(order.end(), streams.begin(), streams.end());
    for (std::size_t i = 0; i < cur.n(); ++i)
        if (cur.tuples[i].is_sink()) order.push_back(i);
    auto dag = realize_with_order(OrderedSequence(cur, std::move(order)));
    report.outcome = dag ? Outcome::Realizable : Outcome::NotFound;
    report.witness = std::move(dag);
    return report;
}

// Uniform choice from V'_min, forced to the lexmax member when it must feed
// every remaining non-source.
CandidatePicker opposed_picker(Rng& rng) {
    return [&rng](const VminSet& c, const Sequence& cur, std::size_t) -> std::size_t {
        const auto rest = static_cast<int>(cur.n() - cur.sources()) - 1;
        if (c.distinct.front().value.b == rest) return 0;
        return std::uniform_int_distribution<std::size_t>(0, c.distinct.size() - 1)(rng);
    };
}

}  // namespace

SolveReport rand_trial(const Sequence& seq, RandVariant variant, Rng& rng, const RandOptions& opts) {
    SolveReport report;
    switch (variant) {
        case RandVariant::I: {
            const Sequence cur = prepare_for_solving(seq);
            std::vector<std::size_t> streams;
            for (std::size_t i = 0; i < cur.n(); ++i)
                if (cur.tuples[i].is_stream()) streams.push_back(i);
            for (std::size_t i = streams.size(); i > 1; --i)
                std::swap(streams[i - 1], streams[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)]);
            report = realize_stream_order(cur, streams);
            break;
        }
        case RandVariant::II: {
            const Sequence cur = prepare_for_solving(seq);
            const auto bg = build_bounding_graph(cur);
            const auto picks = sample_order_uniform(bg, rng, opts.matching_cap);
            if (!picks) {
                report.outcome = Outcome::Unrealizable;
                break;
            }
            std::vector<std::size_t> streams;
            for (std::size_t j : *picks) streams.push_back(bg.stream_index[j]);
            report = realize_stream_order(cur, streams);
            break;
        }
        case RandVariant::III:
            report = solve_single_path(seq, opposed_picker(rng));
            break;
        case RandVariant::IV:
            report = solve_path_with_reductions(seq, opposed_picker(rng));
            break;
    }
    report.strategy = to_string(variant);
    report.stage = report.strategy;
    report.trials = 1;
    report.successes = report.realizable() ? 1 : 0;
    return report;
}

SolveReport run_randomized(const Sequence& seq, RandVariant variant, std::uint64_t trials, std::uint64_t seed,
                           bool stop_at_first, const RandOptions& opts) {
    if (trials == 0) throw std::invalid_argument("run_randomized: trials must be >= 1");
    SolveReport report;
    report.strategy = to_string(variant);
    report.stage = report.strategy;
    report.seed = seed;
    report.outcome = Outcome::NotFound;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(split_seed(seed, t));
        auto trial = rand_trial(seq, variant, rng, opts);
        ++report.trials;
        report.nodes_expanded += trial.nodes_expanded;
        report.max_depth = std::max(report.max_depth, trial.max_depth);
        if (trial.outcome == Outcome::Unrealizable) {
            // A missing perfect matching is a certificate, no need to retry.
            report.outcome = Outcome::Unrealizable;
            return report;
        }
        if (!trial.realizable()) continue;
        ++report.successes;
        if (!report.realizable()) {
            report.outcome = Outcome::Realizable;
            report.witness = std::move(trial.witness);
            report.choice_path = std::move(trial.choice_path);
        }
        if (stop_at_first) break;
    }
    return report;
}

}  // namespace dagreal
