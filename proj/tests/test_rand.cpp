#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <map>

#include "dagreal/rand.hpp"

using namespace dagreal;
using testing::seq;

TEST_CASE("position bounds") {
    CHECK(lemma4_bounds(9, 2, 3, 5) == std::pair{4, 4});
    CHECK(lemma4_bounds(9, 2, 3, 1).first == 0);
    CHECK(lemma4_bounds(9, 2, 3, 9).second == 0);
}

TEST_CASE("bounding graph of example 1") {
    const auto bg = build_bounding_graph(testing::example1());
    REQUIRE(bg.size() == 4);
    // Right vertices in sequence order: (1|2),(2|3),(4|4),(1|1); left v3..v6.
    CHECK(bg.right[2] == std::vector<std::size_t>{2});
    CHECK(bg.right[0] == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(bg.right[3] == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_FALSE(bg.has_isolated_right);
    CHECK(has_perfect_matching(bg));
    CHECK(count_perfect_matchings(bg) == 6);
    CHECK(enumerate_perfect_matchings(bg).size() == 6);
}

TEST_CASE("bounding graph edge cases") {
    const auto iso = build_bounding_graph(seq("(0|1)(0|1)(2|2)(2|0)"));
    CHECK(iso.has_isolated_right);
    CHECK_FALSE(has_perfect_matching(iso));
    CHECK_FALSE(solve_exact(seq("(0|1)(0|1)(2|2)(2|0)")).realizable());
    const auto one = build_bounding_graph(seq("(0|1)(1|1)(1|0)"));
    REQUIRE(one.size() == 1);
    CHECK(one.left[0] == std::vector<std::size_t>{0});
    Rng rng(1);
    for (int i = 0; i < 5; ++i) CHECK(*sample_order_uniform(one, rng) == std::vector<std::size_t>{0});
    CHECK_FALSE(sample_order_uniform(iso, rng));

    BoundingGraph full;
    full.left = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    full.right = full.left;
    full.stream_index = {0, 1, 2};
    CHECK(has_perfect_matching(full));
    CHECK(count_perfect_matchings(full) == 6);

    BoundingGraph hall;  // two left vertices competing for one right vertex
    hall.left = {{0}, {0}};
    hall.right = {{0, 1}, {}};
    hall.stream_index = {0, 1};
    hall.has_isolated_right = true;
    CHECK_FALSE(has_perfect_matching(hall));
}

TEST_CASE("matching sampler is uniform") {
    const auto bg = build_bounding_graph(testing::example1());
    const auto all = enumerate_perfect_matchings(bg);
    std::map<std::vector<std::size_t>, int> seen;
    Rng rng(2024);
    const int draws = 12000;
    for (int i = 0; i < draws; ++i) ++seen[*sample_order_uniform(bg, rng)];
    CHECK(seen.size() == all.size());
    double chi2 = 0;
    const double expect = double(draws) / double(all.size());
    for (const auto& m : all) chi2 += std::pow(seen[m] - expect, 2) / expect;
    CHECK(chi2 < 20.5);  // 5 dof, p = 0.001
}

TEST_CASE("capacity error above the cap") {
    std::vector<DegreeTuple> t{{0, 11}};
    for (int i = 0; i < 11; ++i) t.push_back({1, 1});
    t.push_back({11, 0});
    const auto s = canonicalized(Sequence(t));
    Rng rng(0);
    CHECK_THROWS_AS(sample_order_uniform(build_bounding_graph(s), rng), CapacityError);
    CHECK_NOTHROW(sample_order_uniform(build_bounding_graph(s), rng, 12));
}

namespace {

// Exact single-trial success probability of Rand I: fraction of stream orders.
double exact_p_rand1(const Sequence& input) {
    const Sequence s = canonicalized(input);
    std::vector<std::size_t> streams;
    for (std::size_t i = 0; i < s.n(); ++i)
        if (s.tuples[i].is_stream()) streams.push_back(i);
    std::size_t ok = 0, total = 0;
    do {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < s.n(); ++i)
            if (s.tuples[i].is_source()) order.push_back(i);
        order.insert(order.end(), streams.begin(), streams.end());
        for (std::size_t i = 0; i < s.n(); ++i)
            if (s.tuples[i].is_sink()) order.push_back(i);
        ok += realize_with_order(OrderedSequence(s, order)).has_value();
        ++total;
    } while (std::next_permutation(streams.begin(), streams.end()));
    return double(ok) / double(total);
}

// Exact probability of Rand III by walking the choice tree.
double exact_p_rand3(const Sequence& s) {
    if (s.is_source_sink()) return realize_source_sink(s) ? 1.0 : 0.0;
    const auto v = compute_vmin_unchecked(s);
    if (v.distinct.empty()) return 0.0;
    if (v.distinct.front().value.b == static_cast<int>(s.n() - s.sources()) - 1)
        return exact_p_rand3(reduce_by_tuple(s, v.distinct.front().label).residual);
    double p = 0;
    for (const auto& c : v.distinct) p += exact_p_rand3(reduce_by_tuple(s, c.label).residual);
    return p / double(v.distinct.size());
}

void check_rate(const Sequence& s, RandVariant v, double p) {
    const std::uint64_t trials = 10000;
    const auto r = run_randomized(s, v, trials, 99, false);
    CHECK(r.trials == trials);
    const double hat = double(r.successes) / double(trials);
    const double se = std::sqrt(std::max(p * (1 - p), 1e-9) / double(trials));
    CHECK_MESSAGE(std::abs(hat - p) <= 3 * se + 1e-12, to_string(v) << " p=" << p << " hat=" << hat);
}

}  // namespace

TEST_CASE("empirical success rates match the exact probabilities") {
    const auto& s = testing::example1();
    const double p1 = exact_p_rand1(s);
    const double p3 = exact_p_rand3(canonicalized(s));
    CHECK(p1 > 0);
    CHECK(p1 < 1);
    CHECK(p3 > 0);
    check_rate(s, RandVariant::I, p1);
    check_rate(s, RandVariant::III, p3);
    check_rate(testing::example2_s1(), RandVariant::I, exact_p_rand1(testing::example2_s1()));
    check_rate(testing::example2_s1(), RandVariant::III, exact_p_rand3(canonicalized(testing::example2_s1())));
}

TEST_CASE("rand witnesses verify and III/IV keep an opposed topological sorting") {
    std::size_t runs = 0;
    testing::for_each_sequence(6, [&](const Sequence& s) {
        for (int v = 1; v <= 4; ++v) {
            const auto r = run_randomized(s, static_cast<RandVariant>(v), 3, 5);
            if (!r.realizable()) continue;
            ++runs;
            CHECK(verify_realization(*r.witness, s));
            if (v >= 3) CHECK(admits_opposed_topological_sorting(*r.witness, s));
        }
    }, 2);
    CHECK(runs > 100);
}

TEST_CASE("opposed sequences: Rand III never fails") {
    testing::for_each_sequence(6, [](const Sequence& s) {
        if (!is_opposed_sequence(s) || !solve_exact(s).realizable()) return;
        const auto r = run_randomized(s, RandVariant::III, 5, 1, false);
        CHECK(r.successes == 5);
    });
}

TEST_CASE("unrealizable input fails every variant") {
    const auto s = seq("(1|1)(1|1)");
    for (int v = 1; v <= 4; ++v) {
        const auto r = run_randomized(s, static_cast<RandVariant>(v), 10, 3, false);
        CHECK_FALSE(r.realizable());
        CHECK(r.successes == 0);
    }
    CHECK(run_randomized(s, RandVariant::II, 10, 3).outcome == Outcome::Unrealizable);
    CHECK_THROWS_AS(run_randomized(seq("(0|2)(2|0)"), RandVariant::I, 1, 0), ContractViolation);
}

TEST_CASE("seeded determinism") {
    for (int v = 1; v <= 4; ++v) {
        const auto variant = static_cast<RandVariant>(v);
        const auto a = run_randomized(testing::example1(), variant, 50, 42, false);
        const auto b = run_randomized(testing::example1(), variant, 50, 42, false);
        CHECK(a.successes == b.successes);
        CHECK(a.nodes_expanded == b.nodes_expanded);
        CHECK(a.witness.has_value() == b.witness.has_value());
        if (a.witness) CHECK(a.witness->arcs == b.witness->arcs);

        Rng rng(split_seed(42, 0));
        const auto one = rand_trial(testing::example1(), variant, rng);
        const auto first = run_randomized(testing::example1(), variant, 1, 42);
        CHECK(one.outcome == first.outcome);
        CHECK(one.nodes_expanded == first.nodes_expanded);
    }
    CHECK_THROWS_AS(run_randomized(testing::example1(), RandVariant::I, 0, 0), std::invalid_argument);
}
