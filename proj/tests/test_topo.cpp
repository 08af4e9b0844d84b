#include "doctest.h"
#include "support.hpp"

using namespace dagreal;
using testing::seq;

namespace {

// Positions of the given tuple values in Example 1 (labels are positions).
std::vector<std::size_t> ex1_order(std::vector<std::size_t> streams) {
    std::vector<std::size_t> order{0, 1};
    order.insert(order.end(), streams.begin(), streams.end());
    for (std::size_t i : {6, 7, 8}) order.push_back(i);
    return order;
}

}  // namespace

TEST_CASE("realize with the figure's good order") {
    const auto& s = testing::example1();
    // (1|2),(2|3),(4|4),(1|1)
    const auto dag = realize_with_order(OrderedSequence(s, ex1_order({2, 3, 4, 5})));
    REQUIRE(dag);
    CHECK(verify_realization(*dag, s));
}

TEST_CASE("realize with the figure's bad order") {
    // (1|1),(1|2),(4|4),(2|3)
    CHECK_FALSE(realize_with_order(OrderedSequence(testing::example1(), ex1_order({5, 2, 4, 3}))));
}

TEST_CASE("ordered sequence moves sources first") {
    const auto s = seq("(1|0)(0|1)(0|2)(1|1)");
    OrderedSequence o(s, {0, 3, 1, 2});
    CHECK(o.order() == std::vector<std::size_t>{2, 1, 0, 3});
    CHECK_THROWS_AS(OrderedSequence(s, {0, 0, 1, 2}), ContractViolation);
}

TEST_CASE("empty sequence") {
    const auto dag = realize_with_order(OrderedSequence(strip_zero_tuples(seq("(0|0)"))));
    REQUIRE(dag);
    CHECK(dag->arcs.empty());
}

TEST_CASE("source-sink realization") {
    const auto s = seq("(0|1)(0|1)(0|1)(0|3)(1|0)(2|0)(3|0)");
    const auto dag = realize_source_sink(s);
    REQUIRE(dag);
    CHECK(verify_realization(*dag, s));
    CHECK_FALSE(realize_source_sink(seq("(0|2)(2|0)")));
    const auto fan = realize_source_sink(seq("(0|2)(1|0)(1|0)"));
    REQUIRE(fan);
    CHECK(fan->sorted_arcs() == std::vector<Arc>{{1, 2}, {1, 3}});
    CHECK(verify_realization(*fan, seq("(0|2)(1|0)(1|0)")));
    CHECK_THROWS_AS(realize_source_sink(seq("(0|1)(1|1)(1|0)")), ContractViolation);
}

TEST_CASE("verify rejects bad witnesses") {
    CHECK(verify_realization(Dag{0, {}}, Sequence{}));
    CHECK_FALSE(verify_realization(Dag{1, {{1, 1}}}, seq("(1|1)")));
    CHECK_FALSE(verify_realization(Dag{2, {{1, 2}, {1, 2}}}, seq("(0|2)(2|0)")));
    CHECK_FALSE(verify_realization(Dag{2, {{1, 2}, {2, 1}}}, seq("(1|1)(1|1)")));
    CHECK_FALSE(verify_realization(Dag{2, {{1, 2}}}, seq("(0|1)(0|0)")));
    CHECK_FALSE(verify_realization(Dag{2, {{1, 3}}}, seq("(0|1)(1|0)")));
    CHECK(verify_realization(Dag{2, {{1, 2}}}, seq("(0|1)(1|0)")));
}

TEST_CASE("topological order") {
    CHECK(topological_order(Dag{3, {{2, 1}, {3, 2}}}) == std::vector<Label>{3, 2, 1});
    CHECK_FALSE(topological_order(Dag{2, {{1, 2}, {2, 1}}}));
}

TEST_CASE("greedy realizer agrees with arc-subset search for every order, n <= 5") {
    // For each order, compare against an exhaustive search restricted to that order.
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 5; ++n)
        testing::for_each_sequence(n, [&](const Sequence& s) {
            const Sequence c = canonicalized(s);
            std::vector<std::size_t> order(c.n());
            std::iota(order.begin(), order.end(), std::size_t{0});
            do {
                const OrderedSequence o(c, order);
                const auto dag = realize_with_order(o);
                if (dag) CHECK(verify_realization(*dag, c));
                // Exhaustive: arcs only forward along o.order().
                const auto& ord = o.order();
                std::vector<int> in(c.n()), out(c.n());
                for (std::size_t i = 0; i < c.n(); ++i) {
                    in[i] = c.tuples[i].a;
                    out[i] = c.tuples[i].b;
                }
                std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t x, std::size_t y) -> bool {
                    if (x + 1 >= c.n())
                        return std::all_of(in.begin(), in.end(), [](int v) { return !v; }) &&
                               std::all_of(out.begin(), out.end(), [](int v) { return !v; });
                    if (y == c.n()) return out[ord[x]] == 0 && go(x + 1, x + 2);
                    const auto u = ord[x], v = ord[y];
                    if (out[u] && in[v]) {
                        --out[u], --in[v];
                        const bool ok = go(x, y + 1);
                        ++out[u], ++in[v];
                        if (ok) return true;
                    }
                    return go(x, y + 1);
                };
                CHECK(dag.has_value() == go(0, 1));
                ++checked;
            } while (std::next_permutation(order.begin(), order.end()));
        });
    CHECK(checked > 1000);
}
