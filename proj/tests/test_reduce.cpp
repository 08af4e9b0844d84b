#include "doctest.h"
#include "support.hpp"

#include "dagreal/rand.hpp"
#include "dagreal/reduce.hpp"

#include <algorithm>

using namespace dagreal;
using testing::seq;
using testing::str;

namespace {

// Forced arcs plus a realization of the residual must realize the original.
void check_replay(const Sequence& s) {
    const auto trace = reduce_fixpoint(s);
    const auto before = solve_exact(s);
    if (!validate(trace.residual).ok()) {
        CHECK_MESSAGE(!before.realizable(), str(s));
        return;
    }
    const auto after = solve_exact(trace.residual);
    CHECK_MESSAGE(before.realizable() == after.realizable(), str(s));
    if (!after.realizable()) return;
    Dag dag{s.label_space, trace.forced_arcs()};
    dag.arcs.insert(dag.arcs.end(), after.witness->arcs.begin(), after.witness->arcs.end());
    CHECK_MESSAGE(verify_realization(dag, s), str(s));
}

}  // namespace

TEST_CASE("rule 1") {
    const auto step = rule_unique_vmin(testing::worked_example());
    REQUIRE(step);
    CHECK_FALSE(step->mirrored);
    CHECK(step->labels == std::vector<Label>{3});
    CHECK(str(step->residual) == "(0|2)(0|2)(0|2)(3|3)(1|0)(2|0)(3|0)");
    // Example 1: two candidates on the primal side, two on the mirrored side.
    CHECK_FALSE(rule_unique_vmin(testing::example1()));
    CHECK_FALSE(rule_unique_vmin(seq("(0|1)(1|0)")));
}

TEST_CASE("rule 1 from the mirrored side") {
    // Primal candidates (2|2),(1|1); the mirrored side has only (1|1).
    const auto s = seq("(0|1)(0|1)(1|1)(2|2)(2|0)");
    CHECK(compute_vmin_unchecked(s).distinct.size() == 2);
    CHECK(compute_vmin_unchecked(canonicalized(mirror(s))).distinct.size() == 1);
    const auto step = rule_unique_vmin(s);
    REQUIRE(step);
    CHECK(step->mirrored);
    check_replay(s);
}

TEST_CASE("rule 2") {
    const auto step = rule_degree_dominance(seq("(0|2)(1|1)(2|0)"));
    REQUIRE(step);
    CHECK_FALSE(step->mirrored);
    CHECK(step->arcs == std::vector<Arc>{{1, 2}, {1, 3}});
    CHECK(str(step->residual) == "(0|1)(1|0)");

    const auto m = rule_degree_dominance(seq("(0|2)(0|1)(2|1)(1|0)(1|0)"));
    REQUIRE(m);
    CHECK(m->mirrored);
    CHECK(m->labels == std::vector<Label>{3});
    // (2|1) follows both sources and then feeds the first sink.
    auto arcs = m->arcs;
    std::sort(arcs.begin(), arcs.end());
    CHECK(arcs == std::vector<Arc>{{1, 3}, {2, 3}, {3, 4}});
    CHECK(str(m->residual) == "(0|1)(1|0)");
    CHECK(m->residual.labels == std::vector<Label>{1, 5});

    CHECK_FALSE(rule_degree_dominance(seq("(0|1)(0|1)(1|1)(1|1)(1|0)(1|0)")));
    // (2|2) would have to be fed by two sources but there is one.
    CHECK_FALSE(rule_degree_dominance(seq("(0|2)(2|2)(2|2)(2|0)")));
}

TEST_CASE("unrealizable input never yields a witness through reductions") {
    const auto s = seq("(0|1)(0|1)(2|2)(2|2)(2|2)(2|0)");
    REQUIRE_FALSE(solve_exact(s).realizable());
    CHECK_FALSE(solve_lexmax_with_reductions(s).realizable());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        CHECK_FALSE(rand_trial(s, RandVariant::IV, rng).realizable());
    }
}

TEST_CASE("rule 3") {
    const auto step = rule_total_degree(seq("(0|1)(1|1)(1|0)"));
    REQUIRE(step);
    CHECK(step->arcs == std::vector<Arc>{{1, 2}, {2, 3}});
    CHECK(step->residual.empty());

    const auto big = rule_total_degree(seq("(0|2)(0|1)(2|2)(1|0)(2|0)"));
    REQUIRE(big);
    CHECK(big->arcs == std::vector<Arc>{{2, 3}, {3, 4}});
    CHECK(str(big->residual) == "(0|2)(1|1)(2|0)");
    CHECK(big->residual.labels == std::vector<Label>{1, 3, 5});

    // (4|4) touches everything; only the (0|1) source and (1|0) sink are wired.
    const auto ex1 = rule_total_degree(testing::example1());
    REQUIRE(ex1);
    CHECK(ex1->arcs == std::vector<Arc>{{2, 5}, {5, 7}});
    CHECK_FALSE(rule_total_degree(seq("(0|1)(0|1)(1|1)(1|1)(1|0)(1|0)")));
}

TEST_CASE("fixpoint") {
    const auto id = reduce_fixpoint(seq("(0|1)(0|1)(2|0)"));
    CHECK_FALSE(id.progressed());
    CHECK(str(id.residual) == "(0|1)(0|1)(2|0)");

    const auto opposed = reduce_fixpoint(seq("(0|2)(0|1)(1|1)(2|1)(1|0)(2|0)"));
    CHECK(opposed.residual.is_source_sink());

    check_replay(testing::example1());
    check_replay(testing::example2_s1());
    check_replay(testing::example2_s2());
}

TEST_CASE("reductions are safe, n <= 6") {
    for (std::size_t n = 2; n <= 6; ++n) testing::for_each_sequence(n, check_replay, 1);
}

TEST_CASE("lexmax with reductions") {
    const auto r = solve_lexmax_with_reductions(testing::example1());
    REQUIRE(r.realizable());
    CHECK(verify_realization(*r.witness, testing::example1()));
    CHECK(r.stage == "lexmax_reduced");
    CHECK(solve_lexmax_with_reductions(testing::example2_s2()).realizable());
}
