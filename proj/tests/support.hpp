#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "dagreal/core.hpp"
#include "dagreal/exact.hpp"
#include "dagreal/gen.hpp"
#include "dagreal/topo.hpp"

namespace testing {

using namespace dagreal;

// "(0|3)(0|1)(1|0)" -> Sequence with labels 1..n in the written order.
inline Sequence seq(const std::string& text) {
    std::vector<DegreeTuple> t;
    for (std::size_t i = 0; (i = text.find('(', i)) != std::string::npos; ++i) {
        const auto bar = text.find('|', i), close = text.find(')', i);
        t.push_back({std::stoi(text.substr(i + 1, bar - i - 1)), std::stoi(text.substr(bar + 1, close - bar - 1))});
    }
    return Sequence(std::move(t));
}

inline std::string str(const Sequence& s) {
    std::string out;
    for (const auto& t : s.tuples) out += to_string(t);
    return out;
}

inline const Sequence& example1() {
    static const Sequence s = seq("(0|3)(0|1)(1|2)(2|3)(4|4)(1|1)(1|0)(2|0)(3|0)");
    return s;
}
inline const Sequence& example2_s1() {
    static const Sequence s = seq("(0|5)(0|5)(0|5)(0|2)(0|2)(5|5)(5|5)(2|2)(2|2)(1|0)(1|0)(2|0)(6|0)(9|0)");
    return s;
}
inline const Sequence& example2_s2() {
    static const Sequence s = seq("(0|5)(0|5)(0|5)(0|2)(0|2)(5|5)(5|5)(2|2)(2|2)(6|0)(6|0)(7|0)");
    return s;
}
inline const Sequence& worked_example() {
    static const Sequence s = seq("(0|3)(0|3)(2|2)(3|3)(1|0)(2|0)(3|0)");
    return s;
}

// Exhaustive search: some vertex order plus an arc subset compatible with it
// meets every degree exactly. Independent of the greedy realizers.
inline bool brute_force_realizable(const Sequence& s) {
    const std::size_t n = s.n();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        std::vector<int> need_in(n), need_out(n);
        for (std::size_t i = 0; i < n; ++i) {
            need_in[i] = s.tuples[i].a;
            need_out[i] = s.tuples[i].b;
        }
        // Decide arcs position pair by position pair (x before y).
        std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t x, std::size_t y) -> bool {
            if (x + 1 >= n) {
                return std::all_of(need_in.begin(), need_in.end(), [](int v) { return v == 0; }) &&
                       std::all_of(need_out.begin(), need_out.end(), [](int v) { return v == 0; });
            }
            if (y == n) {
                if (need_out[perm[x]] != 0) return false;
                return go(x + 1, x + 2);
            }
            const std::size_t u = perm[x], v = perm[y];
            if (need_out[u] > 0 && need_in[v] > 0) {
                --need_out[u];
                --need_in[v];
                const bool ok = go(x, y + 1);
                ++need_out[u];
                ++need_in[v];
                if (ok) return true;
            }
            return go(x, y + 1);
        };
        if (go(0, 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Exists an order of stream and sink tuples (sources first) that the greedy
// realizer accepts.
inline bool permutation_oracle(const Sequence& input) {
    const Sequence s = canonicalized(strip_zero_tuples(input));
    const std::size_t q = s.sources();
    std::vector<std::size_t> rest(s.n() - q);
    std::iota(rest.begin(), rest.end(), q);
    // Equal tuples are interchangeable, so only distinct value orders are tried.
    const auto by_value = [&](std::size_t x, std::size_t y) { return s.tuples[x] < s.tuples[y]; };
    std::sort(rest.begin(), rest.end(), by_value);
    do {
        std::vector<std::size_t> order(q);
        std::iota(order.begin(), order.end(), std::size_t{0});
        order.insert(order.end(), rest.begin(), rest.end());
        if (realize_with_order(OrderedSequence(s, order))) return true;
    } while (std::next_permutation(rest.begin(), rest.end(), by_value));
    return false;
}

// Every balanced zero-free multiset with n tuples, any m.
inline void for_each_sequence(std::size_t n, const std::function<void(const Sequence&)>& f, std::size_t min_streams = 0) {
    for (long long m = 0; m <= static_cast<long long>(n * (n - 1) / 2); ++m)
        enumerate_sequences({n, m, min_streams}, [&](const Sequence& s, const Cursor&) {
            f(s);
            return true;
        });
}

}  // namespace testing
