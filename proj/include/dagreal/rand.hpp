#pragma once

// Position bounds, the bounding graph and the randomized strategies.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dagreal/core.hpp"
#include "dagreal/exact.hpp"
#include "dagreal/gen.hpp"

namespace dagreal {

inline constexpr std::size_t kDefaultMatchingCap = 10;

/// Upper bounds (a_max, b_max) for the tuple at 1-based position i of a
/// realization's topological order.
std::pair<int, int> lemma4_bounds(int n, int q, int s, int i);

/// Bipartite graph between stream positions q+1..n-s (left) and stream tuples
/// (right). left[i] lists right indices, right[j] lists left indices.
struct BoundingGraph {
    std::vector<std::pair<int, int>> bounds;  // per left vertex
    std::vector<std::size_t> stream_index;    // per right vertex, index into the sequence
    std::vector<std::vector<std::size_t>> left;
    std::vector<std::vector<std::size_t>> right;
    bool has_isolated_right = false;

    std::size_t size() const noexcept { return right.size(); }
};

BoundingGraph build_bounding_graph(const Sequence& seq);

bool has_perfect_matching(const BoundingGraph& bg);

/// Number of perfect matchings (exact, via subset dynamic programming).
std::uint64_t count_perfect_matchings(const BoundingGraph& bg);

/// All perfect matchings; m[i] is the right vertex matched to left i.
std::vector<std::vector<std::size_t>> enumerate_perfect_matchings(const BoundingGraph& bg);

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uniform perfect matching; returns the right vertex placed at each left
/// position, or nullopt when no perfect matching exists. Throws CapacityError
/// above `cap` stream tuples.
std::optional<std::vector<std::size_t>> sample_order_uniform(const BoundingGraph& bg, Rng& rng,
                                                             std::size_t cap = kDefaultMatchingCap);

enum class RandVariant { I = 1, II = 2, III = 3, IV = 4 };
std::string to_string(RandVariant v);

struct RandOptions {
    std::size_t matching_cap = kDefaultMatchingCap;
};

/// One randomized trial. Realizable, NotFound, or (variant II only, when the
/// bounding graph has no perfect matching) Unrealizable.
SolveReport rand_trial(const Sequence& seq, RandVariant variant, Rng& rng, const RandOptions& opts = {});

/// Trial t runs on sub-seed split_seed(seed, t). With stop_at_first the run
/// ends at the first success; otherwise every trial runs and `successes`
/// tallies them. The witness is always the first successful trial's.
SolveReport run_randomized(const Sequence& seq, RandVariant variant, std::uint64_t trials, std::uint64_t seed,
                           bool stop_at_first = true, const RandOptions& opts = {});

}  // namespace dagreal
