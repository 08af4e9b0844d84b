#pragma once

// Per-sequence characteristics: density, distance to opposed, classification.

#include <cstdint>
#include <optional>
#include <string>

#include "dagreal/core.hpp"

namespace dagreal {

/// Nonnegative fraction kept in lowest terms.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Ratio() = default;
    Ratio(std::uint64_t n, std::uint64_t d);
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    /// Decimal rendering rounded half-up to `digits` places.
    std::string fixed(int digits = 2) const;
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// m / C(n,2). Throws std::domain_error for n < 2.
Ratio dag_density(std::uint64_t n, std::uint64_t m);

/// Incomparable stream pairs along the lexmax-first exact solution; nullopt
/// if the sequence is not a dag sequence.
std::optional<std::uint64_t> distance_to_opposed(const Sequence& seq);

/// d(S) / C(b,2) with b stream tuples; 0 when b <= 1.
std::optional<Ratio> normalized_distance(const Sequence& seq);

enum class ProfileDepth { Cheap, Full };

struct SequenceProfile {
    std::size_t n = 0;
    long long m = 0;
    std::size_t q = 0;
    std::size_t s = 0;
    std::size_t streams = 0;
    std::optional<Ratio> density;
    bool is_opposed = false;
    bool is_forest = false;
    bool is_source_sink = false;
    bool is_trivial = false;
    bool lexmax_solvable = false;
    bool reducible_then_lexmax_solvable = false;
    /// Some reduction rule fires on the sequence itself.
    bool reducible = false;
    std::optional<bool> exact_realizable;
    std::optional<std::uint64_t> distance;
    std::optional<Ratio> normalized;

    bool non_lexmax() const noexcept { return !lexmax_solvable; }
    bool nonreducible_nonlexmax() const noexcept { return !lexmax_solvable && !reducible_then_lexmax_solvable && !reducible; }
};

/// Input must pass validate(); zero tuples are ignored.
SequenceProfile profile(const Sequence& seq, ProfileDepth depth = ProfileDepth::Cheap);

}  // namespace dagreal
