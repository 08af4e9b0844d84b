#pragma once

// Domain types shared by every solver: degree tuples, labeled sequences and
// realization witnesses, plus parsing, validation and canonical ordering.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dagreal {

/// 1-based vertex label referring to a position in the original input.
using Label = std::uint32_t;

enum class Role { Zero, Source, Sink, Stream };

/// Required (indegree | outdegree) of one vertex.
struct DegreeTuple {
    int a = 0;
    int b = 0;

    constexpr Role role() const noexcept {
        if (a == 0) return b == 0 ? Role::Zero : Role::Source;
        return b == 0 ? Role::Sink : Role::Stream;
    }
    constexpr bool is_source() const noexcept { return role() == Role::Source; }
    constexpr bool is_sink() const noexcept { return role() == Role::Sink; }
    constexpr bool is_stream() const noexcept { return role() == Role::Stream; }
    constexpr bool is_zero() const noexcept { return role() == Role::Zero; }

    friend constexpr auto operator<=>(const DegreeTuple&, const DegreeTuple&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised when an operation is called outside its documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Ordered tuples together with the original label of each entry.
///
/// `label_space` is the number of vertices of the original input; witnesses
/// built from a derived sequence (after zero stripping, reduction, ...) are
/// emitted over that many vertices so untouched labels become isolated.
struct Sequence {
    std::vector<DegreeTuple> tuples;
    std::vector<Label> labels;
    Label label_space = 0;

    Sequence() = default;
    /// Labels 1..n in the given order.
    explicit Sequence(std::vector<DegreeTuple> t);
    Sequence(std::vector<DegreeTuple> t, std::vector<Label> l, Label space);

    std::size_t n() const noexcept { return tuples.size(); }
    bool empty() const noexcept { return tuples.empty(); }
    long long sum_in() const noexcept;
    long long sum_out() const noexcept;
    /// Arc count; equal to sum_in() for balanced sequences.
    long long m() const noexcept { return sum_in(); }
    std::size_t sources() const noexcept;
    std::size_t sinks() const noexcept;
    std::size_t streams() const noexcept;
    bool is_balanced() const noexcept { return sum_in() == sum_out(); }
    bool is_source_sink() const noexcept { return streams() == 0; }
    bool has_zero_tuples() const noexcept;
    /// Sources first by decreasing b, sinks last by increasing a.
    bool is_canonical() const noexcept;

    friend bool operator==(const Sequence&, const Sequence&) = default;
};

struct Arc {
    Label from = 0;
    Label to = 0;
    friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

/// Realization witness over vertices 1..n_vertices.
struct Dag {
    Label n_vertices = 0;
    std::vector<Arc> arcs;

    /// Arcs sorted lexicographically; discovery order is kept in `arcs`.
    std::vector<Arc> sorted_arcs() const;
    Dag reversed() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

Sequence parse_sequence(std::istream& in);
Sequence parse_sequence(std::string_view text);
/// One "a b" line per tuple, newline terminated.
std::string serialize(const Sequence& seq);

ValidationReport validate(const Sequence& seq);

/// Stable canonical order; `permutation[i]` is the input index of output tuple i.
std::pair<Sequence, std::vector<std::size_t>> canonical_sort(const Sequence& seq);
Sequence canonicalized(const Sequence& seq);

Sequence strip_zero_tuples(const Sequence& seq);
/// Swap in- and outdegree of every tuple.
Sequence mirror(const Sequence& seq);

std::string to_string(const DegreeTuple& t);
std::string to_string(Role r);

}  // namespace dagreal
