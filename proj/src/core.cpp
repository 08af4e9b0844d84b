#include "dagreal/core.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>

namespace dagreal {

Sequence::Sequence(std::vector<DegreeTuple> t) : tuples(std::move(t)) {
    labels.resize(tuples.size());
    std::iota(labels.begin(), labels.end(), Label{1});
    label_space = static_cast<Label>(tuples.size());
}

Sequence::Sequence(std::vector<DegreeTuple> t, std::vector<Label> l, Label space)
    : tuples(std::move(t)), labels(std::move(l)), label_space(space) {
    if (tuples.size() != labels.size())
        throw ContractViolation("Sequence: tuple and label counts differ");
}

long long Sequence::sum_in() const noexcept {
    long long s = 0;
    for (const auto& t : tuples) s += t.a;
    return s;
}

long long Sequence::sum_out() const noexcept {
    long long s = 0;
    for (const auto& t : tuples) s += t.b;
    return s;
}

std::size_t Sequence::sources() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tuples.begin(), tuples.end(), [](const DegreeTuple& t) { return t.is_source(); }));
}

std::size_t Sequence::sinks() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tuples.begin(), tuples.end(), [](const DegreeTuple& t) { return t.is_sink(); }));
}

std::size_t Sequence::streams() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tuples.begin(), tuples.end(), [](const DegreeTuple& t) { return t.is_stream(); }));
}

bool Sequence::has_zero_tuples() const noexcept {
    return std::any_of(tuples.begin(), tuples.end(), [](const DegreeTuple& t) { return t.is_zero(); });
}

bool Sequence::is_canonical() const noexcept {
    const std::size_t q = sources();
    const std::size_t s = sinks();
    const std::size_t len = n();
    for (std::size_t i = 0; i < q; ++i) {
        if (!tuples[i].is_source()) return false;
        if (i > 0 && tuples[i - 1].b < tuples[i].b) return false;
    }
    for (std::size_t i = len - s; i < len; ++i) {
        if (!tuples[i].is_sink()) return false;
        if (i > len - s && tuples[i - 1].a > tuples[i].a) return false;
    }
    return true;
}

std::vector<Arc> Dag::sorted_arcs() const {
    auto out = arcs;
    std::sort(out.begin(), out.end());
    return out;
}

Dag Dag::reversed() const {
    Dag d{n_vertices, {}};
    d.arcs.reserve(arcs.size());
    for (const auto& arc : arcs) d.arcs.push_back({arc.to, arc.from});
    return d;
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

Sequence parse_sequence(std::istream& in) {
    std::vector<DegreeTuple> tuples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first.front() == '#') continue;
        std::string second, extra;
        if (!(fields >> second)) throw ParseError(lineno, "expected two integers, got one field");
        if (fields >> extra) throw ParseError(lineno, "expected two integers, got more fields");
        long long a = 0, b = 0;
        if (!parse_int(first, a) || !parse_int(second, b))
            throw ParseError(lineno, "non-integer field in '" + line + "'");
        if (a < 0 || b < 0) throw ParseError(lineno, "negative degree in '" + line + "'");
        if (a > (1 << 30) || b > (1 << 30)) throw ParseError(lineno, "degree out of range");
        tuples.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
    return Sequence(std::move(tuples));
}

Sequence parse_sequence(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_sequence(in);
}

std::string serialize(const Sequence& seq) {
    std::string out;
    for (const auto& t : seq.tuples) {
        out += std::to_string(t.a);
        out += ' ';
        out += std::to_string(t.b);
        out += '\n';
    }
    return out;
}

ValidationReport validate(const Sequence& seq) {
    ValidationReport report;
    const long long in = seq.sum_in();
    const long long out = seq.sum_out();
    if (in != out)
        report.violations.push_back("sum of indegrees " + std::to_string(in) + " != sum of outdegrees " +
                                    std::to_string(out));
    const long long bound = static_cast<long long>(seq.n()) - 1;
    for (std::size_t i = 0; i < seq.n(); ++i) {
        const auto& t = seq.tuples[i];
        if (t.a > bound || t.b > bound)
            report.violations.push_back("tuple " + std::to_string(seq.labels[i]) + " " + to_string(t) +
                                        " exceeds degree bound n-1=" + std::to_string(bound));
    }
    return report;
}

std::pair<Sequence, std::vector<std::size_t>> canonical_sort(const Sequence& seq) {
    std::vector<std::size_t> perm(seq.n());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto group = [&](std::size_t i) {
        switch (seq.tuples[i].role()) {
            case Role::Source: return 0;
            case Role::Sink: return 2;
            default: return 1;
        }
    };
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
        const int gx = group(x), gy = group(y);
        if (gx != gy) return gx < gy;
        if (gx == 0) return seq.tuples[x].b > seq.tuples[y].b;
        if (gx == 2) return seq.tuples[x].a < seq.tuples[y].a;
        return false;
    });
    Sequence out;
    out.label_space = seq.label_space;
    out.tuples.reserve(seq.n());
    out.labels.reserve(seq.n());
    for (std::size_t i : perm) {
        out.tuples.push_back(seq.tuples[i]);
        out.labels.push_back(seq.labels[i]);
    }
    return {std::move(out), std::move(perm)};
}

Sequence canonicalized(const Sequence& seq) { return canonical_sort(seq).first; }

Sequence strip_zero_tuples(const Sequence& seq) {
    Sequence out;
    out.label_space = seq.label_space;
    for (std::size_t i = 0; i < seq.n(); ++i) {
        if (seq.tuples[i].is_zero()) continue;
        out.tuples.push_back(seq.tuples[i]);
        out.labels.push_back(seq.labels[i]);
    }
    return out;
}

Sequence mirror(const Sequence& seq) {
    Sequence out = seq;
    for (auto& t : out.tuples) std::swap(t.a, t.b);
    return out;
}

std::string to_string(const DegreeTuple& t) { return "(" + std::to_string(t.a) + "|" + std::to_string(t.b) + ")"; }

std::string to_string(Role r) {
    switch (r) {
        case Role::Zero: return "zero";
        case Role::Source: return "source";
        case Role::Sink: return "sink";
        case Role::Stream: return "stream";
    }
    return "?";
}

}  // namespace dagreal
