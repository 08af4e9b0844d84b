#include "dagreal/gen.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dagreal/topo.hpp"

namespace dagreal {

std::string Cursor::encode() const {
    std::string out;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(types[i]);
    }
    return out;
}

Cursor Cursor::decode(std::string_view token) {
    Cursor c;
    std::string field;
    std::istringstream in{std::string(token)};
    while (std::getline(in, field, '.')) {
        if (field.empty() || !std::all_of(field.begin(), field.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw std::invalid_argument("malformed cursor token");
        const unsigned long v = std::stoul(field);
        if (v > 0xFFFF) throw std::invalid_argument("malformed cursor token");
        c.types.push_back(static_cast<std::uint16_t>(v));
    }
    return c;
}

namespace {

class Enumerator {
public:
    Enumerator(const EnumerationSpec& spec, const SequenceVisitor& visit) : spec_(spec), visit_(visit) {
        if (spec.n > kMaxEnumerationN)
            throw std::invalid_argument("enumeration is capped at n <= " + std::to_string(kMaxEnumerationN));
        const int top = spec.n == 0 ? 0 : static_cast<int>(spec.n) - 1;
        for (int a = 0; a <= top; ++a)
            for (int b = 0; b <= (spec.dag_filter ? top - a : top); ++b)
                if (a != 0 || b != 0) types_.push_back({a, b});
        sources_ = spec.dag_filter && spec.m > 0 ? static_cast<std::size_t>(top) : types_.size();
        chosen_.types.resize(spec.n);
    }

    std::size_t type_count() const noexcept { return types_.size(); }

    void run(const std::optional<Cursor>& from) {
        if (from && from->types.size() != spec_.n) throw std::invalid_argument("cursor does not match n");
        from_ = from ? &*from : nullptr;
        if (spec_.n == 0) {
            if (spec_.m == 0 && spec_.min_streams == 0) emit();
            return;
        }
        descend(0, 0, spec_.m, spec_.m, 0, false, from_ != nullptr);
    }

    void run_chunk(std::size_t chunk) {
        if (spec_.n == 0 || chunk >= types_.size()) return;
        if (chunk >= sources_) return;
        from_ = nullptr;
        place(0, chunk, spec_.m, spec_.m, 0, false, false);
    }

private:
    // Returns false once the visitor asked to stop.
    // A dag with arcs has a source and a sink; sources sort first, so the
    // smallest tuple must be one.
    bool descend(std::size_t pos, std::size_t min_type, long long ra, long long rb, std::size_t streams, bool sink,
                 bool tight) {
        if (pos == spec_.n) {
            if (ra != 0 || rb != 0 || streams < spec_.min_streams) return true;
            if (spec_.dag_filter && spec_.m > 0 && !sink) return true;
            return emit();
        }
        std::size_t start = min_type;
        if (tight) start = std::max<std::size_t>(start, from_->types[pos]);
        const std::size_t stop = pos == 0 ? sources_ : types_.size();
        for (std::size_t t = start; t < stop; ++t) {
            const long long rem = static_cast<long long>(spec_.n - pos);
            if (static_cast<long long>(types_[t].a) * rem > ra) break;
            if (!place(pos, t, ra, rb, streams, sink, tight && t == from_->types[pos])) return false;
        }
        return true;
    }

    bool place(std::size_t pos, std::size_t t, long long ra, long long rb, std::size_t streams, bool sink, bool tight) {
        const long long cap = static_cast<long long>(spec_.n) - 1;
        const long long after = static_cast<long long>(spec_.n - pos - 1);
        const DegreeTuple& ty = types_[t];
        const long long na = ra - ty.a, nb = rb - ty.b;
        if (na < 0 || nb < 0 || na > after * cap || nb > after * cap) return true;
        const std::size_t ns = streams + (ty.is_stream() ? 1 : 0);
        if (ns + static_cast<std::size_t>(after) < spec_.min_streams) return true;
        chosen_.types[pos] = static_cast<std::uint16_t>(t);
        return descend(pos + 1, t, na, nb, ns, sink || ty.is_sink(), tight);
    }

    bool emit() {
        std::vector<DegreeTuple> tuples;
        tuples.reserve(spec_.n);
        for (auto t : chosen_.types) tuples.push_back(types_[t]);
        return visit_(canonicalized(Sequence(std::move(tuples))), chosen_);
    }

    const EnumerationSpec& spec_;
    const SequenceVisitor& visit_;
    std::vector<DegreeTuple> types_;
    Cursor chosen_;
    const Cursor* from_ = nullptr;
    std::size_t sources_ = 0;  // bound on the first type; below it only (0|b)
};

}  // namespace

void enumerate_sequences(const EnumerationSpec& spec, const SequenceVisitor& visit, const std::optional<Cursor>& from) {
    Enumerator(spec, visit).run(from);
}

std::size_t enumeration_chunks(const EnumerationSpec& spec) {
    if (spec.n > kMaxEnumerationN)
        throw std::invalid_argument("enumeration is capped at n <= " + std::to_string(kMaxEnumerationN));
    if (spec.n == 0) return 0;
    return spec.dag_filter ? spec.n * (spec.n + 1) / 2 - 1 : spec.n * spec.n - 1;
}

void enumerate_chunk(const EnumerationSpec& spec, std::size_t chunk, const SequenceVisitor& visit) {
    Enumerator(spec, visit).run_chunk(chunk);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Uniform `count`-subset of [0, universe).
std::vector<std::uint64_t> sample_subset(std::uint64_t universe, std::uint64_t count, Rng& rng) {
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (universe <= (std::uint64_t{1} << 23)) {
        // Partial Fisher-Yates over the whole index range.
        std::vector<std::uint64_t> idx(universe);
        for (std::uint64_t i = 0; i < universe; ++i) idx[i] = i;
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto j = std::uniform_int_distribution<std::uint64_t>(i, universe - 1)(rng);
            std::swap(idx[i], idx[j]);
            out.push_back(idx[i]);
        }
        return out;
    }
    // Floyd's algorithm for large ranges.
    std::unordered_set<std::uint64_t> picked;
    for (std::uint64_t j = universe - count; j < universe; ++j) {
        const auto t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
        const auto pick = picked.insert(t).second ? t : j;
        if (pick == j) picked.insert(j);
        out.push_back(pick);
    }
    return out;
}

}  // namespace

Sequence random_dag_sequence(std::size_t n, long long m, Rng& rng) {
    const auto total = static_cast<long long>(n * (n > 0 ? n - 1 : 0) / 2);
    if (m < 0 || m > total) throw std::invalid_argument("random_dag_sequence: m outside [0, C(n,2)]");
    std::vector<DegreeTuple> tuples(n);
    for (std::size_t i = 0; i < n; ++i)
        tuples[i] = {static_cast<int>(i), static_cast<int>(n - 1 - i)};
    // Row offsets: arcs (i, j>i) occupy [offset[i], offset[i+1]).
    std::vector<std::uint64_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + (n - 1 - i);
    auto decode = [&](std::uint64_t e) {
        const auto row = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), e) - offset.begin() - 1);
        return std::pair<std::size_t, std::size_t>{row, row + 1 + static_cast<std::size_t>(e - offset[row])};
    };
    const auto deleted = static_cast<std::uint64_t>(total - m);
    if (deleted <= static_cast<std::uint64_t>(m)) {
        for (auto e : sample_subset(static_cast<std::uint64_t>(total), deleted, rng)) {
            auto [i, j] = decode(e);
            --tuples[i].b;
            --tuples[j].a;
        }
    } else {
        for (auto& t : tuples) t = {0, 0};
        for (auto e : sample_subset(static_cast<std::uint64_t>(total), static_cast<std::uint64_t>(m), rng)) {
            auto [i, j] = decode(e);
            ++tuples[i].b;
            ++tuples[j].a;
        }
    }
    return Sequence(std::move(tuples));
}

IngestedGraph ingest_edge_list(std::istream& in) {
    IngestedGraph g;
    std::unordered_map<std::string, Label> ids;
    std::set<std::pair<Label, Label>> arcs;
    std::vector<DegreeTuple> degrees;
    auto id_of = [&](const std::string& name) {
        auto [it, fresh] = ids.emplace(name, static_cast<Label>(g.names.size() + 1));
        if (fresh) {
            g.names.push_back(name);
            degrees.push_back({0, 0});
        }
        return it->second;
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string u, v, extra;
        if (!(fields >> u) || u.front() == '#') continue;
        if (!(fields >> v)) throw ParseError(lineno, "expected two vertex ids");
        if (fields >> extra && extra.front() != '#') throw ParseError(lineno, "expected two vertex ids, got more");
        if (u == v) throw ParseError(lineno, "self-loop on '" + u + "'");
        const Label from = id_of(u), to = id_of(v);
        if (!arcs.insert({from, to}).second) throw ParseError(lineno, "duplicate arc " + u + " -> " + v);
        ++degrees[from - 1].b;
        ++degrees[to - 1].a;
    }
    g.arcs = arcs.size();
    Dag dag{static_cast<Label>(degrees.size()), {}};
    for (const auto& [from, to] : arcs) dag.arcs.push_back({from, to});
    g.was_acyclic = topological_order(dag).has_value();
    Sequence full(std::move(degrees));
    g.sequence = strip_zero_tuples(full);
    g.zero_tuples_stripped = full.n() - g.sequence.n();
    return g;
}

IngestedGraph ingest_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return ingest_edge_list(in);
}

}  // namespace dagreal
