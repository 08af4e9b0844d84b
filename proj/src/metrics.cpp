#include "dagreal/metrics.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "dagreal/exact.hpp"
#include "dagreal/reduce.hpp"

namespace dagreal {

Ratio::Ratio(std::uint64_t n, std::uint64_t d) {
    if (d == 0) throw std::domain_error("ratio with zero denominator");
    const auto g = std::gcd(n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
}

std::string Ratio::fixed(int digits) const {
    std::uint64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const auto scaled = static_cast<unsigned __int128>(num) * scale * 2 + den;
    const auto rounded = static_cast<std::uint64_t>(scaled / (static_cast<unsigned __int128>(den) * 2));
    std::string whole = std::to_string(rounded / scale);
    if (digits <= 0) return whole;
    std::string frac = std::to_string(rounded % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return whole + "." + frac;
}

Ratio dag_density(std::uint64_t n, std::uint64_t m) {
    if (n < 2) throw std::domain_error("dag_density: n must be at least 2");
    return Ratio(m, n * (n - 1) / 2);
}

std::optional<std::uint64_t> distance_to_opposed(const Sequence& seq) {
    const auto report = solve_exact(seq);
    if (!report.realizable()) return std::nullopt;
    std::unordered_map<Label, DegreeTuple> value;
    for (std::size_t i = 0; i < seq.n(); ++i) value[seq.labels[i]] = seq.tuples[i];
    // Every stream tuple is chosen exactly once along the path.
    const auto& path = report.choice_path;
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 1; j < path.size(); ++j)
            if (!opposed_comparable(value.at(path[i]), value.at(path[j]))) ++d;
    return d;
}

namespace {

std::optional<Ratio> normalize(std::optional<std::uint64_t> d, std::size_t streams) {
    if (!d) return std::nullopt;
    if (streams <= 1) return Ratio(0, 1);
    return Ratio(*d, streams * (streams - 1) / 2);
}

}  // namespace

std::optional<Ratio> normalized_distance(const Sequence& seq) {
    return normalize(distance_to_opposed(seq), strip_zero_tuples(seq).streams());
}

SequenceProfile profile(const Sequence& seq, ProfileDepth depth) {
    const Sequence s = canonicalized(strip_zero_tuples(seq));
    SequenceProfile p;
    p.n = s.n();
    p.m = s.m();
    p.q = s.sources();
    p.s = s.sinks();
    p.streams = s.streams();
    if (p.n >= 2) p.density = dag_density(p.n, static_cast<std::uint64_t>(p.m));
    p.is_opposed = is_opposed_sequence(s);
    p.is_forest = is_forest_sequence(s);
    p.is_source_sink = s.is_source_sink();
    p.is_trivial = p.streams < 2;
    p.lexmax_solvable = solve_lexmax(s).realizable();
    p.reducible = reduce_once(s).has_value();
    p.reducible_then_lexmax_solvable = p.lexmax_solvable || solve_lexmax_with_reductions(s).realizable();
    if (depth == ProfileDepth::Full) {
        const auto report = p.lexmax_solvable ? SolveReport{} : solve_exact(s);
        p.exact_realizable = p.lexmax_solvable || report.realizable();
        if (*p.exact_realizable) {
            p.distance = distance_to_opposed(s);
            p.normalized = normalize(p.distance, p.streams);
        }
    }
    return p;
}

}  // namespace dagreal
