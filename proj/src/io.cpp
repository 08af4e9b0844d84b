#include "dagreal/io.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace dagreal {

using nlohmann::ordered_json;

std::string report_to_json(const SolveReport& report, DagFormat format) {
    ordered_json j;
    j["outcome"] = to_string(report.outcome);
    j["strategy"] = report.strategy;
    j["stage"] = report.stage;
    if (report.seed) j["seed"] = *report.seed;
    j["stats"] = {{"nodes_expanded", report.nodes_expanded},
                  {"max_depth", report.max_depth},
                  {"trials", report.trials},
                  {"successes", report.successes}};
    if (report.witness) {
        const auto arcs = report.witness->sorted_arcs();
        if (format == DagFormat::Json) {
            j["arcs"] = ordered_json::array();
            for (const auto& a : arcs) j["arcs"].push_back({a.from, a.to});
        } else if (format == DagFormat::Dot) {
            j["dot"] = to_dot(*report.witness);
        }
    }
    return j.dump();
}

namespace {

ordered_json ratio_json(const std::optional<Ratio>& r) {
    if (!r) return nullptr;
    return {{"value", r->fixed(2)}, {"exact", std::to_string(r->num) + "/" + std::to_string(r->den)}};
}

}  // namespace

std::string profile_to_json(const SequenceProfile& p) {
    ordered_json j;
    j["n"] = p.n;
    j["m"] = p.m;
    j["sources"] = p.q;
    j["sinks"] = p.s;
    j["streams"] = p.streams;
    j["density"] = ratio_json(p.density);
    j["is_opposed"] = p.is_opposed;
    j["is_forest"] = p.is_forest;
    j["is_source_sink"] = p.is_source_sink;
    j["is_trivial"] = p.is_trivial;
    j["lexmax_solvable"] = p.lexmax_solvable;
    j["reducible"] = p.reducible;
    j["reducible_then_lexmax_solvable"] = p.reducible_then_lexmax_solvable;
    if (p.exact_realizable) j["exact_realizable"] = *p.exact_realizable;
    if (p.distance) j["distance_to_opposed"] = *p.distance;
    if (p.normalized) j["normalized_distance"] = ratio_json(p.normalized);
    return j.dump();
}

std::string to_dot(const Dag& dag) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (Label v = 1; v <= dag.n_vertices; ++v) out << "  " << v << ";\n";
    for (const auto& a : dag.sorted_arcs()) out << "  " << a.from << " -> " << a.to << ";\n";
    out << "}\n";
    return out.str();
}

Dag parse_dot(std::istream& in) {
    static const std::regex edge(R"((\d+)\s*->\s*(\d+))");
    static const std::regex node(R"(^\s*(\d+)\s*(\[.*\])?\s*;?\s*$)");
    Dag dag;
    std::string line;
    std::size_t lineno = 0;
    bool opened = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!opened) {
            if (line.find("digraph") != std::string::npos) opened = true;
            continue;
        }
        std::smatch mt;
        auto begin = line.cbegin();
        bool any = false;
        while (std::regex_search(begin, line.cend(), mt, edge)) {
            const auto from = std::stoul(mt[1]), to = std::stoul(mt[2]);
            if (from == 0 || to == 0) throw ParseError(lineno, "vertex ids start at 1");
            dag.arcs.push_back({static_cast<Label>(from), static_cast<Label>(to)});
            dag.n_vertices = std::max<Label>(dag.n_vertices, static_cast<Label>(std::max(from, to)));
            begin = mt[2].first;  // chained edges share the endpoint
            any = true;
        }
        if (!any && std::regex_match(line, mt, node))
            dag.n_vertices = std::max<Label>(dag.n_vertices, static_cast<Label>(std::stoul(mt[1])));
    }
    if (!opened) throw ParseError(lineno, "no digraph header");
    return dag;
}

Dag parse_dot(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dot(in);
}

Dag parse_dag(std::string_view text) {
    if (text.find("digraph") != std::string_view::npos) return parse_dot(text);
    Dag dag;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string u;
        if (!(fields >> u) || u.front() == '#') continue;
        long long from = 0, to = 0;
        std::istringstream(u) >> from;
        if (!(fields >> to) || from <= 0 || to <= 0) throw ParseError(lineno, "expected two positive labels");
        dag.arcs.push_back({static_cast<Label>(from), static_cast<Label>(to)});
        dag.n_vertices = std::max<Label>(dag.n_vertices, static_cast<Label>(std::max(from, to)));
    }
    return dag;
}

}  // namespace dagreal
