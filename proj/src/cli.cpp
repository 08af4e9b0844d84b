#include "dagreal/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "dagreal/core.hpp"
#include "dagreal/exact.hpp"
#include "dagreal/gen.hpp"
#include "dagreal/io.hpp"
#include "dagreal/metrics.hpp"
#include "dagreal/rand.hpp"
#include "dagreal/reduce.hpp"
#include "dagreal/topo.hpp"

namespace dagreal {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs body(i) for i in [0, count) on up to `jobs` threads. Callers write
// results into slot i so the merge order never depends on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Balanced input is accepted even past the degree bound; solve treats that
// as a certificate of unrealizability.
Sequence load_sequence(const std::string& path, bool allow_degree_excess = false) {
    Sequence seq;
    try {
        seq = parse_sequence(read_all(path));
    } catch (const ParseError& e) {
        throw InvalidInput(e.what());
    }
    if (seq.n() > kMaxCliN) throw InvalidInput("sequence has more than " + std::to_string(kMaxCliN) + " tuples");
    const auto report = validate(seq);
    if (!report.ok() && !(allow_degree_excess && seq.is_balanced())) {
        std::string msg = "invalid sequence:";
        for (const auto& v : report.violations) msg += "\n  " + v;
        throw InvalidInput(msg);
    }
    return seq;
}

std::string fixed6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::uint64_t sequence_hash(const Sequence& seq) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& t : seq.tuples)
        for (int v : {t.a, t.b}) {
            h ^= static_cast<std::uint64_t>(v) + 1;
            h *= 0x100000001b3ULL;
        }
    return h;
}

// ---- solve -----------------------------------------------------------------

struct SolveOptions {
    std::string strategy = "recipe";
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> node_budget;
};

std::optional<RandVariant> rand_variant(const std::string& s) {
    if (s == "rand1") return RandVariant::I;
    if (s == "rand2") return RandVariant::II;
    if (s == "rand3") return RandVariant::III;
    if (s == "rand4") return RandVariant::IV;
    return std::nullopt;
}

bool bound_certificate(const Sequence& seq) {
    const Sequence s = prepare_for_solving(seq);
    if (s.is_source_sink()) return !realize_source_sink(s).has_value();
    return !has_perfect_matching(build_bounding_graph(s));
}

SolveReport solve_with(const Sequence& seq, const SolveOptions& o) {
    if (o.strategy == "lexmax") return solve_lexmax(seq);
    if (o.strategy == "lexmax_reduced") return solve_lexmax_with_reductions(seq);
    if (o.strategy == "exact") {
        ExactOptions eo;
        eo.node_budget = o.node_budget;
        auto r = solve_exact(seq, eo);
        r.strategy = r.stage = "exact";
        return r;
    }
    if (o.strategy == "forest") {
        if (!is_forest_sequence(seq)) throw UsageError("strategy forest needs a forest sequence (sum of indegrees <= n-1)");
        return solve_forest(seq);
    }
    if (auto v = rand_variant(o.strategy)) {
        try {
            return run_randomized(seq, *v, o.trials, o.seed);
        } catch (const CapacityError& e) {
            throw UsageError(e.what());
        }
    }
    if (o.strategy == "recipe") {
        auto first = solve_lexmax_with_reductions(seq);
        first.strategy = "recipe";
        if (first.realizable()) return first;
        if (bound_certificate(seq)) {
            first.outcome = Outcome::Unrealizable;
            first.stage = "bounding_graph";
            return first;
        }
        auto second = run_randomized(seq, RandVariant::IV, o.trials, o.seed);
        second.strategy = "recipe";
        second.nodes_expanded += first.nodes_expanded;
        return second;
    }
    throw UsageError("unknown strategy '" + o.strategy + "'");
}

int exit_for(const SolveReport& r) {
    switch (r.outcome) {
        case Outcome::Realizable: return exit_code::realizable;
        case Outcome::Unrealizable: return exit_code::unrealizable;
        default: return exit_code::not_shown;
    }
}

const std::vector<std::string> kStrategies = {"lexmax", "lexmax_reduced", "exact", "forest", "rand1",
                                              "rand2",  "rand3",          "rand4", "recipe"};

// ---- enumerate -------------------------------------------------------------

const std::vector<std::string> kEnumerateHeader = {
    "n",        "m",       "candidates",     "dag",  "nontrivial", "lexmax",  "nonlexmax", "nonreducible_nonlexmax",
    "lexmax_reduced_fail", "nontrivial_ge1", "corpus", "trials", "seed", "p_rand1", "p_rand2", "p_rand3",
    "p_rand4",  "d_hist"};

struct Tally {
    std::uint64_t candidates = 0, dag = 0, nontrivial = 0, nontrivial_ge1 = 0, lexmax = 0, nonlexmax = 0;
    std::uint64_t lexred_fail = 0, nonreducible = 0, corpus = 0;
    std::uint64_t successes[4] = {0, 0, 0, 0};
    std::uint64_t attempts[4] = {0, 0, 0, 0};
    std::map<std::uint64_t, std::uint64_t> d_hist;

    void merge(const Tally& o) {
        candidates += o.candidates;
        dag += o.dag;
        nontrivial += o.nontrivial;
        nontrivial_ge1 += o.nontrivial_ge1;
        lexmax += o.lexmax;
        nonlexmax += o.nonlexmax;
        lexred_fail += o.lexred_fail;
        nonreducible += o.nonreducible;
        corpus += o.corpus;
        for (int v = 0; v < 4; ++v) {
            successes[v] += o.successes[v];
            attempts[v] += o.attempts[v];
        }
        for (const auto& [d, c] : o.d_hist) d_hist[d] += c;
    }
};

struct EnumerateOptions {
    std::size_t n = 0;
    bool full = false;
    std::string corpus = "nonlexmax";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

void classify_into(Tally& t, const Sequence& s, long long m, const EnumerateOptions& o) {
    ++t.candidates;
    const bool lex = solve_lexmax(s).realizable();
    if (!lex && !solve_exact(s).realizable()) return;
    ++t.dag;
    const auto streams = s.streams();
    if (streams >= 1) ++t.nontrivial_ge1;
    if (streams < 2) return;
    ++t.nontrivial;
    if (o.full) ++t.d_hist[distance_to_opposed(s).value_or(0)];
    bool in_corpus = o.corpus == "nontrivial";
    if (lex) {
        ++t.lexmax;
    } else {
        ++t.nonlexmax;
        in_corpus = in_corpus || o.corpus == "nonlexmax";
        if (!solve_lexmax_with_reductions(s).realizable()) {
            ++t.lexred_fail;
            if (!reduce_once(s)) {
                ++t.nonreducible;
                in_corpus = in_corpus || o.corpus == "nonreducible";
            }
        }
    }
    if (o.trials == 0 || !in_corpus) return;
    ++t.corpus;
    const std::uint64_t base = split_seed(split_seed(o.seed, static_cast<std::uint64_t>(m)), sequence_hash(s));
    for (int v = 0; v < 4; ++v) {
        const auto variant = static_cast<RandVariant>(v + 1);
        const auto r = run_randomized(s, variant, o.trials, split_seed(base, static_cast<std::uint64_t>(v)), false);
        t.successes[v] += r.successes;
        t.attempts[v] += r.trials;
    }
}

std::string row_csv(std::size_t n, long long m, const Tally& t, const EnumerateOptions& o) {
    std::ostringstream out;
    out << n << ',' << m << ',' << t.candidates << ',' << t.dag << ',' << t.nontrivial << ',' << t.lexmax << ','
        << t.nonlexmax << ',' << t.nonreducible << ',' << t.lexred_fail << ',' << t.nontrivial_ge1 << ',';
    if (o.trials > 0) {
        out << o.corpus << ':' << t.corpus << ',' << o.trials << ',' << o.seed;
        for (int v = 0; v < 4; ++v) out << ',' << (t.attempts[v] ? fixed6(double(t.successes[v]) / double(t.attempts[v])) : "");
    } else {
        out << ",,,,,,";
    }
    out << ',';
    if (o.full) {
        bool first = true;
        for (const auto& [d, c] : t.d_hist) {
            out << (first ? "" : ";") << d << ':' << c;
            first = false;
        }
    }
    return out.str();
}

std::string join(const std::vector<std::string>& cols) {
    std::string s;
    for (const auto& c : cols) s += (s.empty() ? "" : ",") + c;
    return s;
}

std::pair<long long, long long> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw UsageError("");
        std::size_t used = 0;
        const long long lo = std::stoll(text.substr(0, colon), &used);
        const long long hi = std::stoll(text.substr(colon + 1));
        if (lo > hi || lo < 0) throw UsageError("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw UsageError("--m-range expects LO:HI with 0 <= LO <= HI");
    }
}

// ---- random ----------------------------------------------------------------

const std::vector<std::string> kRandomHeader = {"n",         "m",        "count", "seed", "strategy", "trials",
                                                "successes", "fraction", "sigma", "mean_streams"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dag realization of degree sequences"};
    app.require_subcommand(1);
    unsigned jobs = 1;
    app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::Range(1u, 1024u));

    SolveOptions so;
    std::string input = "-", emit = "json";
    auto* solve = app.add_subcommand("solve", "decide or realize one sequence (\"a b\" per line)");
    solve->add_option("--input,-i", input, "sequence file, - for stdin");
    solve->add_option("--strategy,-s", so.strategy)->check(CLI::IsMember(kStrategies));
    solve->add_option("--trials", so.trials, "randomized trials")->check(CLI::PositiveNumber);
    solve->add_option("--seed", so.seed);
    solve->add_option("--node-budget", so.node_budget, "exact search node limit");
    solve->add_option("--emit-dag", emit)->check(CLI::IsMember({"json", "dot", "none"}));
    solve->add_option("--jobs,-j", jobs)->check(CLI::Range(1u, 1024u));

    EnumerateOptions eo;
    std::optional<long long> em;
    std::string erange, classify = "cheap", eout, from;
    bool list = false;
    std::uint64_t limit = 0;
    auto* enumerate = app.add_subcommand("enumerate", "exhaustive counts over balanced multisets");
    enumerate->add_option("--n", eo.n)->required()->check(CLI::Range(std::size_t{1}, kMaxEnumerationN));
    auto* m_opt = enumerate->add_option("--m", em);
    enumerate->add_option("--m-range", erange, "LO:HI inclusive")->excludes(m_opt);
    enumerate->add_option("--classify", classify)->check(CLI::IsMember({"cheap", "full"}));
    enumerate->add_option("--out,-o", eout, "write CSV here instead of stdout");
    enumerate->add_option("--trials", eo.trials, "randomized trials per corpus sequence and variant");
    enumerate->add_option("--seed", eo.seed);
    enumerate->add_option("--corpus", eo.corpus)->check(CLI::IsMember({"nontrivial", "nonlexmax", "nonreducible"}));
    enumerate->add_flag("--list", list, "print candidate sequences with cursor tokens");
    enumerate->add_option("--from", from, "resume token (with --list)");
    enumerate->add_option("--limit", limit, "stop after this many sequences (with --list)");
    enumerate->add_option("--jobs,-j", jobs)->check(CLI::Range(1u, 1024u));

    std::size_t rn = 0;
    long long rm = 0;
    std::uint64_t rcount = 0, rseed = 0, rtrials = 1;
    std::string rstrategy = "lexmax";
    auto* random = app.add_subcommand("random", "success rate on random dag sequences");
    random->add_option("--n", rn)->required()->check(CLI::Range(std::size_t{1}, kMaxCliN));
    random->add_option("--m", rm)->required();
    random->add_option("--count", rcount)->required();
    random->add_option("--seed", rseed);
    random->add_option("--strategy", rstrategy)->check(CLI::IsMember(kStrategies));
    random->add_option("--trials", rtrials)->check(CLI::PositiveNumber);
    random->add_option("--jobs,-j", jobs)->check(CLI::Range(1u, 1024u));

    std::string edges, isolve;
    bool ifull = false;
    std::uint64_t iseed = 0, itrials = 100;
    auto* ingest = app.add_subcommand("ingest", "profile the degree sequence of an edge list");
    ingest->add_option("--edges,-e", edges)->required();
    ingest->add_option("--solve", isolve, "also solve with this strategy")->expected(0, 1)->default_str("recipe")
        ->check(CLI::IsMember(kStrategies));
    ingest->add_flag("--full", ifull, "run the exact solver for distance to opposed");
    ingest->add_option("--seed", iseed);
    ingest->add_option("--trials", itrials)->check(CLI::PositiveNumber);
    ingest->add_option("--jobs,-j", jobs)->check(CLI::Range(1u, 1024u));

    std::string vseq, vdag;
    auto* verify = app.add_subcommand("verify", "check a witness (DOT or arc list) against a sequence");
    verify->add_option("--sequence", vseq)->required();
    verify->add_option("--dag", vdag)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_code::usage;
    }
    if (ingest->count("--solve") && isolve.empty()) isolve = "recipe";

    try {
        if (*solve) {
            const Sequence seq = load_sequence(input, true);
            if (const auto v = validate(seq); !v.ok()) {
                for (const auto& line : v.violations) err << line << "\n";
                SolveReport cert;
                cert.outcome = Outcome::Unrealizable;
                cert.strategy = so.strategy;
                cert.stage = "degree_bound";
                out << report_to_json(cert) << "\n";
                return exit_code::unrealizable;
            }
            const auto report = solve_with(seq, so);
            if (report.witness && !verify_realization(*report.witness, seq))
                throw std::logic_error("internal error: witness does not verify");
            out << report_to_json(report, emit == "dot" ? DagFormat::Dot : emit == "none" ? DagFormat::None
                                                                                           : DagFormat::Json)
                << "\n";
            return exit_for(report);
        }

        if (*enumerate) {
            eo.full = classify == "full";
            std::vector<long long> ms;
            if (em) ms.push_back(*em);
            else if (!erange.empty()) {
                const auto [lo, hi] = parse_range(erange);
                for (long long m = lo; m <= hi; ++m) ms.push_back(m);
            } else {
                throw UsageError("enumerate needs --m or --m-range");
            }
            std::ofstream file;
            if (!eout.empty()) {
                file.open(eout);
                if (!file) throw UsageError("cannot write '" + eout + "'");
            }
            std::ostream& sink = eout.empty() ? out : file;
            if (list) {
                if (ms.size() != 1) throw UsageError("--list needs a single --m");
                std::optional<Cursor> start;
                if (!from.empty()) {
                    try {
                        start = Cursor::decode(from);
                    } catch (const std::invalid_argument& e) {
                        throw UsageError(e.what());
                    }
                }
                std::uint64_t emitted = 0;
                std::optional<Cursor> next;
                try {
                    enumerate_sequences({eo.n, ms.front(), 0}, [&](const Sequence& s, const Cursor& c) {
                        if (limit && emitted == limit) {
                            next = c;
                            return false;
                        }
                        ++emitted;
                        sink << c.encode() << ' ';
                        for (const auto& t : s.tuples) sink << '(' << t.a << '|' << t.b << ')';
                        sink << '\n';
                        return true;
                    }, start);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                if (next) sink << "# next " << next->encode() << '\n';
                return 0;
            }
            sink << join(kEnumerateHeader) << '\n';
            for (long long m : ms) {
                const EnumerationSpec spec{eo.n, m, 0};
                const std::size_t chunks = enumeration_chunks(spec);
                std::vector<Tally> parts(chunks);
                parallel_for(chunks, jobs, [&](std::size_t c) {
                    enumerate_chunk(spec, c, [&](const Sequence& s, const Cursor&) {
                        classify_into(parts[c], s, m, eo);
                        return true;
                    });
                });
                Tally total;
                for (const auto& p : parts) total.merge(p);
                sink << row_csv(eo.n, m, total, eo) << '\n';
                sink.flush();
                err << "m=" << m << " done\n";
            }
            return 0;
        }

        if (*random) {
            const long long cap = static_cast<long long>(rn * (rn - 1) / 2);
            if (rm < 0 || rm > cap) throw UsageError("--m must lie in [0, n(n-1)/2]");
            SolveOptions ro;
            ro.strategy = rstrategy;
            ro.trials = rtrials;
            std::vector<char> success(rcount, 0);
            std::vector<std::size_t> streams(rcount, 0);
            parallel_for(rcount, jobs, [&](std::size_t i) {
                Rng rng(split_seed(rseed, i));
                const Sequence s = random_dag_sequence(rn, rm, rng);
                SolveOptions local = ro;
                local.seed = split_seed(~rseed, i);
                success[i] = solve_with(s, local).realizable();
                streams[i] = s.streams();
            });
            const auto hits = static_cast<std::uint64_t>(std::count(success.begin(), success.end(), 1));
            std::uint64_t stream_total = 0;
            for (auto v : streams) stream_total += v;
            out << join(kRandomHeader) << '\n';
            out << rn << ',' << rm << ',' << rcount << ',' << rseed << ',' << rstrategy << ',' << rtrials << ','
                << hits << ',';
            if (rcount) {
                const double p = double(hits) / double(rcount);
                out << fixed6(p) << ',' << fixed6(std::sqrt(p * (1 - p) / double(rcount))) << ','
                    << fixed6(double(stream_total) / double(rcount));
            } else {
                out << ",,";
            }
            out << '\n';
            return 0;
        }

        if (*ingest) {
            IngestedGraph g;
            try {
                g = ingest_edge_list(read_all(edges));
            } catch (const ParseError& e) {
                throw InvalidInput(e.what());
            }
            if (g.names.size() > kMaxCliN) throw InvalidInput("graph has more than 65536 vertices");
            const auto p = profile(g.sequence, ifull ? ProfileDepth::Full : ProfileDepth::Cheap);
            auto j = nlohmann::ordered_json::parse(profile_to_json(p));
            j["was_acyclic"] = g.was_acyclic;
            j["zero_tuples_stripped"] = g.zero_tuples_stripped;
            int code = 0;
            if (!isolve.empty()) {
                SolveOptions io;
                io.strategy = isolve;
                io.seed = iseed;
                io.trials = itrials;
                const auto report = solve_with(g.sequence, io);
                j["solve"] = nlohmann::ordered_json::parse(report_to_json(report, DagFormat::None));
                code = exit_for(report);
            }
            out << j.dump() << '\n';
            return code;
        }

        if (*verify) {
            const Sequence seq = load_sequence(vseq);
            Dag dag;
            try {
                dag = parse_dag(read_all(vdag));
            } catch (const ParseError& e) {
                throw InvalidInput(e.what());
            }
            dag.n_vertices = std::max(dag.n_vertices, seq.label_space);
            const bool ok = verify_realization(dag, seq);
            out << "{\"valid\":" << (ok ? "true" : "false") << ",\"arcs\":" << dag.arcs.size() << "}\n";
            return ok ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const InvalidInput& e) {
        err << e.what() << "\n";
        return exit_code::invalid_input;
    } catch (const ContractViolation& e) {
        err << "invalid sequence: " << e.what() << "\n";
        return exit_code::invalid_input;
    }
    return exit_code::usage;
}

}  // namespace dagreal
