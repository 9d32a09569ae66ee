#include <injhom/check/acceptance.hpp>
#include <injhom/check/oracle.hpp>
#include <injhom/gadget_lab.hpp>
#include <injhom/poly_decider.hpp>
#include <injhom/reductions.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>

namespace injhom::check {

namespace {
    const std::vector<InjectivityMode> all_modes{InjectivityMode::InOnly, InjectivityMode::IosSeparate, InjectivityMode::IotTogether};

    struct Outcome {
        bool passed;
        std::string detail;
    };

    auto asset_dir(const AcceptanceOptions & options) -> std::string
    {
        return options.asset_dir.empty() ? default_asset_dir() : options.asset_dir;
    }

    auto sat(const OrientedGraph & g, const Target & t, InjectivityMode mode) -> bool
    {
        SolveOptions o;
        o.mode = mode;
        return decide(g, t, o).status == SolveStatus::Sat;
    }

    auto witnesses(const OrientedGraph & g, const Target & t, InjectivityMode mode) -> std::vector<Colouring>
    {
        SolveOptions o;
        o.mode = mode;
        return enumerate(g, t, o).witnesses;
    }

    auto join_counts(const std::vector<std::size_t> & counts) -> std::string
    {
        std::string out;
        for (std::size_t i = 0; i < counts.size(); ++i)
            out += (i ? ", " : "") + std::to_string(counts[i]);
        return out;
    }

    // Graphs on up to four vertices, exhaustively, then `random_count` random graphs with
    // sizes cycling through [low, high].
    auto battery(int random_count, int low, int high, std::uint64_t seed) -> std::vector<OrientedGraph>
    {
        std::vector<OrientedGraph> graphs;
        for (int n = 1; n <= 4; ++n)
            for (auto & g : all_oriented_graphs(n))
                graphs.push_back(std::move(g));
        std::mt19937_64 rng(seed);
        for (int i = 0; i < random_count; ++i)
            graphs.push_back(random_oriented_graph(low + i % (high - low + 1), 0.5, 0.2, rng));
        return graphs;
    }

    auto solver_targets() -> std::vector<Target>
    {
        return {named_target(NamedTarget::C3), named_target(NamedTarget::TT3), named_target(NamedTarget::T4), named_target(NamedTarget::T5)};
    }

    // Runs `check` on every index in parallel; the first failing index in order is reported.
    auto parallel_check(int count, const std::function<std::string(int)> & check) -> std::string
    {
        std::vector<std::string> failures(count);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i)
            failures[i] = check(i);
        for (const auto & f : failures)
            if (! f.empty())
                return f;
        return {};
    }

    auto catalog_counts(const AcceptanceOptions &) -> Outcome
    {
        std::vector<std::size_t> counts;
        for (int n = 1; n <= 5; ++n)
            counts.push_back(enumerate_reflexive_tournaments(n).size());
        bool ok = counts == std::vector<std::size_t>{1, 1, 2, 4, 12} && counts[3] + counts[4] == 16 && counts[2] == 2;
        return {ok, "counts n=1..5: " + join_counts(counts) + "; n=4 plus n=5: " + std::to_string(counts[3] + counts[4])};
    }

    auto uniqueness(const AcceptanceOptions &) -> Outcome
    {
        int strong = 0, regular = 0;
        bool strong_is_t4 = false, regular_is_t5 = false;
        for (const auto & t : enumerate_reflexive_tournaments(4))
            if (is_strongly_connected(t.graph())) {
                ++strong;
                strong_is_t4 = canonical_form(t) == canonical_form(named_target(NamedTarget::T4));
            }
        for (const auto & t : enumerate_reflexive_tournaments(5)) {
            auto p = degree_profile(t);
            bool all_three = std::all_of(p.in_degree.begin(), p.in_degree.end(), [](int d) { return d == 3; })
                && std::all_of(p.out_degree.begin(), p.out_degree.end(), [](int d) { return d == 3; });
            if (all_three) {
                ++regular;
                regular_is_t5 = canonical_form(t) == canonical_form(named_target(NamedTarget::T5));
            }
        }
        auto six = enumerate_reflexive_tournaments(6);
        auto high = std::count_if(six.begin(), six.end(), [](const Target & t) { return ! degree_profile(t).high_degree.empty(); });
        bool ok = strong == 1 && strong_is_t4 && regular == 1 && regular_is_t5 && six.size() == 56 && high == 56;
        return {ok, "strongly connected n=4: " + std::to_string(strong) + (strong_is_t4 ? " (T4)" : "") + "; 3-regular n=5: "
                + std::to_string(regular) + (regular_is_t5 ? " (T5)" : "") + "; n=6 with a degree >= 4 vertex: " + std::to_string(high) + "/"
                + std::to_string(six.size())};
    }

    auto t5_automorphisms(const AcceptanceOptions &) -> Outcome
    {
        auto t5 = named_target(NamedTarget::T5);
        const auto & group = t5.automorphisms();
        bool has_shift = std::any_of(group.begin(), group.end(), [](const Permutation & p) { return p[0] == 2 && p[2] == 4; });
        bool transitive = is_vertex_transitive(t5);
        bool ok = group.size() == 5 && transitive && has_shift;
        return {ok, "|Aut| = " + std::to_string(group.size()) + "; vertex-transitive: " + (transitive ? "yes" : "no")
                + "; a->c, c->e present: " + (has_shift ? "yes" : "no")};
    }

    auto solver_oracle(const AcceptanceOptions & options) -> Outcome
    {
        auto graphs = battery(200, 5, 6, options.seed);
        auto targets = solver_targets();
        auto failure = parallel_check(static_cast<int>(graphs.size()), [&](int i) -> std::string {
            for (const auto & t : targets)
                for (auto mode : all_modes) {
                    auto oracle = naive_colourings(graphs[i], t.graph(), mode);
                    if (sat(graphs[i], t, mode) != ! oracle.empty())
                        return "decide disagrees on graph " + std::to_string(i) + " for " + t.name() + " " + to_string(mode);
                    if (witnesses(graphs[i], t, mode) != oracle)
                        return "enumerate disagrees on graph " + std::to_string(i) + " for " + t.name() + " " + to_string(mode);
                }
            return {};
        });
        return {failure.empty(), failure.empty() ? std::to_string(graphs.size()) + " graphs x 4 targets x 3 modes agree" : failure};
    }

    auto mode_monotonicity(const AcceptanceOptions & options) -> Outcome
    {
        auto graphs = battery(200, 5, 6, options.seed);
        auto targets = solver_targets();
        auto failure = parallel_check(static_cast<int>(graphs.size()), [&](int i) -> std::string {
            for (const auto & t : targets) {
                auto in = witnesses(graphs[i], t, InjectivityMode::InOnly);
                auto ios = witnesses(graphs[i], t, InjectivityMode::IosSeparate);
                auto iot = witnesses(graphs[i], t, InjectivityMode::IotTogether);
                if (! std::includes(ios.begin(), ios.end(), iot.begin(), iot.end()) || ! std::includes(in.begin(), in.end(), ios.begin(), ios.end()))
                    return "graph " + std::to_string(i) + " for " + t.name();
            }
            return {};
        });
        return {failure.empty(), failure.empty() ? "iot within ios within in on " + std::to_string(graphs.size()) + " graphs" : "nesting fails on " + failure};
    }

    auto gadget_contracts(const AcceptanceOptions & options) -> Outcome
    {
        std::vector<VerificationReport> all;
        for (const auto & name : {"Hx", "He", "Jv", "Fx", "Fe", "Dv"}) {
            auto spec = load_gadget(name, asset_dir(options));
            all.push_back(verify_contract(spec.graph, spec.contract, gadget_scope(spec), {}, name));
        }
        for (const auto & id : lemma_ids())
            for (auto & report : verify_lemma(id, asset_dir(options)))
                all.push_back(std::move(report));
        int facts = 0;
        for (const auto & report : all) {
            facts += static_cast<int>(report.facts.size());
            for (const auto & fact : report.facts)
                if (fact.status != FactStatus::Pass)
                    return {false, report.id + ": " + fact.fact + " " + to_string(fact.status) + " " + fact.detail};
            if (! report.passed())
                return {false, report.id + " failed"};
        }
        return {true, std::to_string(all.size()) + " gadgets and compositions, " + std::to_string(facts) + " facts pass"};
    }

    auto edge_equivalence(const AcceptanceOptions & options) -> Outcome
    {
        std::vector<UndirectedGraph> graphs;
        for (int n = 1; n <= 6; ++n)
            for (auto & g : subcubic_graphs(n))
                graphs.push_back(std::move(g));
        auto t4 = named_target(NamedTarget::T4);
        std::vector<int> colourable(graphs.size(), 0);
        auto failure = parallel_check(static_cast<int>(graphs.size()), [&](int i) -> std::string {
            bool oracle = three_edge_colouring_oracle(graphs[i]).has_value();
            colourable[i] = oracle;
            if (sat(build_ios_t4(graphs[i], asset_dir(options)).graph, t4, InjectivityMode::IosSeparate) != oracle)
                return "ios-t4 disagrees on " + serialize_undirected(graphs[i]);
            if (sat(build_iot_t4(graphs[i], asset_dir(options)).graph, t4, InjectivityMode::IotTogether) != oracle)
                return "iot-t4 disagrees on " + serialize_undirected(graphs[i]);
            return {};
        });
        auto yes = std::count(colourable.begin(), colourable.end(), 1);
        return {failure.empty(), failure.empty() ? std::to_string(graphs.size()) + " subcubic graphs (" + std::to_string(yes) + " colourable) agree on both reductions" : failure};
    }

    auto ring_equivalence(const AcceptanceOptions & options) -> Outcome
    {
        std::mt19937_64 rng(options.seed);
        std::vector<OrientedGraph> graphs;
        for (int i = 0; i < 100; ++i)
            graphs.push_back(random_oriented_graph(1 + i % 5, 0.5, 0.2, rng));
        auto c3 = named_target(NamedTarget::C3);
        auto t5 = named_target(NamedTarget::T5);
        std::vector<int> yes(graphs.size(), 0);
        auto failure = parallel_check(100, [&](int i) -> std::string {
            bool ios = sat(graphs[i], c3, InjectivityMode::IosSeparate);
            bool iot = sat(graphs[i], c3, InjectivityMode::IotTogether);
            yes[i] = ios + iot;
            if (sat(build_ios_t5(graphs[i], asset_dir(options)).graph, t5, InjectivityMode::IosSeparate) != ios)
                return "ios-t5 disagrees on graph " + std::to_string(i);
            if (sat(build_iot_t5(graphs[i], asset_dir(options)).graph, t5, InjectivityMode::IotTogether) != iot)
                return "iot-t5 disagrees on graph " + std::to_string(i);
            return {};
        });
        auto total = std::accumulate(yes.begin(), yes.end(), 0);
        return {failure.empty(), failure.empty() ? "100 graphs, 200 decisions (" + std::to_string(total) + " Sat) agree" : failure};
    }

    auto collapse_equivalence(const AcceptanceOptions & options) -> Outcome
    {
        std::mt19937_64 rng(options.seed);
        std::vector<OrientedGraph> graphs;
        for (int i = 0; i < 100; ++i)
            graphs.push_back(random_oriented_graph(1 + i % 4, 0.6, 0.2, rng));
        auto tt5 = reflexive_transitive_tournament(5);
        auto tt4 = reflexive_transitive_tournament(4);
        std::vector<int> yes(graphs.size(), 0);
        auto failure = parallel_check(100, [&](int i) -> std::string {
            for (auto [pivot, direction] : {std::pair{0, Direction::Out}, std::pair{4, Direction::In}}) {
                std::string where = " on graph " + std::to_string(i) + (direction == Direction::Out ? " (source, out)" : " (sink, in)");
                bool ios = sat(graphs[i], tt4, InjectivityMode::IosSeparate);
                bool iot = sat(graphs[i], tt4, InjectivityMode::IotTogether);
                yes[i] += ios + iot;
                if (sat(build_ios_collapse(graphs[i], tt5, pivot, direction).graph, tt5, InjectivityMode::IosSeparate) != ios)
                    return "ios collapse disagrees" + where;
                if (sat(build_iot_collapse(graphs[i], tt5, pivot, direction).graph, tt5, InjectivityMode::IotTogether) != iot)
                    return "iot collapse disagrees" + where;
            }
            return {};
        });
        auto total = std::accumulate(yes.begin(), yes.end(), 0);
        return {failure.empty(), failure.empty() ? "100 graphs, 400 decisions (" + std::to_string(total) + " Sat) agree" : failure};
    }

    auto poly_agreement(const AcceptanceOptions & options) -> Outcome
    {
        auto graphs = battery(500, 1, 10, options.seed);
        std::vector<Target> targets{reflexive_transitive_tournament(1), reflexive_transitive_tournament(2)};
        auto failure = parallel_check(static_cast<int>(graphs.size()), [&](int i) -> std::string {
            for (const auto & t : targets)
                for (auto mode : all_modes) {
                    auto fast = decide_small_target(graphs[i], t, mode);
                    if (fast.sat != sat(graphs[i], t, mode))
                        return "graph " + std::to_string(i) + " for " + t.name() + " " + to_string(mode);
                    if (fast.sat && ! verify_colouring(graphs[i], t, fast.witness, mode).valid)
                        return "invalid witness on graph " + std::to_string(i);
                }
            return {};
        });
        return {failure.empty(), failure.empty() ? std::to_string(graphs.size()) + " graphs x 2 targets x 3 modes agree" : "disagreement on " + failure};
    }

    auto all_edge_colourings(const UndirectedGraph & g) -> std::vector<EdgeColouring>
    {
        std::vector<EdgeColouring> result;
        EdgeColouring c(g.edges().size(), 1);
        while (true) {
            if (is_proper_edge_colouring(g, c))
                result.push_back(c);
            std::size_t i = 0;
            while (i < c.size() && c[i] == 3)
                c[i++] = 1;
            if (i == c.size())
                return result;
            ++c[i];
        }
    }

    auto round_trips(const AcceptanceOptions & options) -> Outcome
    {
        std::size_t projections = 0, lifts = 0;
        for (const auto & g : {complete_graph(3), complete_graph(4)})
            for (auto build : {build_ios_t4, build_iot_t4}) {
                auto ri = build(g, asset_dir(options));
                const int head = ri.kind == ReductionKind::IosT4 ? 9 : 6;
                std::vector<VertexId> ports;
                for (const auto & copy : ri.edge_copies) {
                    ports.push_back(copy[0]);
                    ports.push_back(copy[head]);
                }
                SolveOptions o;
                o.mode = ri.mode;
                // Every witness restricts to one of these port colourings, and extraction only reads ports.
                auto projected = enumerate_projected(ri.graph, ri.target, o, ports);
                if (projected.witnesses.empty())
                    return {false, to_string(ri.kind) + " instance of K" + std::to_string(g.vertex_count()) + " is Unsat"};
                for (const auto & f : projected.witnesses) {
                    ++projections;
                    if (! is_proper_edge_colouring(g, extract_edge_colouring(ri, f)))
                        return {false, to_string(ri.kind) + ": a witness projects to an improper colouring"};
                }
                for (const auto & base : all_edge_colourings(g)) {
                    ++lifts;
                    auto full = lift_colouring(ri, base);
                    if (! verify_colouring(ri.graph, ri.target, full, ri.mode).valid)
                        return {false, to_string(ri.kind) + ": a lifted colouring is invalid"};
                    if (extract_edge_colouring(ri, full) != base)
                        return {false, to_string(ri.kind) + ": extract after lift changed the colouring"};
                }
            }
        return {true, std::to_string(projections) + " port projections proper; " + std::to_string(lifts) + " lifts valid and round-trip"};
    }

    struct Criterion {
        const char * name;
        double limit_seconds;
        Outcome (*run)(const AcceptanceOptions &);
    };

    const Criterion criteria[criterion_count] = {
        {"catalog counts", 5, catalog_counts},
        {"uniqueness facts", 30, uniqueness},
        {"T5 automorphisms", 1, t5_automorphisms},
        {"solver oracle equivalence", 600, solver_oracle},
        {"mode monotonicity", 600, mode_monotonicity},
        {"gadget contracts", 600, gadget_contracts},
        {"reduction equivalence, edge colouring", 1800, edge_equivalence},
        {"reduction equivalence, C3 lift", 1200, ring_equivalence},
        {"collapse equivalence", 1200, collapse_equivalence},
        {"poly-decider agreement", 120, poly_agreement},
        {"projection and lift round-trips", 300, round_trips},
    };

    auto timed(int number, const std::string & name, double limit, bool gating, const std::function<Outcome()> & run) -> CriterionResult
    {
        CriterionResult result;
        result.number = number;
        result.name = name;
        result.limit_seconds = limit;
        result.gating = gating;
        auto start = std::chrono::steady_clock::now();
        Outcome outcome{false, ""};
        try {
            outcome = run();
        }
        catch (const std::exception & e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.passed = outcome.passed && result.seconds < limit;
        result.detail = outcome.detail;
        if (outcome.passed && ! result.passed)
            result.detail += "; over the time limit";
        return result;
    }
}

auto CriterionResult::format() const -> std::string
{
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", seconds, limit_seconds);
    std::string label = gating ? std::to_string(number) : std::string("stretch");
    return std::string(passed ? "PASS" : "FAIL") + " [" + label + "] " + name + " (" + timing + "): " + detail;
}

auto criterion_name(int number) -> std::string
{
    if (number < 1 || number > criterion_count)
        throw Error(ErrorCode::InvalidArgument, "no criterion " + std::to_string(number));
    return criteria[number - 1].name;
}

auto run_criterion(int number, const AcceptanceOptions & options) -> CriterionResult
{
    const auto & c = criteria[number - 1];
    criterion_name(number);
    return timed(number, c.name, c.limit_seconds, true, [&] { return c.run(options); });
}

auto run_petersen_stretch(const AcceptanceOptions & options) -> CriterionResult
{
    return timed(0, "Petersen graph Unsat on both edge-colouring reductions", 1800, false, [&]() -> Outcome {
        auto g = petersen_graph();
        auto t4 = named_target(NamedTarget::T4);
        bool ios = sat(build_ios_t4(g, asset_dir(options)).graph, t4, InjectivityMode::IosSeparate);
        bool iot = sat(build_iot_t4(g, asset_dir(options)).graph, t4, InjectivityMode::IotTogether);
        return {! ios && ! iot, std::string("ios-t4 ") + (ios ? "Sat" : "Unsat") + ", iot-t4 " + (iot ? "Sat" : "Unsat")};
    });
}

auto all_gating_passed(const std::vector<CriterionResult> & results) -> bool
{
    return std::all_of(results.begin(), results.end(), [](const CriterionResult & r) { return r.passed || ! r.gating; });
}

}
