#include <injhom/check/acceptance.hpp>
#include <injhom/poly_decider.hpp>
#include <injhom/reductions.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace injhom;

namespace {
    constexpr int exit_yes = 0, exit_no = 1, exit_error = 2;

    auto load_target(const std::string & text) -> Target
    {
        if (is_target_name(text))
            return named_target(text);
        return Target(parse_graph(read_text_file(text)), std::filesystem::path(text).stem().string());
    }

    auto edge_list(const std::vector<std::pair<VertexId, VertexId>> & edges, const EdgeColouring & colouring) -> std::string
    {
        std::string out;
        for (std::size_t e = 0; e < edges.size(); ++e)
            out += (e ? " " : "") + std::to_string(edges[e].first) + "-" + std::to_string(edges[e].second) + "=" + colour_name(colouring[e]);
        return out;
    }

    struct SolveArgs {
        std::string input, target, mode = "ios", enumerate, project;
        std::vector<std::string> fixed;
        bool mod_aut = false, fast_small = false;
        std::optional<std::uint64_t> budget;
        int workers = 1;
    };

    auto cmd_solve(const SolveArgs & a) -> int
    {
        auto g = parse_graph(read_text_file(a.input));
        auto t = load_target(a.target);
        SolveOptions options;
        options.mode = parse_mode(a.mode);
        options.node_budget = a.budget;
        options.workers = a.workers;
        for (const auto & item : a.fixed) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw Error(ErrorCode::InvalidArgument, "--fixed expects v=c, got '" + item + "'");
            options.fixed[std::stoi(item.substr(0, eq))] = parse_colour(item.substr(eq + 1));
        }
        std::optional<ReductionInstance> map;
        if (! a.project.empty())
            map = parse_map(read_text_file(a.project), g);

        if (a.fast_small && t.size() <= 2 && a.enumerate.empty() && ! a.mod_aut && options.fixed.empty()) {
            auto r = decide_small_target(g, t, options.mode);
            std::cout << (r.sat ? "Sat" : "Unsat") << " (2-SAT, " << r.clause_count << " clauses)\n";
            if (r.sat)
                std::cout << format_witness(r.witness) << "\n";
            return r.sat ? exit_yes : exit_no;
        }

        SolveResult result;
        if (a.enumerate.empty())
            result = decide(g, t, options);
        else {
            if (a.enumerate != "all")
                options.limit = std::stoull(a.enumerate);
            result = a.mod_aut ? enumerate_mod_aut(g, t, options) : enumerate(g, t, options);
        }
        if (result.status == SolveStatus::BudgetExhausted) {
            std::cout << "BudgetExhausted after " << result.stats.nodes << " nodes\n";
            return exit_error;
        }
        std::cout << (result.status == SolveStatus::Sat ? "Sat" : "Unsat") << "\n";
        if (! a.enumerate.empty())
            std::cout << (a.mod_aut ? "orbits " : "count ") << result.count << (result.truncated ? " (limit reached)" : "") << "\n";
        for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
            const auto & f = result.witnesses[i];
            std::cout << format_witness(f);
            if (a.mod_aut)
                std::cout << " (orbit size " << result.orbit_sizes[i] << ")";
            std::cout << "\n";
            if (map) {
                if (map->kind == ReductionKind::IosT4 || map->kind == ReductionKind::IotT4)
                    std::cout << "edges: " << edge_list(map->source_edges, extract_edge_colouring(*map, f)) << "\n";
                else
                    std::cout << "source: " << format_witness(extract_inner_colouring(*map, f)) << "\n";
            }
        }
        return result.status == SolveStatus::Sat ? exit_yes : exit_no;
    }

    struct ReduceArgs {
        std::string kind, input, output, target, pivot, direction = "out";
    };

    auto cmd_reduce(const ReduceArgs & a) -> int
    {
        auto kind = parse_reduction_kind(a.kind);
        auto text = read_text_file(a.input);
        Direction direction = a.direction == "in" ? Direction::In : Direction::Out;
        if (a.direction != "in" && a.direction != "out")
            throw Error(ErrorCode::InvalidArgument, "--direction must be out or in");

        ReductionInstance ri;
        std::string summary;
        switch (kind) {
        case ReductionKind::IosT4:
        case ReductionKind::IotT4: {
            auto g = parse_undirected(text);
            ri = kind == ReductionKind::IosT4 ? build_ios_t4(g) : build_iot_t4(g);
            auto [x, e] = kind == ReductionKind::IosT4 ? std::pair{"H_x", "H_e"} : std::pair{"F_x", "F_e"};
            summary = std::to_string(ri.vertex_copies.size()) + " " + x + ", " + std::to_string(ri.edge_copies.size()) + " " + e;
            break;
        }
        case ReductionKind::IosT5:
        case ReductionKind::IotT5: {
            ri = kind == ReductionKind::IosT5 ? build_ios_t5(parse_graph(text)) : build_iot_t5(parse_graph(text));
            summary = "ring of " + std::to_string(ri.vertex_copies.size()) + (kind == ReductionKind::IosT5 ? " J_v" : " D_v");
            break;
        }
        case ReductionKind::CollapseIos:
        case ReductionKind::CollapseIot: {
            if (a.target.empty() || a.pivot.empty())
                throw Error(ErrorCode::InvalidArgument, "collapse reductions need --target and --pivot");
            auto t = load_target(a.target);
            auto pivot = parse_colour(a.pivot);
            auto g = parse_graph(text);
            ri = kind == ReductionKind::CollapseIos ? build_ios_collapse(g, t, pivot, direction) : build_iot_collapse(g, t, pivot, direction);
            summary = "ring of " + std::to_string(ri.target_copies.size()) + " copies of " + t.name() + ", source target "
                + std::to_string(ri.source_target().size()) + " vertices";
            break;
        }
        }
        write_text_file(a.output, serialize_graph(ri.graph));
        write_text_file(a.output + ".map", serialize_map(ri));
        std::cout << summary << "\n";
        std::cout << "instance: " << ri.graph.vertex_count() << " vertices, " << ri.graph.arcs().size() << " arcs; target " << ri.target.name()
                  << ", mode " << to_string(ri.mode) << "\n";
        std::cout << "wrote " << a.output << " and " << a.output << ".map\n";
        return exit_yes;
    }

    struct VerifyArgs {
        std::string gadget, lemma;
        bool all = false;
        std::optional<std::uint64_t> budget;
    };

    auto cmd_verify_gadget(const VerifyArgs & a) -> int
    {
        if (a.gadget.empty() && ! a.all && a.lemma.empty())
            throw Error(ErrorCode::InvalidArgument, "give --gadget, --lemma or --all");
        VerifyOptions options;
        if (a.budget)
            options.node_budget = a.budget;

        std::vector<VerificationReport> reports;
        std::vector<std::string> gadgets, lemmas;
        if (a.all) {
            gadgets = {"Hx", "He", "Jv", "Fx", "Fe", "Dv"};
            lemmas = lemma_ids();
        }
        else if (! a.lemma.empty())
            lemmas = {a.lemma};
        else {
            gadgets = {a.gadget};
            lemmas = lemmas_for_gadget(a.gadget);
        }
        for (const auto & name : gadgets) {
            auto spec = load_gadget(name);
            reports.push_back(verify_contract(spec.graph, spec.contract, gadget_scope(spec), options, name));
        }
        for (const auto & id : lemmas)
            for (auto & report : verify_lemma(id, default_asset_dir(), options))
                reports.push_back(std::move(report));

        bool all_pass = true, inconclusive = false;
        for (const auto & report : reports) {
            std::cout << report.format() << "\n";
            all_pass = all_pass && report.passed();
            for (const auto & fact : report.facts)
                inconclusive = inconclusive || fact.status == FactStatus::Inconclusive;
        }
        std::cout << (all_pass ? "all contracts pass" : inconclusive ? "INCONCLUSIVE: node budget exhausted" : "contract failure") << "\n";
        return all_pass ? exit_yes : exit_no;
    }

    auto permutation_text(const Permutation & p) -> std::string
    {
        std::string out;
        for (std::size_t i = 0; i < p.size(); ++i)
            out += (i ? " " : "") + colour_name(static_cast<VertexId>(i)) + "->" + colour_name(p[i]);
        return out;
    }

    auto arc_text(const OrientedGraph & g) -> std::string
    {
        std::string out;
        for (const auto & arc : g.arcs())
            if (arc.tail != arc.head)
                out += (out.empty() ? "" : " ") + colour_name(arc.tail) + colour_name(arc.head);
        return out;
    }

    struct CatalogArgs {
        std::string list, show, aut;
    };

    auto cmd_catalog(const CatalogArgs & a) -> int
    {
        if (! a.list.empty()) {
            auto text = a.list.starts_with("n=") ? a.list.substr(2) : a.list;
            int n = std::stoi(text);
            if (n < 1 || n > 7)
                throw Error(ErrorCode::BoundExceeded, "catalog sizes run from 1 to 7");
            auto targets = enumerate_reflexive_tournaments(n);
            std::cout << targets.size() << " tournaments\n";
            for (std::size_t i = 0; i < targets.size(); ++i) {
                const auto & t = targets[i];
                std::cout << i << ": " << arc_text(t.graph()) << " | |Aut| " << t.automorphisms().size()
                          << (is_strongly_connected(t.graph()) ? " | strong" : "") << "\n";
            }
            return exit_yes;
        }
        if (! a.show.empty()) {
            auto t = load_target(a.show);
            auto p = degree_profile(t);
            std::cout << serialize_target(t) << "\n";
            std::cout << "arcs: " << arc_text(t.graph()) << "\n";
            std::cout << "reflexive tournament: " << (t.is_reflexive_tournament() ? "true" : "false") << "\n";
            std::cout << "vertex-transitive: " << (is_vertex_transitive(t) ? "true" : "false") << "\n";
            for (VertexId v = 0; v < t.size(); ++v)
                std::cout << colour_name(v) << ": in " << p.in_degree[v] << ", out " << p.out_degree[v] << "\n";
            return exit_yes;
        }
        if (! a.aut.empty()) {
            auto t = load_target(a.aut);
            const auto & group = t.automorphisms();
            std::cout << group.size() << " automorphisms\n";
            for (const auto & p : group)
                std::cout << permutation_text(p) << "\n";
            return exit_yes;
        }
        throw Error(ErrorCode::InvalidArgument, "give --list, --show or --aut");
    }

    auto cmd_oracle(const std::string & input) -> int
    {
        auto g = parse_undirected(read_text_file(input));
        auto colouring = three_edge_colouring_oracle(g);
        if (! colouring) {
            std::cout << "Unsat\n";
            return exit_no;
        }
        std::cout << "Sat\n" << edge_list(g.edges(), *colouring) << "\n";
        return exit_yes;
    }

    auto cmd_selfcheck(const check::AcceptanceOptions & options, const std::vector<int> & only) -> int
    {
        auto report = [](const check::CriterionResult & r) { std::cout << r.format() << std::endl; };
        std::vector<check::CriterionResult> results;
        if (only.empty())
            results = check::run_acceptance(options, report);
        else
            for (int k : only) {
                results.push_back(check::run_criterion(k, options));
                report(results.back());
            }
        bool ok = check::all_gating_passed(results);
        std::cout << (ok ? "selfcheck passed" : "selfcheck FAILED") << "\n";
        return ok ? exit_yes : exit_no;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Locally-injective homomorphisms to reflexive tournaments"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto * s = app.add_subcommand("solve", "Decide or enumerate colourings of a graph");
    s->add_option("--input", solve.input, "Instance graph file")->required();
    s->add_option("--target", solve.target, "Target name (C3, TT<n>, T4, T5) or graph file")->required();
    s->add_option("--mode", solve.mode, "in, ios or iot")->check(CLI::IsMember({"in", "ios", "iot"}));
    s->add_option("--enumerate", solve.enumerate, "Enumerate up to N witnesses, or 'all'");
    s->add_flag("--mod-aut", solve.mod_aut, "Enumerate one witness per automorphism orbit");
    s->add_option("--fixed", solve.fixed, "Pre-colour vertices, v=c");
    s->add_flag("--fast-small", solve.fast_small, "Use the 2-SAT decider for targets with at most two vertices");
    s->add_option("--project", solve.project, "Reduction map; also print each witness projected to the source");
    s->add_option("--budget", solve.budget, "Node budget");
    s->add_option("--workers", solve.workers, "Threads splitting the top-level branching")->check(CLI::PositiveNumber);

    ReduceArgs reduce;
    auto * r = app.add_subcommand("reduce", "Build a reduction instance and its .map sidecar");
    r->add_option("--kind", reduce.kind, "ios-t4, iot-t4, ios-t5, iot-t5, collapse-ios or collapse-iot")->required();
    r->add_option("--input", reduce.input, "Source graph (undirected format for the t4 kinds)")->required();
    r->add_option("--output", reduce.output, "Instance graph file to write")->required();
    r->add_option("--target", reduce.target, "Collapse target, name or file");
    r->add_option("--pivot", reduce.pivot, "Collapse pivot colour");
    r->add_option("--direction", reduce.direction, "Collapse direction, out or in");

    VerifyArgs verify;
    auto * v = app.add_subcommand("verify-gadget", "Check gadget contracts and lemma compositions");
    v->add_option("--gadget", verify.gadget, "Gadget asset name");
    v->add_option("--lemma", verify.lemma, "Lemma check id")->check(CLI::IsMember(lemma_ids()));
    v->add_flag("--all", verify.all, "Every gadget and every lemma check");
    v->add_option("--budget", verify.budget, "Node budget per enumeration");

    CatalogArgs catalog;
    auto * c = app.add_subcommand("catalog", "Reflexive tournaments");
    c->add_option("--list", catalog.list, "List the tournaments on n vertices, n=<k>");
    c->add_option("--show", catalog.show, "Show a target");
    c->add_option("--aut", catalog.aut, "List a target's automorphisms");

    std::string oracle_input;
    auto * o = app.add_subcommand("oracle", "3-edge-colour a subcubic graph by exhaustive search");
    o->add_option("--input", oracle_input, "Undirected graph file")->required();

    check::AcceptanceOptions selfcheck;
    auto * sc = app.add_subcommand("selfcheck", "Run the acceptance suite");
    sc->add_flag("--quick", selfcheck.quick, "Skip the stretch checks");
    sc->add_option("--seed", selfcheck.seed, "Seed for the random batteries");
    std::vector<int> criteria;
    sc->add_option("--criterion", criteria, "Run only these criteria")->check(CLI::Range(1, check::criterion_count));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        return app.exit(e) == 0 ? exit_yes : exit_error;
    }

    try {
        if (s->parsed())
            return cmd_solve(solve);
        if (r->parsed())
            return cmd_reduce(reduce);
        if (v->parsed())
            return cmd_verify_gadget(verify);
        if (c->parsed())
            return cmd_catalog(catalog);
        if (o->parsed())
            return cmd_oracle(oracle_input);
        return cmd_selfcheck(selfcheck, criteria);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
}
