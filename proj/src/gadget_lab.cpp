#include <injhom/gadget_lab.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#ifndef INJHOM_DEFAULT_ASSET_DIR
#define INJHOM_DEFAULT_ASSET_DIR "assets/gadgets"
#endif

namespace injhom {

namespace {
    auto malformed(int line, const std::string & message) -> Error
    {
        return Error(ErrorCode::ContractMalformed, "line " + std::to_string(line) + ": " + message);
    }

    auto split(const std::string & text, char separator) -> std::vector<std::string>
    {
        std::vector<std::string> parts;
        std::string part;
        std::istringstream in(text);
        while (std::getline(in, part, separator))
            parts.push_back(part);
        return parts;
    }

    auto colour_list(const std::vector<VertexId> & colours) -> std::string
    {
        std::string out;
        for (auto c : colours)
            out += (out.empty() ? "" : ",") + colour_name(c);
        return out;
    }
}

auto Fact::text() const -> std::string
{
    switch (kind) {
    case FactKind::NonEmpty: return "nonempty";
    case FactKind::Forced: return "forced " + refs[0] + " " + colour_name(colours[0]);
    case FactKind::Equal: return "equal " + refs[0] + " " + refs[1];
    case FactKind::Range: return "range " + refs[0] + " " + colour_list(colours);
    case FactKind::Extends: {
        std::string out = "extends ";
        for (std::size_t i = 0; i < refs.size(); ++i)
            out += (i ? "," : "") + refs[i] + "=" + colour_name(colours[i]);
        return out;
    }
    }
    return "";
}

auto parse_contract(const std::string & text) -> Contract
{
    Contract contract;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (! line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string word; words >> word;)
            w.push_back(word);
        if (w.empty() || w[0][0] == '#')
            continue;

        auto expect = [&](std::size_t count) {
            if (w.size() != count)
                throw malformed(number, "'" + w[0] + "' takes " + std::to_string(count - 1) + " argument(s)");
        };
        auto colour = [&](const std::string & name) {
            try {
                return parse_colour(name);
            }
            catch (const Error &) {
                throw malformed(number, "bad colour '" + name + "'");
            }
        };

        Fact fact;
        if (w[0] == "target") {
            expect(2);
            if (! is_target_name(w[1]))
                throw malformed(number, "unknown target '" + w[1] + "'");
            contract.target = w[1];
            continue;
        }
        else if (w[0] == "mode") {
            expect(2);
            try {
                contract.mode = parse_mode(w[1]);
            }
            catch (const Error &) {
                throw malformed(number, "unknown mode '" + w[1] + "'");
            }
            continue;
        }
        else if (w[0] == "anchor") {
            expect(3);
            if (contract.anchor)
                throw malformed(number, "second anchor");
            contract.anchor = Anchor{w[1], colour(w[2])};
            continue;
        }
        else if (w[0] == "nonempty") {
            expect(1);
            fact.kind = FactKind::NonEmpty;
        }
        else if (w[0] == "forced") {
            expect(3);
            fact.kind = FactKind::Forced;
            fact.refs = {w[1]};
            fact.colours = {colour(w[2])};
        }
        else if (w[0] == "equal") {
            expect(3);
            fact.kind = FactKind::Equal;
            fact.refs = {w[1], w[2]};
        }
        else if (w[0] == "range") {
            expect(3);
            fact.kind = FactKind::Range;
            fact.refs = {w[1]};
            for (const auto & c : split(w[2], ','))
                fact.colours.push_back(colour(c));
            if (fact.colours.empty())
                throw malformed(number, "empty range");
        }
        else if (w[0] == "extends") {
            expect(2);
            fact.kind = FactKind::Extends;
            std::map<std::string, VertexId> seen;
            for (const auto & item : split(w[1], ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw malformed(number, "expected ref=colour, got '" + item + "'");
                auto ref = item.substr(0, eq);
                auto c = colour(item.substr(eq + 1));
                auto [it, inserted] = seen.emplace(ref, c);
                if (! inserted && it->second != c)
                    throw malformed(number, "'" + ref + "' is given two colours");
                if (inserted) {
                    fact.refs.push_back(ref);
                    fact.colours.push_back(c);
                }
            }
        }
        else
            throw malformed(number, "unknown directive '" + w[0] + "'");
        contract.facts.push_back(std::move(fact));
    }

    auto size = named_target(contract.target).size();
    auto check = [&](VertexId c) {
        if (c >= size)
            throw Error(ErrorCode::ContractMalformed, "colour " + colour_name(c) + " is not a vertex of " + contract.target);
    };
    if (contract.anchor)
        check(contract.anchor->colour);
    for (const auto & fact : contract.facts)
        for (auto c : fact.colours)
            check(c);
    return contract;
}

auto serialize_contract(const Contract & contract) -> std::string
{
    std::string out = "target " + contract.target + "\nmode " + to_string(contract.mode) + "\n";
    if (contract.anchor)
        out += "anchor " + contract.anchor->ref + " " + colour_name(contract.anchor->colour) + "\n";
    for (const auto & fact : contract.facts)
        out += fact.text() + "\n";
    return out;
}

auto gadget_scope(const GadgetSpec & spec) -> ScopeMap
{
    ScopeMap scope;
    for (VertexId v = 0; v < spec.graph.vertex_count(); ++v)
        scope[std::to_string(v)] = v;
    for (const auto & [name, v] : spec.ports)
        scope[name] = v;
    return scope;
}

auto default_asset_dir() -> std::string
{
    if (const char * env = std::getenv("INJHOM_ASSET_DIR"); env && *env)
        return env;
    return INJHOM_DEFAULT_ASSET_DIR;
}

auto load_gadget(const std::string & name, const std::string & asset_dir) -> GadgetSpec
{
    namespace fs = std::filesystem;
    auto graph_path = fs::path(asset_dir) / (name + ".graph");
    auto contract_path = fs::path(asset_dir) / (name + ".contract");
    if (! fs::exists(graph_path))
        throw Error(ErrorCode::AssetMissing, "no gadget file " + graph_path.string());
    if (! fs::exists(contract_path))
        throw Error(ErrorCode::AssetMissing, "no contract file " + contract_path.string());

    GadgetSpec spec;
    spec.name = name;
    auto doc = parse_document(read_text_file(graph_path.string()));
    spec.graph = std::move(doc.graph);
    spec.ports = std::move(doc.ports);
    std::set<VertexId> port_vertices;
    for (const auto & [port, v] : spec.ports)
        if (! port_vertices.insert(v).second)
            throw Error(ErrorCode::ContractMalformed, name + ": two ports share vertex " + std::to_string(v));

    spec.contract = parse_contract(read_text_file(contract_path.string()));
    auto scope = gadget_scope(spec);
    auto known = [&](const std::string & ref) {
        if (! scope.contains(ref))
            throw Error(ErrorCode::ContractMalformed, name + ": contract mentions unknown vertex '" + ref + "'");
    };
    if (spec.contract.anchor)
        known(spec.contract.anchor->ref);
    for (const auto & fact : spec.contract.facts)
        for (const auto & ref : fact.refs)
            known(ref);
    return spec;
}

auto compose(const std::vector<Placement> & parts,
    const std::vector<std::pair<std::string, std::string>> & identifications,
    const std::vector<std::pair<std::string, std::string>> & extra_arcs) -> Composition
{
    std::vector<OrientedGraph> graphs;
    for (const auto & part : parts)
        graphs.push_back(part.spec.graph);
    auto joined = disjoint_union(graphs);

    ScopeMap labels, ports;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto & part = parts[i];
        if (labels.contains(part.alias + ".0") || part.alias.find('.') != std::string::npos)
            throw Error(ErrorCode::InvalidArgument, "bad or repeated alias '" + part.alias + "'");
        for (VertexId v = 0; v < part.spec.graph.vertex_count(); ++v)
            labels[part.alias + "." + std::to_string(v)] = joined.offsets[i] + v;
        for (const auto & [name, v] : part.spec.ports)
            ports[part.alias + "." + name] = joined.offsets[i] + v;
    }
    auto resolve = [&](const std::string & ref) {
        if (auto it = ports.find(ref); it != ports.end())
            return it->second;
        if (auto it = labels.find(ref); it != labels.end())
            return it->second;
        throw Error(ErrorCode::UnknownPort, "no vertex '" + ref + "' in the composition");
    };

    auto arcs = joined.graph.arcs();
    for (const auto & [from, to] : extra_arcs)
        arcs.push_back({resolve(from), resolve(to)});
    OrientedGraph with_arcs(joined.graph.vertex_count(), std::move(arcs));

    std::vector<std::pair<VertexId, VertexId>> merges;
    for (const auto & [keep, merge] : identifications) {
        for (const auto & ref : {keep, merge})
            if (! ports.contains(ref))
                throw Error(ErrorCode::UnknownPort, "'" + ref + "' is not a declared port");
        merges.emplace_back(ports.at(keep), ports.at(merge));
    }
    auto merged = identify_vertices(with_arcs, merges);

    Composition result;
    result.graph = std::move(merged.graph);
    for (const auto & [name, v] : labels)
        result.scope[name] = merged.relabel[v];
    for (const auto & [name, v] : ports)
        result.scope[name] = merged.relabel[v];
    return result;
}

auto to_string(FactStatus status) -> std::string
{
    switch (status) {
    case FactStatus::Pass: return "PASS";
    case FactStatus::Fail: return "FAIL";
    case FactStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

auto VerificationReport::passed() const -> bool
{
    return std::all_of(facts.begin(), facts.end(), [](const FactResult & f) { return f.status == FactStatus::Pass; });
}

auto VerificationReport::format() const -> std::string
{
    std::string out = id + ": " + std::to_string(witness_count) + " distinct restriction(s), " + (passed() ? "PASS" : "FAIL") + "\n";
    for (const auto & f : facts) {
        out += "  " + to_string(f.status) + "  " + f.fact;
        if (! f.detail.empty())
            out += "  (" + f.detail + ")";
        out += "\n";
        if (f.counterexample)
            out += "    counterexample: " + format_witness(*f.counterexample) + "\n";
    }
    return out;
}

auto verify_contract(const OrientedGraph & g, const Contract & contract, const ScopeMap & scope,
    const VerifyOptions & options, const std::string & id) -> VerificationReport
{
    VerificationReport report;
    report.id = id;
    auto t = named_target(contract.target);
    auto resolve = [&](const std::string & ref) {
        auto it = scope.find(ref);
        if (it == scope.end() || it->second < 0 || it->second >= g.vertex_count())
            throw Error(ErrorCode::ContractMalformed, "unknown vertex '" + ref + "'");
        return it->second;
    };
    auto add_stats = [&](const SearchStats & s) {
        report.stats.nodes += s.nodes;
        report.stats.propagations += s.propagations;
        report.stats.backjumps += s.backjumps;
    };

    SolveOptions base;
    base.mode = contract.mode;
    base.node_budget = options.node_budget;

    if (contract.anchor) {
        auto v = resolve(contract.anchor->ref);
        auto c = contract.anchor->colour;
        FactResult anchor{"anchor " + contract.anchor->ref + " " + colour_name(c)};
        ColourSet orbit = 0;
        for (const auto & alpha : t.automorphisms())
            orbit |= ColourSet{1} << alpha[c];
        for (VertexId d = 0; d < t.size() && anchor.status == FactStatus::Pass; ++d) {
            if ((orbit >> d) & 1u)
                continue;
            auto o = base;
            o.fixed[v] = d;
            SolveResult r;
            try {
                r = decide(g, t, o);
            }
            catch (const Error &) {
                continue;
            }
            add_stats(r.stats);
            if (r.status == SolveStatus::Sat) {
                anchor.status = FactStatus::Fail;
                anchor.detail = "colour " + colour_name(d) + " is possible but not equivalent to the anchor";
                anchor.counterexample = r.witnesses.front();
            }
            else if (r.status == SolveStatus::BudgetExhausted) {
                anchor.status = FactStatus::Inconclusive;
                anchor.detail = "node budget exhausted";
            }
        }
        report.facts.push_back(std::move(anchor));
        base.fixed[v] = c;
    }

    std::vector<VertexId> projection;
    bool need_enumeration = false;
    for (const auto & fact : contract.facts) {
        if (fact.kind == FactKind::Extends)
            continue;
        need_enumeration = true;
        for (const auto & ref : fact.refs)
            projection.push_back(resolve(ref));
    }
    std::sort(projection.begin(), projection.end());
    projection.erase(std::unique(projection.begin(), projection.end()), projection.end());

    SolveResult witnesses;
    if (need_enumeration) {
        witnesses = enumerate_projected(g, t, base, projection);
        add_stats(witnesses.stats);
        report.witness_count = witnesses.status == SolveStatus::BudgetExhausted ? 0 : witnesses.witnesses.size();
    }
    const bool exhausted = witnesses.status == SolveStatus::BudgetExhausted;

    auto complete = [&](const Colouring & partial) -> std::optional<Colouring> {
        auto o = base;
        for (VertexId v = 0; v < static_cast<VertexId>(partial.size()); ++v)
            if (partial[v] != unassigned)
                o.fixed[v] = partial[v];
        auto r = decide(g, t, o);
        add_stats(r.stats);
        if (r.status != SolveStatus::Sat)
            return std::nullopt;
        return r.witnesses.front();
    };

    for (const auto & fact : contract.facts) {
        FactResult result{fact.text()};
        if (fact.kind == FactKind::Extends) {
            auto o = base;
            bool conflict = false;
            for (std::size_t i = 0; i < fact.refs.size(); ++i) {
                auto v = resolve(fact.refs[i]);
                if (o.fixed.contains(v) && o.fixed[v] != fact.colours[i])
                    conflict = true;
                o.fixed[v] = fact.colours[i];
            }
            SolveResult r;
            try {
                if (! conflict)
                    r = decide(g, t, o);
            }
            catch (const Error & e) {
                if (e.code() != ErrorCode::InvalidFixedAssignment)
                    throw;
                conflict = true;
            }
            add_stats(r.stats);
            if (conflict) {
                result.status = FactStatus::Fail;
                result.detail = "the pre-colouring itself violates a constraint";
            }
            else if (r.status == SolveStatus::BudgetExhausted) {
                result.status = FactStatus::Inconclusive;
                result.detail = "node budget exhausted";
            }
            else if (r.status == SolveStatus::Unsat) {
                result.status = FactStatus::Fail;
                result.detail = "no completion";
            }
            report.facts.push_back(std::move(result));
            continue;
        }

        if (exhausted) {
            result.status = FactStatus::Inconclusive;
            result.detail = "node budget exhausted";
            report.facts.push_back(std::move(result));
            continue;
        }
        if (witnesses.witnesses.empty()) {
            result.status = FactStatus::Fail;
            result.detail = "no valid colouring exists";
            report.facts.push_back(std::move(result));
            continue;
        }

        std::vector<VertexId> vs;
        for (const auto & ref : fact.refs)
            vs.push_back(resolve(ref));
        for (const auto & w : witnesses.witnesses) {
            bool holds = true;
            switch (fact.kind) {
            case FactKind::Forced: holds = w[vs[0]] == fact.colours[0]; break;
            case FactKind::Equal: holds = w[vs[0]] == w[vs[1]]; break;
            case FactKind::Range: holds = std::find(fact.colours.begin(), fact.colours.end(), w[vs[0]]) != fact.colours.end(); break;
            default: break;
            }
            if (! holds) {
                result.status = FactStatus::Fail;
                result.detail = "a valid colouring gives ";
                for (std::size_t i = 0; i < vs.size(); ++i)
                    result.detail += (i ? ", " : "") + fact.refs[i] + "=" + colour_name(w[vs[i]]);
                result.counterexample = complete(w);
                break;
            }
        }
        report.facts.push_back(std::move(result));
    }
    return report;
}

namespace {
    struct LemmaInfo {
        std::string id;
        std::vector<std::string> gadgets;
    };

    const std::vector<LemmaInfo> & registry()
    {
        static const std::vector<LemmaInfo> lemmas{
            {"hx-forced", {"Hx"}},
            {"he-equal", {"He", "Hx"}},
            {"jv-ring", {"Jv"}},
            {"fx-forced", {"Fx"}},
            {"fe-forced", {"Fe"}},
            {"fe-equal", {"Fe", "Fx"}},
            {"dv-ring", {"Dv"}},
        };
        return lemmas;
    }

    auto single_case(const GadgetSpec & spec) -> LemmaCase
    {
        return {spec.name, {spec.graph, gadget_scope(spec)}, spec.contract};
    }

    auto point_gadget() -> GadgetSpec
    {
        GadgetSpec spec;
        spec.name = "point";
        spec.graph = OrientedGraph(1, {});
        spec.ports = {{"v", 0}};
        return spec;
    }

    /// Vertex gadgets x0 and x1, with the edge gadget's ports on squares i and j.
    auto edge_cases(const GadgetSpec & vertex, const GadgetSpec & edge, const std::string & tail, const std::string & head,
        const std::string & target, InjectivityMode mode) -> std::vector<LemmaCase>
    {
        std::vector<LemmaCase> cases;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto sq_i = "x0.sq" + std::to_string(i), sq_j = "x1.sq" + std::to_string(j);
                LemmaCase lc;
                lc.name = edge.name + "' on squares " + std::to_string(i) + "," + std::to_string(j);
                lc.composition = compose({{"x0", vertex}, {"x1", vertex}, {"e", edge}}, {{sq_i, "e." + tail}, {sq_j, "e." + head}});
                lc.contract.target = target;
                lc.contract.mode = mode;
                lc.contract.facts.push_back({FactKind::NonEmpty, {}, {}});
                lc.contract.facts.push_back({FactKind::Equal, {"e." + tail, "e." + head}, {}});
                lc.contract.facts.push_back({FactKind::Range, {"e." + tail}, {1, 2, 3}});
                for (VertexId c = 1; c <= 3; ++c)
                    lc.contract.facts.push_back({FactKind::Extends, {"e." + tail, "e." + head}, {c, c}});
                cases.push_back(std::move(lc));
            }
        return cases;
    }

    /// Ring of n copies; each out-port feeds the next copy's in-port.
    auto ring(const GadgetSpec & gadget, int n, const std::vector<std::string> & out_ports, bool pendants) -> Composition
    {
        std::vector<Placement> parts;
        std::vector<std::pair<std::string, std::string>> arcs;
        for (int i = 0; i < n; ++i)
            parts.push_back({"c" + std::to_string(i), gadget});
        for (int i = 0; i < n; ++i)
            for (const auto & port : out_ports)
                arcs.emplace_back("c" + std::to_string(i) + "." + port, "c" + std::to_string((i + 1) % n) + ".in");
        if (pendants)
            for (int i = 0; i < n; ++i) {
                parts.push_back({"p" + std::to_string(i), point_gadget()});
                arcs.emplace_back("c" + std::to_string(i) + ".attach", "p" + std::to_string(i) + ".v");
            }
        return compose(parts, {}, arcs);
    }

    /// Forced chain on a ring, and the colours reachable by attached vertices.
    auto ring_cases(const GadgetSpec & gadget, const std::vector<std::string> & out_ports, const std::vector<std::pair<int, VertexId>> & chain,
        const Anchor & chain_anchor, const Anchor & pendant_anchor, InjectivityMode mode) -> std::vector<LemmaCase>
    {
        const std::vector<VertexId> cycle_colours{1, 3, 4};
        std::vector<LemmaCase> cases;
        for (int n : {2, 3}) {
            LemmaCase lc;
            lc.name = gadget.name + " ring of " + std::to_string(n);
            lc.composition = ring(gadget, n, out_ports, false);
            lc.contract.target = "T5";
            lc.contract.mode = mode;
            lc.contract.anchor = chain_anchor;
            lc.contract.facts.push_back({FactKind::NonEmpty, {}, {}});
            for (int i = 0; i < n; ++i)
                for (const auto & [label, colour] : chain)
                    lc.contract.facts.push_back({FactKind::Forced, {"c" + std::to_string(i) + "." + std::to_string(label)}, {colour}});
            cases.push_back(std::move(lc));
        }
        for (int n : {2, 3}) {
            LemmaCase lc;
            lc.name = gadget.name + " ring of " + std::to_string(n) + " with attached vertices";
            lc.composition = ring(gadget, n, out_ports, true);
            lc.contract.target = "T5";
            lc.contract.mode = mode;
            lc.contract.anchor = pendant_anchor;
            lc.contract.facts.push_back({FactKind::NonEmpty, {}, {}});
            for (int i = 0; i < n; ++i)
                lc.contract.facts.push_back({FactKind::Range, {"p" + std::to_string(i) + ".v"}, cycle_colours});
            std::vector<int> digits(n, 0);
            while (true) {
                Fact fact{FactKind::Extends, {}, {}};
                for (int i = 0; i < n; ++i) {
                    fact.refs.push_back("p" + std::to_string(i) + ".v");
                    fact.colours.push_back(cycle_colours[digits[i]]);
                }
                lc.contract.facts.push_back(std::move(fact));
                int i = 0;
                while (i < n && digits[i] == 2)
                    digits[i++] = 0;
                if (i == n)
                    break;
                ++digits[i];
            }
            cases.push_back(std::move(lc));
        }
        return cases;
    }
}

auto lemma_ids() -> std::vector<std::string>
{
    std::vector<std::string> ids;
    for (const auto & l : registry())
        ids.push_back(l.id);
    return ids;
}

auto lemmas_for_gadget(const std::string & gadget) -> std::vector<std::string>
{
    std::vector<std::string> ids;
    for (const auto & l : registry())
        if (std::find(l.gadgets.begin(), l.gadgets.end(), gadget) != l.gadgets.end())
            ids.push_back(l.id);
    return ids;
}

auto lemma_cases(const std::string & id, const std::string & asset_dir) -> std::vector<LemmaCase>
{
    if (id == "hx-forced")
        return {single_case(load_gadget("Hx", asset_dir))};
    if (id == "fx-forced")
        return {single_case(load_gadget("Fx", asset_dir))};
    if (id == "fe-forced")
        return {single_case(load_gadget("Fe", asset_dir))};
    if (id == "he-equal")
        return edge_cases(load_gadget("Hx", asset_dir), load_gadget("He", asset_dir), "tail", "head", "T4", InjectivityMode::IosSeparate);
    if (id == "fe-equal")
        return edge_cases(load_gadget("Fx", asset_dir), load_gadget("Fe", asset_dir), "tail", "head", "T4", InjectivityMode::IotTogether);
    if (id == "jv-ring")
        return ring_cases(load_gadget("Jv", asset_dir), {"out0", "out1", "out2"}, {{0, 0}, {4, 2}, {8, 4}, {12, 1}, {16, 3}},
            Anchor{"c0.0", 0}, Anchor{"c0.8", 0}, InjectivityMode::IosSeparate);
    if (id == "dv-ring")
        return ring_cases(load_gadget("Dv", asset_dir), {"out"}, {{0, 3}, {4, 0}, {8, 2}},
            Anchor{"c0.0", 3}, Anchor{"c0.0", 3}, InjectivityMode::IotTogether);
    throw Error(ErrorCode::InvalidArgument, "unknown lemma '" + id + "'");
}

auto verify_lemma(const std::string & id, const std::string & asset_dir, const VerifyOptions & options) -> std::vector<VerificationReport>
{
    std::vector<VerificationReport> reports;
    for (const auto & lc : lemma_cases(id, asset_dir))
        reports.push_back(verify_contract(lc.composition.graph, lc.contract, lc.composition.scope, options, id + " / " + lc.name));
    return reports;
}

auto synthesize_gadget(const Contract & contract, const SynthesisOptions & options) -> GadgetSpec
{
    if (options.max_vertices > 12)
        throw Error(ErrorCode::InvalidArgument, "synthesis is bounded by 12 vertices");

    std::map<std::string, VertexId> forced;
    for (const auto & fact : contract.facts)
        if (fact.kind == FactKind::Forced) {
            auto [it, inserted] = forced.emplace(fact.refs[0], fact.colours[0]);
            if (! inserted && it->second != fact.colours[0])
                throw Error(ErrorCode::NotFound, "contract forces two colours on '" + fact.refs[0] + "'");
        }

    auto scope_for = [&](int n) {
        ScopeMap scope;
        for (VertexId v = 0; v < n; ++v)
            scope[std::to_string(v)] = v;
        for (int p = 0; p < std::min(options.ports, n); ++p)
            scope["p" + std::to_string(p)] = p;
        return scope;
    };
    auto mentions_fit = [&](const ScopeMap & scope) {
        auto fits = [&](const std::string & ref) { return scope.contains(ref); };
        if (contract.anchor && ! fits(contract.anchor->ref))
            return false;
        for (const auto & fact : contract.facts)
            for (const auto & ref : fact.refs)
                if (! fits(ref))
                    return false;
        return true;
    };

    VerifyOptions verify_options;
    verify_options.node_budget = 1'000'000;
    for (int n = std::max(1, options.ports); n <= options.max_vertices; ++n) {
        auto scope = scope_for(n);
        if (! mentions_fit(scope))
            continue;
        std::vector<std::pair<VertexId, VertexId>> pairs;
        for (VertexId i = 0; i < n; ++i)
            for (VertexId j = i + 1; j < n; ++j)
                pairs.emplace_back(i, j);

        auto try_state = [&](const std::vector<int> & state) -> std::optional<GadgetSpec> {
            std::vector<Arc> arcs;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                if (state[p] == 1)
                    arcs.push_back({pairs[p].first, pairs[p].second});
                else if (state[p] == 2)
                    arcs.push_back({pairs[p].second, pairs[p].first});
            }
            OrientedGraph g(n, std::move(arcs));
            if (! verify_contract(g, contract, scope, verify_options).passed())
                return std::nullopt;
            GadgetSpec spec;
            spec.name = "synthesized";
            spec.graph = std::move(g);
            for (int p = 0; p < std::min(options.ports, n); ++p)
                spec.ports["p" + std::to_string(p)] = p;
            spec.contract = contract;
            spec.provenance = "synthesized";
            return spec;
        };

        std::vector<int> state(pairs.size(), 0);
        if (n <= 5) {
            while (true) {
                if (auto found = try_state(state))
                    return *found;
                std::size_t p = 0;
                while (p < state.size() && state[p] == 2)
                    state[p++] = 0;
                if (p == state.size())
                    break;
                ++state[p];
            }
        }
        else {
            std::mt19937_64 rng(options.seed * 1000003u + static_cast<std::uint64_t>(n));
            for (int s = 0; s < options.samples_per_size; ++s) {
                for (auto & x : state)
                    x = static_cast<int>(rng() % 3);
                if (auto found = try_state(state))
                    return *found;
            }
        }
    }
    throw Error(ErrorCode::NotFound, "no gadget with at most " + std::to_string(options.max_vertices) + " vertices satisfies the contract");
}

}
