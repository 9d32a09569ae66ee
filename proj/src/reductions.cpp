#include <injhom/reductions.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace injhom {

UndirectedGraph::UndirectedGraph(int vertex_count, std::vector<std::pair<VertexId, VertexId>> edges) :
    _n(vertex_count)
{
    if (vertex_count < 0)
        throw Error(ErrorCode::InvalidArgument, "negative vertex count");
    for (auto & [u, v] : edges) {
        if (u < 0 || u >= _n || v < 0 || v >= _n)
            throw Error(ErrorCode::VertexOutOfRange, "edge " + std::to_string(u) + " " + std::to_string(v));
        if (u == v)
            throw Error(ErrorCode::MalformedLine, "loop at " + std::to_string(u) + " in an undirected graph");
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw Error(ErrorCode::DuplicateArc, "edge " + std::to_string(dup->first) + " " + std::to_string(dup->second) + " listed twice");
    _edges = std::move(edges);
}

auto UndirectedGraph::degree(VertexId v) const -> int
{
    return static_cast<int>(std::count_if(_edges.begin(), _edges.end(), [&](const auto & e) { return e.first == v || e.second == v; }));
}

auto UndirectedGraph::max_degree() const -> int
{
    std::vector<int> degree(_n, 0);
    for (const auto & [u, v] : _edges) {
        ++degree[u];
        ++degree[v];
    }
    return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

auto parse_undirected(const std::string & text) -> UndirectedGraph
{
    std::istringstream in(text);
    std::string line;
    int number = 0;
    int n = -1;
    std::vector<std::pair<VertexId, VertexId>> edges;
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
        auto integer = [&](const std::string & s) {
            try {
                std::size_t used = 0;
                int value = std::stoi(s, &used);
                if (used != s.size())
                    throw std::invalid_argument(s);
                return value;
            }
            catch (const std::exception &) {
                throw Error(ErrorCode::MalformedLine, "line " + std::to_string(number) + ": bad integer '" + s + "'");
            }
        };
        if (n < 0) {
            if (w.size() != 2 || w[0] != "n" || integer(w[1]) < 0)
                throw Error(ErrorCode::MalformedLine, "line " + std::to_string(number) + ": expected 'n <count>'");
            n = integer(w[1]);
            continue;
        }
        if (w.size() != 3 || w[0] != "e")
            throw Error(ErrorCode::MalformedLine, "line " + std::to_string(number) + ": expected 'e <u> <v>'");
        edges.emplace_back(integer(w[1]), integer(w[2]));
    }
    if (n < 0)
        throw Error(ErrorCode::MalformedLine, "missing 'n <count>' header");
    return {n, std::move(edges)};
}

auto serialize_undirected(const UndirectedGraph & g) -> std::string
{
    std::string out = "n " + std::to_string(g.vertex_count());
    for (const auto & [u, v] : g.edges())
        out += "\ne " + std::to_string(u) + " " + std::to_string(v);
    return out;
}

auto complete_graph(int n) -> UndirectedGraph
{
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return {n, edges};
}

auto cycle_graph(int n) -> UndirectedGraph
{
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId i = 0; i < n; ++i)
        edges.emplace_back(i, (i + 1) % n);
    return {n, edges};
}

auto petersen_graph() -> UndirectedGraph
{
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return {10, edges};
}

auto subcubic_graphs(int n) -> std::vector<UndirectedGraph>
{
    if (n < 0 || n > 8)
        throw Error(ErrorCode::BoundExceeded, "subcubic graph enumeration is limited to 8 vertices");
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j) {
            index[i][j] = index[j][i] = static_cast<int>(pairs.size());
            pairs.emplace_back(i, j);
        }
    std::vector<std::vector<VertexId>> perms;
    std::vector<VertexId> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::set<std::uint64_t> seen;
    std::vector<UndirectedGraph> result;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<int> degree(n, 0);
        bool ok = true;
        for (std::size_t e = 0; e < pairs.size() && ok; ++e)
            if ((mask >> e) & 1u)
                ok = ++degree[pairs[e].first] <= 3 && ++degree[pairs[e].second] <= 3;
        if (! ok)
            continue;
        std::uint64_t best = mask;
        for (const auto & q : perms) {
            std::uint64_t image = 0;
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if ((mask >> e) & 1u)
                    image |= std::uint64_t{1} << index[q[pairs[e].first]][q[pairs[e].second]];
            best = std::min(best, image);
        }
        if (! seen.insert(best).second)
            continue;
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t e = 0; e < pairs.size(); ++e)
            if ((best >> e) & 1u)
                edges.push_back(pairs[e]);
        result.emplace_back(n, edges);
    }
    return result;
}

auto orient_edges(const UndirectedGraph & g) -> OrientedGraph
{
    std::vector<Arc> arcs;
    for (const auto & [u, v] : g.edges())
        arcs.push_back({u, v});
    return {g.vertex_count(), arcs};
}

auto is_proper_edge_colouring(const UndirectedGraph & g, const EdgeColouring & colouring) -> bool
{
    if (colouring.size() != g.edges().size())
        return false;
    std::set<std::pair<VertexId, VertexId>> used;
    for (std::size_t e = 0; e < colouring.size(); ++e) {
        if (colouring[e] < 1 || colouring[e] > 3)
            return false;
        if (! used.emplace(g.edges()[e].first, colouring[e]).second || ! used.emplace(g.edges()[e].second, colouring[e]).second)
            return false;
    }
    return true;
}

auto three_edge_colouring_oracle(const UndirectedGraph & g) -> std::optional<EdgeColouring>
{
    if (g.max_degree() > 3)
        throw Error(ErrorCode::DegreeTooHigh, "maximum degree " + std::to_string(g.max_degree()) + " exceeds 3");
    const auto & edges = g.edges();
    const std::size_t m = edges.size();
    std::vector<unsigned> used(g.vertex_count(), 0);
    EdgeColouring colouring(m, 0);
    std::size_t e = 0;
    while (true) {
        if (e == m)
            return colouring;
        auto [u, v] = edges[e];
        if (colouring[e] != 0) {
            used[u] &= ~(1u << colouring[e]);
            used[v] &= ~(1u << colouring[e]);
        }
        VertexId next = colouring[e] + 1;
        while (next <= 3 && ((used[u] | used[v]) >> next & 1u))
            ++next;
        if (next <= 3) {
            colouring[e] = next;
            used[u] |= 1u << next;
            used[v] |= 1u << next;
            ++e;
            continue;
        }
        colouring[e] = 0;
        if (e == 0)
            return std::nullopt;
        --e;
    }
}

auto to_string(ReductionKind kind) -> std::string
{
    switch (kind) {
    case ReductionKind::IosT4: return "ios-t4";
    case ReductionKind::IotT4: return "iot-t4";
    case ReductionKind::IosT5: return "ios-t5";
    case ReductionKind::IotT5: return "iot-t5";
    case ReductionKind::CollapseIos: return "collapse-ios";
    case ReductionKind::CollapseIot: return "collapse-iot";
    }
    return "?";
}

auto parse_reduction_kind(const std::string & text) -> ReductionKind
{
    for (auto kind : {ReductionKind::IosT4, ReductionKind::IotT4, ReductionKind::IosT5, ReductionKind::IotT5, ReductionKind::CollapseIos, ReductionKind::CollapseIot})
        if (to_string(kind) == text)
            return kind;
    throw Error(ErrorCode::InvalidArgument, "unknown reduction kind '" + text + "'");
}

namespace {
    auto is_collapse(ReductionKind kind) -> bool
    {
        return kind == ReductionKind::CollapseIos || kind == ReductionKind::CollapseIot;
    }

    auto is_edge_kind(ReductionKind kind) -> bool
    {
        return kind == ReductionKind::IosT4 || kind == ReductionKind::IotT4;
    }

    auto load_for_reduction(const std::string & name, const std::string & asset_dir) -> GadgetSpec
    {
        try {
            return load_gadget(name, asset_dir);
        }
        catch (const Error & e) {
            if (e.code() == ErrorCode::AssetMissing)
                throw Error(ErrorCode::GadgetMissing, e.what());
            throw;
        }
    }

    auto copy_ids(const Composition & c, const std::string & alias, int size) -> std::vector<VertexId>
    {
        std::vector<VertexId> ids(size);
        for (int label = 0; label < size; ++label)
            ids[label] = c.scope.at(alias + "." + std::to_string(label));
        return ids;
    }

    auto build_edge_kind(const UndirectedGraph & g, ReductionKind kind, const std::string & vertex_name,
        const std::string & edge_name, const std::string & asset_dir) -> ReductionInstance
    {
        if (g.max_degree() > 3)
            throw Error(ErrorCode::DegreeTooHigh, "maximum degree " + std::to_string(g.max_degree()) + " exceeds 3");
        auto vertex = load_for_reduction(vertex_name, asset_dir);
        auto edge = load_for_reduction(edge_name, asset_dir);

        ReductionInstance ri;
        ri.kind = kind;
        ri.target = named_target(NamedTarget::T4);
        ri.mode = kind == ReductionKind::IosT4 ? InjectivityMode::IosSeparate : InjectivityMode::IotTogether;
        ri.source_vertices = ri.padded_vertices = g.vertex_count();
        ri.source_edges = g.edges();

        std::vector<Placement> parts;
        for (int x = 0; x < g.vertex_count(); ++x)
            parts.push_back({"x" + std::to_string(x), vertex});
        for (std::size_t e = 0; e < g.edges().size(); ++e)
            parts.push_back({"e" + std::to_string(e), edge});

        // Edges are sorted, so each vertex's incident edges claim squares in ascending order.
        std::vector<int> next_square(g.vertex_count(), 0);
        std::vector<std::pair<std::string, std::string>> merges;
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            auto [u, v] = g.edges()[e];
            for (auto [x, port] : {std::pair{u, std::string("tail")}, std::pair{v, std::string("head")}}) {
                int square = next_square[x]++;
                if (square > 2)
                    throw Error(ErrorCode::SquareExhausted, "vertex " + std::to_string(x) + " has no unused square");
                merges.emplace_back("x" + std::to_string(x) + ".sq" + std::to_string(square), "e" + std::to_string(e) + "." + port);
                ri.identifications.push_back({x, square, static_cast<int>(e), port});
            }
        }
        auto composed = compose(parts, merges);
        ri.graph = std::move(composed.graph);
        for (int x = 0; x < g.vertex_count(); ++x) {
            ri.vertex_copies.push_back(copy_ids(composed, "x" + std::to_string(x), vertex.graph.vertex_count()));
            ri.unused_squares += 3 - next_square[x];
        }
        for (std::size_t e = 0; e < g.edges().size(); ++e)
            ri.edge_copies.push_back(copy_ids(composed, "e" + std::to_string(e), edge.graph.vertex_count()));
        return ri;
    }

    auto padded(const OrientedGraph & g) -> OrientedGraph
    {
        return {std::max(2, g.vertex_count()), g.arcs()};
    }

    auto plain_gadget(const OrientedGraph & g) -> GadgetSpec
    {
        GadgetSpec spec;
        spec.name = "source";
        spec.graph = g;
        return spec;
    }

    auto build_ring_kind(const OrientedGraph & g, ReductionKind kind, const std::string & name, const std::vector<std::string> & out_ports,
        VertexId anchor_label, VertexId anchor_colour, const std::string & asset_dir) -> ReductionInstance
    {
        auto gadget = load_for_reduction(name, asset_dir);
        ReductionInstance ri;
        ri.kind = kind;
        ri.target = named_target(NamedTarget::T5);
        ri.mode = kind == ReductionKind::IosT5 ? InjectivityMode::IosSeparate : InjectivityMode::IotTogether;
        ri.source_vertices = g.vertex_count();
        auto source = padded(g);
        const int n = source.vertex_count();
        ri.padded_vertices = n;

        std::vector<Placement> parts{{"g", plain_gadget(source)}};
        std::vector<std::pair<std::string, std::string>> arcs;
        for (int i = 0; i < n; ++i)
            parts.push_back({"c" + std::to_string(i), gadget});
        for (int i = 0; i < n; ++i) {
            auto here = "c" + std::to_string(i), next = "c" + std::to_string((i + 1) % n);
            for (const auto & port : out_ports)
                arcs.emplace_back(here + "." + port, next + ".in");
            arcs.emplace_back(here + ".attach", "g." + std::to_string(i));
        }
        auto composed = compose(parts, {}, arcs);
        ri.graph = std::move(composed.graph);
        for (int i = 0; i < n; ++i) {
            ri.vertex_copies.push_back(copy_ids(composed, "c" + std::to_string(i), gadget.graph.vertex_count()));
            ri.inner.push_back(composed.scope.at("g." + std::to_string(i)));
        }
        ri.source_colours = {1, 3, 4};
        ri.anchor = ri.vertex_copies[0][anchor_label];
        ri.anchor_colour = anchor_colour;
        return ri;
    }

    auto irreflexive(const OrientedGraph & g) -> OrientedGraph
    {
        std::vector<Arc> arcs;
        for (const auto & a : g.arcs())
            if (a.tail != a.head)
                arcs.push_back(a);
        return {g.vertex_count(), arcs};
    }

    auto reversed_target(const Target & t) -> Target
    {
        return Target(t.graph().reversed(), t.name());
    }
}

auto ReductionInstance::source_target() const -> Target
{
    if (is_collapse(kind))
        return collapse_target(target, pivot, direction);
    if (kind == ReductionKind::IosT5 || kind == ReductionKind::IotT5)
        return named_target(NamedTarget::C3);
    return {};
}

auto build_ios_t4(const UndirectedGraph & g, const std::string & asset_dir) -> ReductionInstance
{
    return build_edge_kind(g, ReductionKind::IosT4, "Hx", "He", asset_dir);
}

auto build_iot_t4(const UndirectedGraph & g, const std::string & asset_dir) -> ReductionInstance
{
    return build_edge_kind(g, ReductionKind::IotT4, "Fx", "Fe", asset_dir);
}

auto build_ios_t5(const OrientedGraph & g, const std::string & asset_dir) -> ReductionInstance
{
    return build_ring_kind(g, ReductionKind::IosT5, "Jv", {"out0", "out1", "out2"}, 8, 0, asset_dir);
}

auto build_iot_t5(const OrientedGraph & g, const std::string & asset_dir) -> ReductionInstance
{
    return build_ring_kind(g, ReductionKind::IotT5, "Dv", {"out"}, 0, 3, asset_dir);
}

auto collapse_members(const Target & t, VertexId v, Direction direction) -> std::vector<VertexId>
{
    if (v < 0 || v >= t.size())
        throw Error(ErrorCode::VertexOutOfRange, "pivot " + std::to_string(v));
    if (direction == Direction::Both)
        throw Error(ErrorCode::InvalidArgument, "collapse direction must be in or out");
    auto members = neighbourhood(t.graph(), v, direction);
    int degree = static_cast<int>(members.size());
    if (degree < 4)
        throw Error(ErrorCode::DegreeTooLow, "vertex " + colour_name(v) + " has " + (direction == Direction::Out ? "out" : "in")
            + "-degree " + std::to_string(degree) + ", below 4");
    members.erase(std::remove(members.begin(), members.end(), v), members.end());
    return members;
}

auto collapse_target(const Target & t, VertexId v, Direction direction) -> Target
{
    auto members = collapse_members(t, v, direction);
    auto sub = induced_subgraph(t.graph(), members);
    return Target(sub.graph, t.name() + (direction == Direction::Out ? "+" : "-") + colour_name(v));
}

auto build_ios_collapse(const OrientedGraph & g, const Target & t, VertexId v, Direction direction) -> ReductionInstance
{
    auto members = collapse_members(t, v, direction);
    ReductionInstance ri;
    ri.kind = ReductionKind::CollapseIos;
    ri.target = t;
    ri.mode = InjectivityMode::IosSeparate;
    ri.pivot = v;
    ri.direction = direction;
    ri.source_vertices = g.vertex_count();
    auto source = padded(g);
    const int n = source.vertex_count(), k = t.size();
    ri.padded_vertices = n;

    auto copy = irreflexive(t.graph());
    std::vector<Arc> arcs = source.arcs();
    VertexId next = n;
    for (int i = 0; i < n; ++i)
        ri.connectors.push_back(next++);
    for (int i = 0; i < n; ++i) {
        std::vector<VertexId> ids(k);
        for (int u = 0; u < k; ++u)
            ids[u] = next++;
        for (const auto & a : copy.arcs())
            arcs.push_back({ids[a.tail], ids[a.head]});
        ri.target_copies.push_back(std::move(ids));
    }
    for (int i = 0; i < n; ++i) {
        auto x = ri.connectors[i];
        if (direction == Direction::Out)
            arcs.push_back({x, i});
        else
            arcs.push_back({i, x});
        arcs.push_back({ri.target_copies[i][v], x});
        arcs.push_back({x, ri.target_copies[(i + 1) % n][v]});
    }
    ri.graph = OrientedGraph(next, std::move(arcs));
    for (int i = 0; i < n; ++i)
        ri.inner.push_back(i);
    ri.source_colours = members;
    ri.anchor = ri.target_copies[0][v];
    ri.anchor_colour = v;
    return ri;
}

auto build_iot_collapse(const OrientedGraph & g, const Target & t, VertexId v, Direction direction) -> ReductionInstance
{
    auto members = collapse_members(t, v, direction);
    if (direction == Direction::In) {
        auto ri = build_iot_collapse(g.reversed(), reversed_target(t), v, Direction::Out);
        ri.graph = ri.graph.reversed();
        ri.target = t;
        ri.direction = Direction::In;
        ri.source_colours = members;
        return ri;
    }

    ReductionInstance ri;
    ri.kind = ReductionKind::CollapseIot;
    ri.target = t;
    ri.mode = InjectivityMode::IotTogether;
    ri.pivot = v;
    ri.direction = direction;
    ri.source_vertices = g.vertex_count();
    auto source = padded(g);
    const int n = source.vertex_count(), k = t.size();
    ri.padded_vertices = n;

    auto copy = irreflexive(t.graph());
    std::vector<Arc> arcs = source.arcs();
    VertexId next = n;
    auto place = [&](bool star) {
        std::vector<VertexId> ids(k);
        for (int u = 0; u < k; ++u)
            ids[u] = next++;
        for (const auto & a : copy.arcs())
            if (! star || a.tail != v)
                arcs.push_back({ids[a.tail], ids[a.head]});
        return ids;
    };
    for (int i = 0; i < n; ++i)
        ri.target_copies.push_back(place(false));
    for (int i = 0; i < n; ++i)
        ri.star_copies.push_back(place(true));
    for (int i = 0; i < n; ++i) {
        const auto & previous_star = ri.star_copies[(i + n - 1) % n];
        for (VertexId u = 0; u < k; ++u)
            if (u != v)
                arcs.push_back({previous_star[u], ri.target_copies[i][u]});
        arcs.push_back({ri.target_copies[i][v], ri.star_copies[i][v]});
        arcs.push_back({ri.star_copies[i][v], i});
    }
    ri.graph = OrientedGraph(next, std::move(arcs));
    for (int i = 0; i < n; ++i)
        ri.inner.push_back(i);
    ri.source_colours = members;
    ri.anchor = ri.target_copies[0][v];
    ri.anchor_colour = v;
    return ri;
}

auto extract_edge_colouring(const ReductionInstance & ri, const Colouring & f) -> EdgeColouring
{
    if (! is_edge_kind(ri.kind))
        throw Error(ErrorCode::InvalidArgument, "edge colourings come from ios-t4 and iot-t4 instances");
    if (f.size() != static_cast<std::size_t>(ri.graph.vertex_count()))
        throw Error(ErrorCode::PartialColouring, "colouring does not cover the instance");
    const int head = ri.kind == ReductionKind::IosT4 ? 9 : 6;
    EdgeColouring result;
    for (std::size_t e = 0; e < ri.edge_copies.size(); ++e) {
        auto a = f[ri.edge_copies[e][0]], b = f[ri.edge_copies[e][head]];
        if (a != b)
            throw Error(ErrorCode::PortColourMismatch, "edge " + std::to_string(e) + " has port colours " + colour_name(a) + " and " + colour_name(b));
        result.push_back(a);
    }
    return result;
}

auto extract_inner_colouring(const ReductionInstance & ri, const Colouring & f) -> Colouring
{
    if (is_edge_kind(ri.kind))
        throw Error(ErrorCode::InvalidArgument, "ios-t4 and iot-t4 instances project to edge colourings");
    if (f.size() != static_cast<std::size_t>(ri.graph.vertex_count()))
        throw Error(ErrorCode::PartialColouring, "colouring does not cover the instance");

    const Permutation * normaliser = nullptr;
    for (const auto & alpha : ri.target.automorphisms())
        if (alpha[f[ri.anchor]] == ri.anchor_colour) {
            normaliser = &alpha;
            break;
        }
    if (! normaliser)
        throw Error(ErrorCode::NormalizationFailed, "no automorphism maps colour " + colour_name(f[ri.anchor]) + " to " + colour_name(ri.anchor_colour));

    Colouring result;
    for (int i = 0; i < ri.source_vertices; ++i) {
        auto c = (*normaliser)[f[ri.inner[i]]];
        auto it = std::find(ri.source_colours.begin(), ri.source_colours.end(), c);
        if (it == ri.source_colours.end())
            throw Error(ErrorCode::NormalizationFailed, "source vertex " + std::to_string(i) + " gets colour " + colour_name(c) + " outside the source target");
        result.push_back(static_cast<VertexId>(it - ri.source_colours.begin()));
    }
    return result;
}

auto lift_colouring(const ReductionInstance & ri, const EdgeColouring & base) -> Colouring
{
    if (! is_edge_kind(ri.kind))
        throw Error(ErrorCode::InvalidArgument, "edge colourings lift only through ios-t4 and iot-t4 instances");
    UndirectedGraph source(ri.source_vertices, ri.source_edges);
    if (! is_proper_edge_colouring(source, base))
        throw Error(ErrorCode::InvalidArgument, "the base is not a proper 3-edge-colouring");

    const int head = ri.kind == ReductionKind::IosT4 ? 9 : 6;
    SolveOptions options;
    options.mode = ri.mode;
    for (std::size_t e = 0; e < base.size(); ++e) {
        options.fixed[ri.edge_copies[e][0]] = base[e];
        options.fixed[ri.edge_copies[e][head]] = base[e];
    }
    auto result = decide(ri.graph, ri.target, options);
    if (result.status == SolveStatus::Sat)
        return result.witnesses.front();

    // Name a vertex gadget whose pre-coloured squares admit no completion.
    for (std::size_t x = 0; x < ri.vertex_copies.size(); ++x) {
        std::vector<VertexId> members = ri.vertex_copies[x];
        std::sort(members.begin(), members.end());
        auto sub = induced_subgraph(ri.graph, members);
        SolveOptions local;
        local.mode = ri.mode;
        for (const auto & [v, c] : options.fixed)
            if (sub.relabel[v] >= 0)
                local.fixed[sub.relabel[v]] = c;
        if (decide(sub.graph, ri.target, local).status != SolveStatus::Sat)
            throw Error(ErrorCode::TemplateNotFound, "vertex gadget " + std::to_string(x) + " has no completion");
    }
    throw Error(ErrorCode::TemplateNotFound, "the pre-coloured instance has no completion");
}

auto lift_inner_colouring(const ReductionInstance & ri, const Colouring & base) -> Colouring
{
    if (is_edge_kind(ri.kind))
        throw Error(ErrorCode::InvalidArgument, "ios-t4 and iot-t4 instances lift edge colourings");
    auto source_target = ri.source_target();
    OrientedGraph source = induced_subgraph(ri.graph, std::vector<VertexId>(ri.inner.begin(), ri.inner.begin() + ri.source_vertices)).graph;
    if (base.size() != static_cast<std::size_t>(ri.source_vertices) || ! verify_colouring(source, source_target, base, ri.mode).valid)
        throw Error(ErrorCode::InvalidArgument, "the base is not a valid colouring of the source graph");

    SolveOptions options;
    options.mode = ri.mode;
    for (int i = 0; i < ri.source_vertices; ++i)
        options.fixed[ri.inner[i]] = ri.source_colours[base[i]];
    options.fixed[ri.anchor] = ri.anchor_colour;
    if (is_collapse(ri.kind)) {
        // Every target copy is coloured by the identity and every connector by the pivot.
        for (const auto & copies : {ri.target_copies, ri.star_copies})
            for (const auto & ids : copies)
                for (VertexId u = 0; u < static_cast<VertexId>(ids.size()); ++u)
                    options.fixed[ids[u]] = u;
        for (auto x : ri.connectors)
            options.fixed[x] = ri.pivot;
    }
    auto result = decide(ri.graph, ri.target, options);
    if (result.status != SolveStatus::Sat)
        throw Error(ErrorCode::TemplateNotFound, "the pre-coloured instance has no completion");
    return result.witnesses.front();
}

namespace {
    auto join(const std::vector<VertexId> & ids) -> std::string
    {
        std::string out;
        for (std::size_t i = 0; i < ids.size(); ++i)
            out += (i ? "," : "") + std::to_string(ids[i]);
        return out;
    }

    auto split_ids(const std::string & text) -> std::vector<VertexId>
    {
        std::vector<VertexId> ids;
        std::istringstream in(text);
        for (std::string part; std::getline(in, part, ',');)
            if (! part.empty())
                ids.push_back(std::stoi(part));
        return ids;
    }
}

auto serialize_map(const ReductionInstance & ri) -> std::string
{
    std::ostringstream out;
    out << "kind=" << to_string(ri.kind) << "\n";
    out << "mode=" << to_string(ri.mode) << "\n";
    out << "target=" << ri.target.name() << "\n";
    std::vector<VertexId> target_arcs;
    for (const auto & a : ri.target.graph().arcs()) {
        target_arcs.push_back(a.tail);
        target_arcs.push_back(a.head);
    }
    out << "target_vertices=" << ri.target.size() << "\n";
    out << "target_arcs=" << join(target_arcs) << "\n";
    out << "instance_vertices=" << ri.graph.vertex_count() << "\n";
    out << "source_vertices=" << ri.source_vertices << "\n";
    out << "padded_vertices=" << ri.padded_vertices << "\n";
    for (std::size_t e = 0; e < ri.source_edges.size(); ++e)
        out << "source_edge." << e << "=" << ri.source_edges[e].first << "," << ri.source_edges[e].second << "\n";
    out << "vertex_gadgets=" << ri.vertex_copies.size() << "\n";
    for (std::size_t i = 0; i < ri.vertex_copies.size(); ++i)
        out << "vertex_gadget." << i << "=" << join(ri.vertex_copies[i]) << "\n";
    out << "edge_gadgets=" << ri.edge_copies.size() << "\n";
    for (std::size_t i = 0; i < ri.edge_copies.size(); ++i)
        out << "edge_gadget." << i << "=" << join(ri.edge_copies[i]) << "\n";
    for (std::size_t i = 0; i < ri.identifications.size(); ++i) {
        const auto & id = ri.identifications[i];
        out << "identify." << i << "=" << id.source_vertex << ".sq" << id.square << "," << id.edge << "." << id.edge_port << "\n";
    }
    out << "unused_squares=" << ri.unused_squares << "\n";
    for (std::size_t i = 0; i < ri.target_copies.size(); ++i)
        out << "target_copy." << i << "=" << join(ri.target_copies[i]) << "\n";
    for (std::size_t i = 0; i < ri.star_copies.size(); ++i)
        out << "star_copy." << i << "=" << join(ri.star_copies[i]) << "\n";
    if (! ri.connectors.empty())
        out << "connectors=" << join(ri.connectors) << "\n";
    if (ri.pivot >= 0) {
        out << "pivot=" << ri.pivot << "\n";
        out << "direction=" << (ri.direction == Direction::Out ? "out" : "in") << "\n";
    }
    if (! ri.inner.empty())
        out << "inner=" << join(ri.inner) << "\n";
    if (! ri.source_colours.empty())
        out << "source_colours=" << join(ri.source_colours) << "\n";
    if (ri.anchor >= 0)
        out << "anchor=" << ri.anchor << "," << ri.anchor_colour << "\n";
    return out.str();
}

auto parse_map(const std::string & text, const OrientedGraph & graph) -> ReductionInstance
{
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::MalformedLine, "map line " + std::to_string(number) + ": expected key=value");
        values[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto get = [&](const std::string & key) -> const std::string & {
        auto it = values.find(key);
        if (it == values.end())
            throw Error(ErrorCode::MalformedLine, "map is missing '" + key + "'");
        return it->second;
    };
    auto has = [&](const std::string & key) { return values.contains(key); };

    ReductionInstance ri;
    try {
        ri.kind = parse_reduction_kind(get("kind"));
        ri.mode = parse_mode(get("mode"));
        auto target_arcs = split_ids(get("target_arcs"));
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i + 1 < target_arcs.size(); i += 2)
            arcs.push_back({target_arcs[i], target_arcs[i + 1]});
        ri.target = Target(OrientedGraph(std::stoi(get("target_vertices")), arcs), get("target"));
        if (std::stoi(get("instance_vertices")) != graph.vertex_count())
            throw Error(ErrorCode::MalformedLine, "map describes " + get("instance_vertices") + " vertices but the instance has " + std::to_string(graph.vertex_count()));
        ri.graph = graph;
        ri.source_vertices = std::stoi(get("source_vertices"));
        ri.padded_vertices = std::stoi(get("padded_vertices"));
        for (std::size_t e = 0; has("source_edge." + std::to_string(e)); ++e) {
            auto ends = split_ids(get("source_edge." + std::to_string(e)));
            ri.source_edges.emplace_back(ends.at(0), ends.at(1));
        }
        for (int i = 0; i < std::stoi(get("vertex_gadgets")); ++i)
            ri.vertex_copies.push_back(split_ids(get("vertex_gadget." + std::to_string(i))));
        for (int i = 0; i < std::stoi(get("edge_gadgets")); ++i)
            ri.edge_copies.push_back(split_ids(get("edge_gadget." + std::to_string(i))));
        for (std::size_t i = 0; has("identify." + std::to_string(i)); ++i) {
            const auto & value = get("identify." + std::to_string(i));
            PortIdentification id{};
            auto comma = value.find(',');
            auto sq = value.find(".sq");
            auto dot = value.find('.', comma);
            id.source_vertex = std::stoi(value.substr(0, sq));
            id.square = std::stoi(value.substr(sq + 3, comma - sq - 3));
            id.edge = std::stoi(value.substr(comma + 1, dot - comma - 1));
            id.edge_port = value.substr(dot + 1);
            ri.identifications.push_back(id);
        }
        ri.unused_squares = std::stoi(get("unused_squares"));
        for (std::size_t i = 0; has("target_copy." + std::to_string(i)); ++i)
            ri.target_copies.push_back(split_ids(get("target_copy." + std::to_string(i))));
        for (std::size_t i = 0; has("star_copy." + std::to_string(i)); ++i)
            ri.star_copies.push_back(split_ids(get("star_copy." + std::to_string(i))));
        if (has("connectors"))
            ri.connectors = split_ids(get("connectors"));
        if (has("pivot")) {
            ri.pivot = std::stoi(get("pivot"));
            ri.direction = get("direction") == "in" ? Direction::In : Direction::Out;
        }
        if (has("inner"))
            ri.inner = split_ids(get("inner"));
        if (has("source_colours"))
            ri.source_colours = split_ids(get("source_colours"));
        if (has("anchor")) {
            auto anchor = split_ids(get("anchor"));
            ri.anchor = anchor.at(0);
            ri.anchor_colour = anchor.at(1);
        }
    }
    catch (const std::logic_error & e) {
        throw Error(ErrorCode::MalformedLine, std::string("map value: ") + e.what());
    }
    return ri;
}

}
