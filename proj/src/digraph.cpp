#include <injhom/digraph.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace injhom {

auto to_string(ErrorCode code) -> std::string_view
{
    switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DigonViolation: return "DigonViolation";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::SelfMergeCycle: return "SelfMergeCycle";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::PartialColouring: return "PartialColouring";
    case ErrorCode::InvalidFixedAssignment: return "InvalidFixedAssignment";
    case ErrorCode::TargetTooLarge: return "TargetTooLarge";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::GadgetMissing: return "GadgetMissing";
    case ErrorCode::SquareExhausted: return "SquareExhausted";
    case ErrorCode::PortColourMismatch: return "PortColourMismatch";
    case ErrorCode::NormalizationFailed: return "NormalizationFailed";
    case ErrorCode::TemplateNotFound: return "TemplateNotFound";
    case ErrorCode::AssetMissing: return "AssetMissing";
    case ErrorCode::ContractMalformed: return "ContractMalformed";
    case ErrorCode::UnknownPort: return "UnknownPort";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

auto to_string(InjectivityMode mode) -> std::string
{
    switch (mode) {
    case InjectivityMode::InOnly: return "in";
    case InjectivityMode::IosSeparate: return "ios";
    case InjectivityMode::IotTogether: return "iot";
    }
    return "?";
}

auto parse_mode(const std::string & text) -> InjectivityMode
{
    if (text == "in")
        return InjectivityMode::InOnly;
    if (text == "ios")
        return InjectivityMode::IosSeparate;
    if (text == "iot")
        return InjectivityMode::IotTogether;
    throw Error(ErrorCode::InvalidArgument, "unknown mode '" + text + "' (expected in, ios or iot)");
}

namespace {
    auto arc_text(const Arc & a) -> std::string
    {
        return std::to_string(a.tail) + "->" + std::to_string(a.head);
    }

    void validate(int n, const std::vector<Arc> & sorted_arcs)
    {
        for (std::size_t i = 0; i < sorted_arcs.size(); ++i) {
            const auto & a = sorted_arcs[i];
            if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
                throw Error(ErrorCode::VertexOutOfRange, "arc " + arc_text(a) + " in a graph on " + std::to_string(n) + " vertices");
            if (i > 0 && sorted_arcs[i - 1] == a)
                throw Error(ErrorCode::DuplicateArc, "arc " + arc_text(a) + " listed twice");
        }
        for (const auto & a : sorted_arcs)
            if (a.tail < a.head && std::binary_search(sorted_arcs.begin(), sorted_arcs.end(), Arc{a.head, a.tail}))
                throw Error(ErrorCode::DigonViolation, "both " + arc_text(a) + " and " + arc_text({a.head, a.tail}));
    }
}

OrientedGraph::OrientedGraph(int vertex_count, std::vector<Arc> arcs) :
    _n(vertex_count),
    _arcs(std::move(arcs))
{
    if (_n < 0)
        throw Error(ErrorCode::InvalidArgument, "negative vertex count");
    std::sort(_arcs.begin(), _arcs.end());
    validate(_n, _arcs);
    build_adjacency();
}

auto OrientedGraph::collapsing_duplicates(int vertex_count, std::vector<Arc> arcs) -> OrientedGraph
{
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return OrientedGraph(vertex_count, std::move(arcs));
}

void OrientedGraph::build_adjacency()
{
    _out.assign(_n, {});
    _in.assign(_n, {});
    for (const auto & a : _arcs) {
        _out[a.tail].push_back(a.head);
        _in[a.head].push_back(a.tail);
    }
    for (auto & row : _in)
        std::sort(row.begin(), row.end());
}

void OrientedGraph::check_vertex(VertexId v) const
{
    if (v < 0 || v >= _n)
        throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " in a graph on " + std::to_string(_n) + " vertices");
}

auto OrientedGraph::out_neighbours(VertexId v) const -> std::span<const VertexId>
{
    check_vertex(v);
    return _out[v];
}

auto OrientedGraph::in_neighbours(VertexId v) const -> std::span<const VertexId>
{
    check_vertex(v);
    return _in[v];
}

auto OrientedGraph::has_arc(VertexId u, VertexId v) const -> bool
{
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(_out[u].begin(), _out[u].end(), v);
}

auto OrientedGraph::loop_count() const -> int
{
    return static_cast<int>(std::count_if(_arcs.begin(), _arcs.end(), [](const Arc & a) { return a.tail == a.head; }));
}

auto OrientedGraph::reversed() const -> OrientedGraph
{
    std::vector<Arc> arcs;
    arcs.reserve(_arcs.size());
    for (const auto & a : _arcs)
        arcs.push_back({a.head, a.tail});
    return OrientedGraph(_n, std::move(arcs));
}

auto neighbourhood(const OrientedGraph & g, VertexId v, Direction direction) -> std::vector<VertexId>
{
    switch (direction) {
    case Direction::In: {
        auto span = g.in_neighbours(v);
        return {span.begin(), span.end()};
    }
    case Direction::Out: {
        auto span = g.out_neighbours(v);
        return {span.begin(), span.end()};
    }
    case Direction::Both: {
        auto ins = g.in_neighbours(v);
        auto outs = g.out_neighbours(v);
        std::vector<VertexId> result;
        std::set_union(ins.begin(), ins.end(), outs.begin(), outs.end(), std::back_inserter(result));
        return result;
    }
    }
    return {};
}

auto injective_neighbourhoods(const OrientedGraph & g, VertexId v, InjectivityMode mode)
    -> std::vector<std::vector<VertexId>>
{
    switch (mode) {
    case InjectivityMode::InOnly:
        return {neighbourhood(g, v, Direction::In)};
    case InjectivityMode::IosSeparate:
        return {neighbourhood(g, v, Direction::In), neighbourhood(g, v, Direction::Out)};
    case InjectivityMode::IotTogether:
        return {neighbourhood(g, v, Direction::Both)};
    }
    return {};
}

namespace {
    auto parse_int(const std::string & token, int line_no) -> int
    {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size() || token.empty())
            throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": expected an integer, got '" + token + "'");
        return value;
    }
}

auto parse_document(const std::string & text) -> GraphDocument
{
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<Arc> arcs;
    std::map<std::string, VertexId> ports;

    while (std::getline(in, line)) {
        ++line_no;
        if (! line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;

        std::istringstream tokens(line);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;)
            words.push_back(w);

        auto malformed = [&](const std::string & why) {
            return Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + why);
        };

        if (n < 0) {
            if (words.size() != 2 || words[0] != "n")
                throw malformed("expected 'n <count>' as the first data line");
            n = parse_int(words[1], line_no);
            if (n < 0)
                throw malformed("negative vertex count");
            continue;
        }

        if (words[0] == "a") {
            if (words.size() != 3)
                throw malformed("expected 'a <u> <v>'");
            arcs.push_back({parse_int(words[1], line_no), parse_int(words[2], line_no)});
        }
        else if (words[0] == "port") {
            if (words.size() != 3)
                throw malformed("expected 'port <name> <v>'");
            auto v = parse_int(words[2], line_no);
            if (v < 0 || v >= n)
                throw Error(ErrorCode::VertexOutOfRange, "line " + std::to_string(line_no) + ": port vertex " + words[2]);
            if (! ports.emplace(words[1], v).second)
                throw malformed("port '" + words[1] + "' declared twice");
        }
        else
            throw malformed("unknown record '" + words[0] + "'");
    }

    if (n < 0)
        throw Error(ErrorCode::MalformedLine, "missing 'n <count>' header");

    return GraphDocument{OrientedGraph(n, std::move(arcs)), std::move(ports)};
}

auto serialize_document(const GraphDocument & doc) -> std::string
{
    std::string out = "n " + std::to_string(doc.graph.vertex_count());
    for (const auto & a : doc.graph.arcs())
        out += "\na " + std::to_string(a.tail) + " " + std::to_string(a.head);
    for (const auto & [name, v] : doc.ports)
        out += "\nport " + name + " " + std::to_string(v);
    return out;
}

auto parse_graph(const std::string & text) -> OrientedGraph
{
    return parse_document(text).graph;
}

auto serialize_graph(const OrientedGraph & g) -> std::string
{
    return serialize_document(GraphDocument{g, {}});
}

auto read_text_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorCode::AssetMissing, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
    if (! text.empty() && text.back() != '\n')
        out << '\n';
}

auto disjoint_union(std::span<const OrientedGraph> graphs) -> UnionResult
{
    UnionResult result;
    int total = 0;
    std::vector<Arc> arcs;
    for (const auto & g : graphs) {
        result.offsets.push_back(total);
        for (const auto & a : g.arcs())
            arcs.push_back({a.tail + total, a.head + total});
        total += g.vertex_count();
    }
    result.graph = OrientedGraph(total, std::move(arcs));
    return result;
}

auto identify_vertices(const OrientedGraph & g, std::span<const std::pair<VertexId, VertexId>> pairs)
    -> RelabelledGraph
{
    const int n = g.vertex_count();
    std::vector<VertexId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };

    std::vector<bool> merged_away(n, false);
    for (const auto & [keep, merge] : pairs) {
        for (auto v : {keep, merge})
            if (v < 0 || v >= n)
                throw Error(ErrorCode::VertexOutOfRange, "identification of vertex " + std::to_string(v));
        auto rk = find(keep), rm = find(merge);
        if (rk == rm)
            throw Error(ErrorCode::SelfMergeCycle, "identifying " + std::to_string(keep) + " with " + std::to_string(merge) + " closes a cycle of merges");
        parent[rm] = rk;
        merged_away[merge] = true;
    }

    // Each class survives as its smallest vertex that was never merged away, or its
    // smallest member if every member was.
    std::vector<VertexId> representative(n, -1);
    for (VertexId v = 0; v < n; ++v) {
        auto r = find(v);
        if (! merged_away[v] && representative[r] == -1)
            representative[r] = v;
    }
    for (VertexId v = 0; v < n; ++v) {
        auto r = find(v);
        if (representative[r] == -1)
            representative[r] = v;
    }

    std::vector<VertexId> new_id(n, -1);
    int next = 0;
    for (VertexId v = 0; v < n; ++v)
        if (representative[find(v)] == v)
            new_id[v] = next++;

    RelabelledGraph result;
    result.relabel.resize(n);
    for (VertexId v = 0; v < n; ++v)
        result.relabel[v] = new_id[representative[find(v)]];

    std::vector<Arc> arcs;
    arcs.reserve(g.arc_count());
    for (const auto & a : g.arcs())
        arcs.push_back({result.relabel[a.tail], result.relabel[a.head]});
    result.graph = OrientedGraph::collapsing_duplicates(next, std::move(arcs));
    return result;
}

auto induced_subgraph(const OrientedGraph & g, std::span<const VertexId> subset) -> RelabelledGraph
{
    const int n = g.vertex_count();
    std::vector<bool> keep(n, false);
    for (auto v : subset) {
        if (v < 0 || v >= n)
            throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " in induced subgraph");
        keep[v] = true;
    }

    RelabelledGraph result;
    result.relabel.assign(n, -1);
    int next = 0;
    for (VertexId v = 0; v < n; ++v)
        if (keep[v])
            result.relabel[v] = next++;

    std::vector<Arc> arcs;
    for (const auto & a : g.arcs())
        if (keep[a.tail] && keep[a.head])
            arcs.push_back({result.relabel[a.tail], result.relabel[a.head]});
    result.graph = OrientedGraph(next, std::move(arcs));
    return result;
}

auto is_strongly_connected(const OrientedGraph & g) -> bool
{
    const int n = g.vertex_count();
    if (n <= 1)
        return true;

    auto reaches_all = [&](bool forwards) {
        std::vector<bool> seen(n, false);
        std::vector<VertexId> stack{0};
        seen[0] = true;
        int count = 1;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : forwards ? g.out_neighbours(v) : g.in_neighbours(v))
                if (! seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == n;
    };

    return reaches_all(true) && reaches_all(false);
}

auto directed_cycle(int n) -> OrientedGraph
{
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        arcs.push_back({i, (i + 1) % n});
    return OrientedGraph::collapsing_duplicates(n, std::move(arcs));
}

auto out_star(int leaves) -> OrientedGraph
{
    std::vector<Arc> arcs;
    for (int i = 1; i <= leaves; ++i)
        arcs.push_back({0, i});
    return OrientedGraph(leaves + 1, std::move(arcs));
}

auto in_star(int leaves) -> OrientedGraph
{
    std::vector<Arc> arcs;
    for (int i = 1; i <= leaves; ++i)
        arcs.push_back({i, 0});
    return OrientedGraph(leaves + 1, std::move(arcs));
}

auto directed_path(int n) -> OrientedGraph
{
    std::vector<Arc> arcs;
    for (int i = 0; i + 1 < n; ++i)
        arcs.push_back({i, i + 1});
    return OrientedGraph(n, std::move(arcs));
}

}
