#pragma once

#include <injhom/error.hpp>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace injhom {

/// Dense 0-based vertex index, valid for exactly one graph.
using VertexId = int;

struct Arc {
    VertexId tail;
    VertexId head;

    auto operator<=>(const Arc &) const = default;
};

enum class Direction { In, Out, Both };

/// Which neighbourhoods a locally-injective homomorphism must be injective on.
/// InOnly: N-(v). IosSeparate: N-(v) and N+(v) independently. IotTogether: N-(v) u N+(v).
enum class InjectivityMode { InOnly, IosSeparate, IotTogether };

auto to_string(InjectivityMode mode) -> std::string;
auto parse_mode(const std::string & text) -> InjectivityMode;

/// A directed graph with no digons. Loops are allowed, and a loop at v puts v in both
/// N-(v) and N+(v). Immutable once constructed.
class OrientedGraph {
public:
    OrientedGraph() = default;

    /// Throws VertexOutOfRange, DuplicateArc or DigonViolation.
    OrientedGraph(int vertex_count, std::vector<Arc> arcs);

    /// As above, but repeated arcs are merged instead of rejected.
    static auto collapsing_duplicates(int vertex_count, std::vector<Arc> arcs) -> OrientedGraph;

    auto vertex_count() const noexcept -> int { return _n; }
    auto arc_count() const noexcept -> std::size_t { return _arcs.size(); }

    /// Sorted by (tail, head).
    auto arcs() const noexcept -> const std::vector<Arc> & { return _arcs; }

    /// Members of N+(v), ascending; contains v iff v has a loop.
    auto out_neighbours(VertexId v) const -> std::span<const VertexId>;
    auto in_neighbours(VertexId v) const -> std::span<const VertexId>;

    auto has_arc(VertexId u, VertexId v) const -> bool;
    auto has_loop(VertexId v) const -> bool { return has_arc(v, v); }
    auto loop_count() const -> int;

    auto reversed() const -> OrientedGraph;

    auto operator==(const OrientedGraph & other) const -> bool
    {
        return _n == other._n && _arcs == other._arcs;
    }

private:
    void build_adjacency();
    void check_vertex(VertexId v) const;

    int _n = 0;
    std::vector<Arc> _arcs;
    std::vector<std::vector<VertexId>> _out, _in;
};

/// Neighbourhood members, ascending and duplicate-free.
auto neighbourhood(const OrientedGraph & g, VertexId v, Direction direction) -> std::vector<VertexId>;

/// The neighbourhoods on which `mode` demands injectivity, for vertex v.
auto injective_neighbourhoods(const OrientedGraph & g, VertexId v, InjectivityMode mode)
    -> std::vector<std::vector<VertexId>>;

/// A graph file: the graph plus optional named ports (gadget files).
struct GraphDocument {
    OrientedGraph graph;
    std::map<std::string, VertexId> ports;
};

auto parse_document(const std::string & text) -> GraphDocument;
auto serialize_document(const GraphDocument & doc) -> std::string;

auto parse_graph(const std::string & text) -> OrientedGraph;
auto serialize_graph(const OrientedGraph & g) -> std::string;

auto read_text_file(const std::string & path) -> std::string;
void write_text_file(const std::string & path, const std::string & text);

struct UnionResult {
    OrientedGraph graph;
    std::vector<VertexId> offsets;
};

auto disjoint_union(std::span<const OrientedGraph> graphs) -> UnionResult;

/// Vertex-relabelled result of a surgery step: `relabel[old]` is the new id (or -1 if removed).
struct RelabelledGraph {
    OrientedGraph graph;
    std::vector<VertexId> relabel;
};

/// Merges each `second` into its `first`. Pairs must form a forest; surviving vertices keep
/// their relative order. Duplicate arcs collapse, digons throw.
auto identify_vertices(const OrientedGraph & g, std::span<const std::pair<VertexId, VertexId>> pairs)
    -> RelabelledGraph;

/// `subset` order is irrelevant; vertices are renumbered in ascending old-id order.
auto induced_subgraph(const OrientedGraph & g, std::span<const VertexId> subset) -> RelabelledGraph;

auto is_strongly_connected(const OrientedGraph & g) -> bool;

/// Small graph constructors used by tests, examples and the CLI.
auto directed_cycle(int n) -> OrientedGraph;
auto out_star(int leaves) -> OrientedGraph;
auto in_star(int leaves) -> OrientedGraph;
auto directed_path(int n) -> OrientedGraph;

}
