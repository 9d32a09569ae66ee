#pragma once

#include <injhom/gadget_lab.hpp>
#include <injhom/solver.hpp>

#include <optional>
#include <string>
#include <vector>

namespace injhom {

/// Simple undirected graph; edges are stored as (min, max), sorted.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    /// Throws VertexOutOfRange, MalformedLine (loop) or DuplicateArc.
    UndirectedGraph(int vertex_count, std::vector<std::pair<VertexId, VertexId>> edges);

    auto vertex_count() const noexcept -> int { return _n; }
    auto edges() const noexcept -> const std::vector<std::pair<VertexId, VertexId>> & { return _edges; }
    auto degree(VertexId v) const -> int;
    auto max_degree() const -> int;

private:
    int _n = 0;
    std::vector<std::pair<VertexId, VertexId>> _edges;
};

/// "n <count>" then "e <u> <v>" lines; '#' comments.
auto parse_undirected(const std::string & text) -> UndirectedGraph;
auto serialize_undirected(const UndirectedGraph & g) -> std::string;

auto complete_graph(int n) -> UndirectedGraph;
auto cycle_graph(int n) -> UndirectedGraph;
auto petersen_graph() -> UndirectedGraph;

/// Every simple graph on n vertices with maximum degree at most three, one per isomorphism class.
auto subcubic_graphs(int n) -> std::vector<UndirectedGraph>;

/// Colour of each edge, aligned with g.edges(), as target ids 1..3 (b, c, d).
using EdgeColouring = std::vector<VertexId>;

auto orient_edges(const UndirectedGraph & g) -> OrientedGraph;

/// Exhaustive backtracking over edges in order, colours b, c, d ascending. Throws DegreeTooHigh.
auto three_edge_colouring_oracle(const UndirectedGraph & g) -> std::optional<EdgeColouring>;

auto is_proper_edge_colouring(const UndirectedGraph & g, const EdgeColouring & colouring) -> bool;

enum class ReductionKind { IosT4, IotT4, IosT5, IotT5, CollapseIos, CollapseIot };

auto to_string(ReductionKind kind) -> std::string;
auto parse_reduction_kind(const std::string & text) -> ReductionKind;

struct PortIdentification {
    int source_vertex;
    int square;
    int edge;
    std::string edge_port;
};

/// A reduction's output graph plus what is needed to map colourings in both directions.
struct ReductionInstance {
    ReductionKind kind = ReductionKind::IosT4;
    OrientedGraph graph;
    /// Colour space of the instance.
    Target target;
    InjectivityMode mode = InjectivityMode::IosSeparate;

    int source_vertices = 0;
    /// Source vertices after padding with isolated dummies (ring constructions).
    int padded_vertices = 0;
    std::vector<std::pair<VertexId, VertexId>> source_edges;

    /// Final id of every label of each gadget copy: per source vertex (H_x, F_x) or per ring
    /// slot (J_v, D_v), and per source edge (H_e, F_e).
    std::vector<std::vector<VertexId>> vertex_copies;
    std::vector<std::vector<VertexId>> edge_copies;
    std::vector<PortIdentification> identifications;
    int unused_squares = 0;

    /// Collapse: copies of the target, of the target without the pivot's strict out-arcs
    /// (iot only), and the connector vertices x_i (ios only).
    std::vector<std::vector<VertexId>> target_copies;
    std::vector<std::vector<VertexId>> star_copies;
    std::vector<VertexId> connectors;
    VertexId pivot = -1;
    Direction direction = Direction::Out;

    /// Image of each padded source vertex.
    std::vector<VertexId> inner;
    /// source_colours[c] is the instance colour standing for colour c of the source target.
    std::vector<VertexId> source_colours;
    /// Colourings are normalised so that `anchor` gets `anchor_colour`.
    VertexId anchor = -1;
    VertexId anchor_colour = -1;

    /// The source problem's target (C3, or the collapsed target). Empty for edge-colouring kinds.
    auto source_target() const -> Target;
};

auto build_ios_t4(const UndirectedGraph & g, const std::string & asset_dir = default_asset_dir()) -> ReductionInstance;
auto build_iot_t4(const UndirectedGraph & g, const std::string & asset_dir = default_asset_dir()) -> ReductionInstance;
auto build_ios_t5(const OrientedGraph & g, const std::string & asset_dir = default_asset_dir()) -> ReductionInstance;
auto build_iot_t5(const OrientedGraph & g, const std::string & asset_dir = default_asset_dir()) -> ReductionInstance;

/// Reflexive sub-tournament on the strict out- (or in-) neighbourhood of v, vertices in
/// ascending order. Throws DegreeTooLow when that degree, loop included, is below four.
auto collapse_target(const Target & t, VertexId v, Direction direction) -> Target;
/// The vertices of t kept by collapse_target, ascending.
auto collapse_members(const Target & t, VertexId v, Direction direction) -> std::vector<VertexId>;

auto build_ios_collapse(const OrientedGraph & g, const Target & t, VertexId v, Direction direction) -> ReductionInstance;
/// The in-direction instance is the arc-reversal of the out-direction instance built from the
/// reversed graph and reversed target.
auto build_iot_collapse(const OrientedGraph & g, const Target & t, VertexId v, Direction direction) -> ReductionInstance;

/// Common colour of each edge gadget's two ports. Throws PortColourMismatch, InvalidArgument.
auto extract_edge_colouring(const ReductionInstance & ri, const Colouring & f) -> EdgeColouring;

/// Colouring of the (unpadded) source graph over source_target(). Throws NormalizationFailed.
auto extract_inner_colouring(const ReductionInstance & ri, const Colouring & f) -> Colouring;

/// A full valid colouring of the instance extending the base solution. Throws
/// InvalidArgument when the base is not a solution, TemplateNotFound when no completion exists.
auto lift_colouring(const ReductionInstance & ri, const EdgeColouring & base) -> Colouring;
auto lift_inner_colouring(const ReductionInstance & ri, const Colouring & base) -> Colouring;

/// Deterministic key=value bookkeeping lines.
auto serialize_map(const ReductionInstance & ri) -> std::string;
/// Rebuilds the bookkeeping from a sidecar and the instance graph. Throws MalformedLine.
auto parse_map(const std::string & text, const OrientedGraph & graph) -> ReductionInstance;

}
