#pragma once

#include <injhom/digraph.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace injhom {

/// Colour sets over a target are bitmasks; bit c stands for target vertex c.
using ColourSet = std::uint64_t;

inline constexpr int max_target_vertices = 64;
inline constexpr int max_canonical_vertices = 8;
inline constexpr int max_enumeration_vertices = 7;

using Permutation = std::vector<VertexId>;

/// A colour space: usually a reflexive tournament, but any oriented graph on at most 64
/// vertices is accepted. Automorphisms are computed once, up to eight vertices.
class Target {
public:
    Target() = default;
    explicit Target(OrientedGraph graph, std::string name = "");

    auto graph() const noexcept -> const OrientedGraph & { return _graph; }
    auto name() const noexcept -> const std::string & { return _name; }
    auto size() const noexcept -> int { return _graph.vertex_count(); }

    auto is_reflexive() const noexcept -> bool { return _reflexive; }
    auto is_tournament() const noexcept -> bool { return _tournament; }
    auto is_reflexive_tournament() const noexcept -> bool { return _reflexive && _tournament; }

    /// N+(c) and N-(c) as colour sets, loops included.
    auto out_set(VertexId c) const -> ColourSet { return _out[c]; }
    auto in_set(VertexId c) const -> ColourSet { return _in[c]; }
    auto all_colours() const noexcept -> ColourSet { return _all; }

    /// Throws BoundExceeded above eight vertices.
    auto automorphisms() const -> const std::vector<Permutation> &;

private:
    OrientedGraph _graph;
    std::string _name;
    bool _reflexive = false, _tournament = false;
    std::vector<ColourSet> _out, _in;
    ColourSet _all = 0;
    std::vector<Permutation> _automorphisms;
};

/// Colour letters: a..z for the first 26 vertices, decimal beyond.
auto colour_name(VertexId c) -> std::string;
/// Inverse of colour_name; throws InvalidArgument.
auto parse_colour(const std::string & text) -> VertexId;

enum class NamedTarget { C3, TT3, TT, T4, T5 };

/// C3, TT3, TT<n>, T4 and T5 with a..e mapped to 0..4.
auto named_target(NamedTarget which, int n = 0) -> Target;
/// Accepts "C3", "TT3", "TT<n>", "T4", "T5"; throws InvalidArgument otherwise.
auto named_target(const std::string & name) -> Target;
auto is_target_name(const std::string & name) -> bool;

auto reflexive_transitive_tournament(int n) -> Target;

/// Lexicographically least adjacency bit-string over all vertex orders. Two targets get the
/// same key iff they are isomorphic. Throws BoundExceeded above eight vertices.
auto canonical_form(const OrientedGraph & g) -> std::string;
auto canonical_form(const Target & t) -> std::string;

/// A vertex order realising the canonical key: `order[i]` is the vertex placed at position i.
auto canonical_order(const OrientedGraph & g) -> Permutation;

/// All arc-preserving bijections by pruned brute force. Throws BoundExceeded above eight vertices.
auto compute_automorphisms(const OrientedGraph & g) -> std::vector<Permutation>;

auto is_vertex_transitive(const Target & t) -> bool;

struct DegreeProfile {
    std::vector<int> in_degree, out_degree;
    int max_in = 0, max_out = 0;
    /// Vertices with in- or out-degree at least four, ascending.
    std::vector<VertexId> high_degree;
};

/// Degrees count the loop.
auto degree_profile(const Target & t) -> DegreeProfile;

/// Every reflexive tournament on n vertices up to isomorphism, sorted by canonical key.
/// Orientations are split across OpenMP threads; the result does not depend on the thread count.
auto enumerate_reflexive_tournaments(int n) -> std::vector<Target>;

/// Single-threaded reference for enumerate_reflexive_tournaments.
auto enumerate_reflexive_tournaments_serial(int n) -> std::vector<Target>;

/// The reflexive tournament on n vertices whose strict arcs are given by `mask` over pairs
/// (i < j) in lexicographic order: bit set means i -> j.
auto tournament_from_mask(int n, std::uint64_t mask) -> OrientedGraph;

/// Text form used by the catalog: "# target <name>" header followed by the edge list.
auto serialize_target(const Target & t) -> std::string;

}
