#pragma once

// Reference implementations that share no code with the solver, used to cross-check it.

#include <injhom/digraph.hpp>
#include <injhom/tournament.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace injhom::check {

/// Tests arc preservation and injectivity directly on the arc list.
auto naive_is_valid(const OrientedGraph & g, const OrientedGraph & t, const std::vector<VertexId> & f, InjectivityMode mode) -> bool;

/// Every valid total map, in lexicographic order, by trying all |V(t)|^|V(g)| maps.
auto naive_colourings(const OrientedGraph & g, const OrientedGraph & t, InjectivityMode mode) -> std::vector<std::vector<VertexId>>;

/// Every labelled oriented graph on n vertices, loops included (3^(n(n-1)/2) * 2^n graphs).
auto all_oriented_graphs(int n) -> std::vector<OrientedGraph>;

/// Each unordered pair gets an arc with probability `density`, in a random direction.
auto random_oriented_graph(int n, double density, double loop_probability, std::mt19937_64 & rng) -> OrientedGraph;

}
