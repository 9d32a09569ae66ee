#pragma once

#include <injhom/digraph.hpp>
#include <injhom/tournament.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace injhom {

inline constexpr VertexId unassigned = -1;

/// colouring[v] is the target vertex of instance vertex v, or `unassigned`.
using Colouring = std::vector<VertexId>;

/// Pre-assigned instance vertices.
using PartialColouring = std::map<VertexId, VertexId>;

struct Violation {
    enum class Kind { ArcNotPreserved, InjectivityClash };
    Kind kind;
    /// ArcNotPreserved: the instance arc first -> second. InjectivityClash: two members of
    /// a neighbourhood of `centre` with the same colour.
    VertexId first = -1, second = -1, centre = -1;
    Direction neighbourhood = Direction::In;

    auto describe() const -> std::string;
};

struct VerifyResult {
    bool valid = true;
    std::optional<Violation> violation;
};

/// Throws PartialColouring if f is not total on V(g).
auto verify_colouring(const OrientedGraph & g, const Target & t, const Colouring & f, InjectivityMode mode) -> VerifyResult;

struct SolveOptions {
    InjectivityMode mode = InjectivityMode::IosSeparate;
    PartialColouring fixed;
    std::optional<std::uint64_t> limit;
    std::optional<std::uint64_t> node_budget;
    bool modulo_automorphisms = false;
    /// Top-level branches are searched concurrently when greater than one. Results are
    /// merged into the same order as a single-worker run.
    int workers = 1;
};

enum class SolveStatus { Sat, Unsat, BudgetExhausted };

auto to_string(SolveStatus status) -> std::string;

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    std::uint64_t backjumps = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::vector<Colouring> witnesses;
    /// enumerate: witness count. enumerate_mod_aut: orbit count, with `orbit_sizes` aligned
    /// to `witnesses`. enumerate_projected: number of distinct projections.
    std::uint64_t count = 0;
    std::vector<std::uint64_t> orbit_sizes;
    /// True when the search ended early because `limit` witnesses were found.
    bool truncated = false;
    SearchStats stats;
};

/// Backtracking with forward checking and conflict-directed backjumping. Smallest domain
/// first, ties by vertex id; values ascending. Throws InvalidFixedAssignment.
auto decide(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> SolveResult;

/// Every valid colouring extending options.fixed, sorted lexicographically. With a limit, the
/// first `limit` found by the search are returned, sorted.
auto enumerate(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> SolveResult;

/// One representative (the lexicographically least member) per orbit of the witness set
/// under post-composition with Aut(t).
auto enumerate_mod_aut(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> SolveResult;

/// Every distinct restriction of a valid colouring to `projection`. Witness colourings are
/// `unassigned` outside the projection; each comes from a full valid colouring.
auto enumerate_projected(const OrientedGraph & g, const Target & t, const SolveOptions & options,
    const std::vector<VertexId> & projection) -> SolveResult;

/// Largest mode-relevant neighbourhood sizes in t versus g; Unsat when g needs more.
auto pigeonhole_screen(const OrientedGraph & g, const Target & t, InjectivityMode mode) -> bool;

/// Applies the target permutation to every colour.
auto compose(const Permutation & automorphism, const Colouring & f) -> Colouring;

/// "0=a 1=b ...", vertices ascending.
auto format_witness(const Colouring & f) -> std::string;

}
