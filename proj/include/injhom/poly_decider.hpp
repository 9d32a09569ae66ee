#pragma once

#include <injhom/solver.hpp>

#include <optional>
#include <set>
#include <vector>

namespace injhom {

/// Literal encoding: variable x as 2x (positive) or 2x + 1 (negated).
struct Literal {
    int variable;
    bool negated = false;

    auto code() const noexcept -> int { return 2 * variable + (negated ? 1 : 0); }
    auto operator!() const noexcept -> Literal { return {variable, ! negated}; }
    auto operator<=>(const Literal &) const = default;
};

struct TwoSatInstance {
    int variable_count = 0;
    std::vector<std::pair<Literal, Literal>> clauses;

    /// Adds (x or y) unless an equal clause is already present. Throws InvalidArgument.
    void add_clause(Literal x, Literal y);

private:
    std::set<std::pair<int, int>> _seen;
};

/// Implication-graph SCC method. The returned assignment sets a variable true iff its
/// component comes later in topological order than its negation's.
auto twosat_solve(const TwoSatInstance & instance) -> std::optional<std::vector<bool>>;

struct SmallTargetResult {
    bool sat = false;
    Colouring witness;
    std::size_t clause_count = 0;
};

/// Polynomial decider for reflexive tournaments on one or two vertices. Throws TargetTooLarge.
auto decide_small_target(const OrientedGraph & g, const Target & t, InjectivityMode mode) -> SmallTargetResult;

}
