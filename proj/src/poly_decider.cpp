#include <injhom/poly_decider.hpp>

#include <algorithm>
#include <set>

namespace injhom {

void TwoSatInstance::add_clause(Literal x, Literal y)
{
    if (x.variable < 0 || x.variable >= variable_count || y.variable < 0 || y.variable >= variable_count)
        throw Error(ErrorCode::InvalidArgument, "literal references an unknown variable");
    if (y < x)
        std::swap(x, y);
    if (_seen.emplace(x.code(), y.code()).second)
        clauses.emplace_back(x, y);
}

auto twosat_solve(const TwoSatInstance & instance) -> std::optional<std::vector<bool>>
{
    const int nodes = 2 * instance.variable_count;
    std::vector<std::vector<int>> implies(nodes);
    for (const auto & [x, y] : instance.clauses) {
        implies[(! x).code()].push_back(y.code());
        implies[(! y).code()].push_back(x.code());
    }

    // Tarjan, iterative. Components are numbered in reverse topological order.
    std::vector<int> index(nodes, -1), low(nodes, 0), component(nodes, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(nodes, false);
    int next_index = 0, next_component = 0;
    std::vector<std::pair<int, std::size_t>> frames;

    // Negative literals are visited first so that unconstrained variables come out false.
    for (int start = 0; start < nodes; ++start) {
        int root = start ^ 1;
        if (index[root] != -1)
            continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (! frames.empty()) {
            auto & [u, edge] = frames.back();
            if (edge < implies[u].size()) {
                int w = implies[u][edge++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                }
                else if (on_stack[w])
                    low[u] = std::min(low[u], index[w]);
                continue;
            }
            if (low[u] == index[u]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component[w] = next_component;
                } while (w != u);
                ++next_component;
            }
            int finished = u;
            frames.pop_back();
            if (! frames.empty())
                low[frames.back().first] = std::min(low[frames.back().first], low[finished]);
        }
    }

    std::vector<bool> assignment(instance.variable_count, false);
    for (int x = 0; x < instance.variable_count; ++x) {
        if (component[2 * x] == component[2 * x + 1])
            return std::nullopt;
        assignment[x] = component[2 * x] < component[2 * x + 1];
    }
    return assignment;
}

auto decide_small_target(const OrientedGraph & g, const Target & t, InjectivityMode mode) -> SmallTargetResult
{
    if (t.size() > 2 || t.size() < 1 || ! t.is_reflexive_tournament())
        throw Error(ErrorCode::TargetTooLarge, "the polynomial decider handles reflexive tournaments on one or two vertices");

    SmallTargetResult result;
    const int n = g.vertex_count();
    std::vector<std::vector<VertexId>> groups;
    for (VertexId v = 0; v < n; ++v)
        for (auto & members : injective_neighbourhoods(g, v, mode)) {
            if (static_cast<int>(members.size()) > t.size())
                return result;
            if (members.size() == 2)
                groups.push_back(std::move(members));
        }

    if (t.size() == 1) {
        result.sat = true;
        result.witness.assign(n, 0);
        return result;
    }

    // x_v true means colour 1. With source 0 -> 1, an arc u -> v forbids f(u) = 1, f(v) = 0.
    VertexId source = t.graph().has_arc(0, 1) ? 0 : 1;
    TwoSatInstance sat;
    sat.variable_count = n;
    auto colour_literal = [&](VertexId v, VertexId colour) { return Literal{v, colour == 0}; };
    std::set<std::pair<VertexId, VertexId>> distinct;
    for (const auto & arc : g.arcs())
        if (arc.tail != arc.head)
            sat.add_clause(! colour_literal(arc.tail, 1 - source), ! colour_literal(arc.head, source));
    for (const auto & members : groups)
        if (distinct.emplace(std::min(members[0], members[1]), std::max(members[0], members[1])).second) {
            sat.add_clause(Literal{members[0]}, Literal{members[1]});
            sat.add_clause(Literal{members[0], true}, Literal{members[1], true});
        }
    result.clause_count = sat.clauses.size();

    auto assignment = twosat_solve(sat);
    if (! assignment)
        return result;
    result.sat = true;
    result.witness.resize(n);
    for (VertexId v = 0; v < n; ++v)
        result.witness[v] = (*assignment)[v] ? 1 : 0;
    return result;
}

}
