#include <injhom/check/oracle.hpp>

#include <set>

namespace injhom::check {

auto naive_is_valid(const OrientedGraph & g, const OrientedGraph & t, const std::vector<VertexId> & f, InjectivityMode mode) -> bool
{
    std::set<std::pair<VertexId, VertexId>> target_arcs;
    for (const auto & arc : t.arcs())
        target_arcs.emplace(arc.tail, arc.head);
    for (const auto & arc : g.arcs())
        if (! target_arcs.contains({f[arc.tail], f[arc.head]}))
            return false;

    const int n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> ins, outs;
        for (const auto & arc : g.arcs()) {
            if (arc.head == v)
                ins.push_back(arc.tail);
            if (arc.tail == v)
                outs.push_back(arc.head);
        }
        auto injective = [&](const std::vector<VertexId> & members) {
            std::set<VertexId> distinct(members.begin(), members.end());
            std::set<VertexId> colours;
            for (auto x : distinct)
                colours.insert(f[x]);
            return colours.size() == distinct.size();
        };
        std::vector<VertexId> both = ins;
        both.insert(both.end(), outs.begin(), outs.end());
        switch (mode) {
        case InjectivityMode::InOnly:
            if (! injective(ins))
                return false;
            break;
        case InjectivityMode::IosSeparate:
            if (! injective(ins) || ! injective(outs))
                return false;
            break;
        case InjectivityMode::IotTogether:
            if (! injective(both))
                return false;
            break;
        }
    }
    return true;
}

auto naive_colourings(const OrientedGraph & g, const OrientedGraph & t, InjectivityMode mode) -> std::vector<std::vector<VertexId>>
{
    std::vector<std::vector<VertexId>> result;
    const int n = g.vertex_count(), k = t.vertex_count();
    if (k == 0)
        return n == 0 ? std::vector<std::vector<VertexId>>{{}} : result;
    std::vector<VertexId> f(n, 0);
    while (true) {
        if (naive_is_valid(g, t, f, mode))
            result.push_back(f);
        int i = n - 1;
        while (i >= 0 && f[i] == k - 1)
            f[i--] = 0;
        if (i < 0)
            break;
        ++f[i];
    }
    return result;
}

auto all_oriented_graphs(int n) -> std::vector<OrientedGraph>
{
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);

    std::vector<OrientedGraph> result;
    std::vector<int> state(pairs.size(), 0);
    while (true) {
        std::vector<Arc> strict;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (state[p] == 1)
                strict.push_back({pairs[p].first, pairs[p].second});
            else if (state[p] == 2)
                strict.push_back({pairs[p].second, pairs[p].first});
        }
        for (std::uint32_t loops = 0; loops < (1u << n); ++loops) {
            auto arcs = strict;
            for (VertexId v = 0; v < n; ++v)
                if ((loops >> v) & 1u)
                    arcs.push_back({v, v});
            result.emplace_back(n, std::move(arcs));
        }
        std::size_t p = 0;
        while (p < state.size() && state[p] == 2)
            state[p++] = 0;
        if (p == state.size())
            break;
        ++state[p];
    }
    return result;
}

auto random_oriented_graph(int n, double density, double loop_probability, std::mt19937_64 & rng) -> OrientedGraph
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Arc> arcs;
    for (VertexId i = 0; i < n; ++i) {
        if (unit(rng) < loop_probability)
            arcs.push_back({i, i});
        for (VertexId j = i + 1; j < n; ++j)
            if (unit(rng) < density) {
                if (unit(rng) < 0.5)
                    arcs.push_back({i, j});
                else
                    arcs.push_back({j, i});
            }
    }
    return {n, std::move(arcs)};
}

}
