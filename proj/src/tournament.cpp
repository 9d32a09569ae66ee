#include <injhom/tournament.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

namespace injhom {

Target::Target(OrientedGraph graph, std::string name) :
    _graph(std::move(graph)),
    _name(std::move(name))
{
    const int n = _graph.vertex_count();
    if (n > max_target_vertices)
        throw Error(ErrorCode::TargetTooLarge, "targets are limited to " + std::to_string(max_target_vertices) + " vertices");

    _out.assign(n, 0);
    _in.assign(n, 0);
    for (const auto & a : _graph.arcs()) {
        _out[a.tail] |= ColourSet{1} << a.head;
        _in[a.head] |= ColourSet{1} << a.tail;
    }
    _all = n == 64 ? ~ColourSet{0} : (ColourSet{1} << n) - 1;

    _reflexive = _graph.loop_count() == n;
    auto strict = _graph.arc_count() - static_cast<std::size_t>(_graph.loop_count());
    _tournament = strict == static_cast<std::size_t>(n) * (n - 1) / 2;

    if (n <= max_canonical_vertices)
        _automorphisms = compute_automorphisms(_graph);
}

auto Target::automorphisms() const -> const std::vector<Permutation> &
{
    if (size() > max_canonical_vertices)
        throw Error(ErrorCode::BoundExceeded, "automorphisms are only computed up to " + std::to_string(max_canonical_vertices) + " vertices");
    return _automorphisms;
}

auto colour_name(VertexId c) -> std::string
{
    if (c >= 0 && c < 26)
        return std::string(1, static_cast<char>('a' + c));
    return std::to_string(c);
}

auto parse_colour(const std::string & text) -> VertexId
{
    if (text.size() == 1 && text[0] >= 'a' && text[0] <= 'z')
        return text[0] - 'a';
    if (! text.empty() && std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        return std::stoi(text);
    throw Error(ErrorCode::InvalidArgument, "bad colour '" + text + "'");
}

namespace {
    auto reflexive_with(int n, std::vector<Arc> strict) -> OrientedGraph
    {
        for (int v = 0; v < n; ++v)
            strict.push_back({v, v});
        return OrientedGraph(n, std::move(strict));
    }

    enum : VertexId { a = 0, b, c, d, e };
}

auto reflexive_transitive_tournament(int n) -> Target
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "TTn needs n >= 1");
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            arcs.push_back({i, j});
    return Target(reflexive_with(n, std::move(arcs)), "TT" + std::to_string(n));
}

auto named_target(NamedTarget which, int n) -> Target
{
    switch (which) {
    case NamedTarget::C3:
        return Target(reflexive_with(3, {{a, b}, {b, c}, {c, a}}), "C3");
    case NamedTarget::TT3:
        return reflexive_transitive_tournament(3);
    case NamedTarget::TT:
        return reflexive_transitive_tournament(n);
    case NamedTarget::T4:
        return Target(reflexive_with(4, {{a, b}, {a, c}, {b, c}, {b, d}, {c, d}, {d, a}}), "T4");
    case NamedTarget::T5:
        return Target(reflexive_with(5, {{a, b}, {a, c}, {b, c}, {b, d}, {c, d}, {c, e}, {d, e}, {d, a}, {e, a}, {e, b}}), "T5");
    }
    throw Error(ErrorCode::InvalidArgument, "unknown named target");
}

auto is_target_name(const std::string & name) -> bool
{
    if (name == "C3" || name == "T4" || name == "T5")
        return true;
    if (name.size() > 2 && name.starts_with("TT"))
        return std::all_of(name.begin() + 2, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    return false;
}

auto named_target(const std::string & name) -> Target
{
    if (name == "C3")
        return named_target(NamedTarget::C3);
    if (name == "T4")
        return named_target(NamedTarget::T4);
    if (name == "T5")
        return named_target(NamedTarget::T5);
    if (is_target_name(name)) {
        auto n = std::stoi(name.substr(2));
        if (n < 1 || n > max_target_vertices)
            throw Error(ErrorCode::InvalidArgument, "TTn needs 1 <= n <= " + std::to_string(max_target_vertices));
        return reflexive_transitive_tournament(n);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown target name '" + name + "'");
}

namespace {
    using Matrix = std::array<std::uint8_t, max_canonical_vertices>;

    /// Row-bitmask adjacency: bit j of rows[i] is set iff i -> j.
    auto adjacency_rows(const OrientedGraph & g) -> Matrix
    {
        Matrix rows{};
        for (const auto & arc : g.arcs())
            rows[arc.tail] |= static_cast<std::uint8_t>(1u << arc.head);
        return rows;
    }

    auto bit(const Matrix & rows, int i, int j) -> std::uint64_t
    {
        return (rows[i] >> j) & 1u;
    }

    /// Branch and bound over vertex orders. Position j contributes, in order, the loop bit of
    /// the vertex placed there followed by (i->j, j->i) for every earlier position i, so a
    /// prefix of the order fixes a prefix of the key.
    class CanonicalSearch {
    public:
        explicit CanonicalSearch(const OrientedGraph & g) :
            _n(g.vertex_count()),
            _rows(adjacency_rows(g))
        {
            _total_bits = _n * _n;
        }

        void run()
        {
            _best_found = false;
            _order.clear();
            std::uint8_t unused = _n == 8 ? 0xff : static_cast<std::uint8_t>((1u << _n) - 1);
            search(0, 0, 0, unused, true);
        }

        auto key() const -> std::uint64_t { return _best; }
        auto order() const -> const Permutation & { return _best_order; }
        auto total_bits() const -> int { return _total_bits; }

    private:
        void search(int depth, std::uint64_t prefix, int used_bits, std::uint8_t unused, bool tight)
        {
            if (depth == _n) {
                if (! _best_found || prefix < _best) {
                    _best = prefix;
                    _best_order = _order;
                    _best_found = true;
                }
                return;
            }
            for (int v = 0; v < _n; ++v) {
                if (! ((unused >> v) & 1u))
                    continue;
                std::uint64_t value = prefix;
                value = (value << 1) | bit(_rows, v, v);
                for (int i = 0; i < depth; ++i) {
                    value = (value << 1) | bit(_rows, _order[i], v);
                    value = (value << 1) | bit(_rows, v, _order[i]);
                }
                int bits = used_bits + 2 * depth + 1;
                bool child_tight = false;
                if (_best_found && tight) {
                    auto best_prefix = _best >> (_total_bits - bits);
                    if (value > best_prefix)
                        continue;
                    child_tight = value == best_prefix;
                }
                else if (! _best_found)
                    child_tight = false;
                _order.push_back(v);
                search(depth + 1, value, bits, static_cast<std::uint8_t>(unused & ~(1u << v)), child_tight || ! _best_found);
                _order.pop_back();
            }
        }

        int _n;
        Matrix _rows;
        int _total_bits = 0;
        bool _best_found = false;
        std::uint64_t _best = 0;
        Permutation _order, _best_order;
    };

    void check_canonical_bound(const OrientedGraph & g)
    {
        if (g.vertex_count() > max_canonical_vertices)
            throw Error(ErrorCode::BoundExceeded, "canonical forms are limited to " + std::to_string(max_canonical_vertices) + " vertices");
    }
}

auto canonical_form(const OrientedGraph & g) -> std::string
{
    check_canonical_bound(g);
    CanonicalSearch search(g);
    search.run();
    std::string key = std::to_string(g.vertex_count()) + ":";
    for (int i = search.total_bits() - 1; i >= 0; --i)
        key += ((search.key() >> i) & 1u) ? '1' : '0';
    return key;
}

auto canonical_form(const Target & t) -> std::string
{
    return canonical_form(t.graph());
}

auto canonical_order(const OrientedGraph & g) -> Permutation
{
    check_canonical_bound(g);
    CanonicalSearch search(g);
    search.run();
    return search.order();
}

auto compute_automorphisms(const OrientedGraph & g) -> std::vector<Permutation>
{
    check_canonical_bound(g);
    const int n = g.vertex_count();
    auto rows = adjacency_rows(g);

    std::vector<int> in_deg(n, 0), out_deg(n, 0);
    for (const auto & arc : g.arcs()) {
        ++out_deg[arc.tail];
        ++in_deg[arc.head];
    }

    std::vector<Permutation> result;
    Permutation image(n, -1);
    std::vector<bool> taken(n, false);

    auto extend = [&](auto & self, int v) -> void {
        if (v == n) {
            result.push_back(image);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (taken[w] || in_deg[w] != in_deg[v] || out_deg[w] != out_deg[v] || bit(rows, v, v) != bit(rows, w, w))
                continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                ok = bit(rows, u, v) == bit(rows, image[u], w) && bit(rows, v, u) == bit(rows, w, image[u]);
            if (! ok)
                continue;
            image[v] = w;
            taken[w] = true;
            self(self, v + 1);
            taken[w] = false;
            image[v] = -1;
        }
    };
    extend(extend, 0);
    std::sort(result.begin(), result.end());
    return result;
}

auto is_vertex_transitive(const Target & t) -> bool
{
    if (t.size() == 0)
        return true;
    std::vector<bool> reached(t.size(), false);
    for (const auto & p : t.automorphisms())
        reached[p[0]] = true;
    return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
}

auto degree_profile(const Target & t) -> DegreeProfile
{
    const int n = t.size();
    DegreeProfile profile;
    profile.in_degree.resize(n);
    profile.out_degree.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        profile.in_degree[v] = std::popcount(t.in_set(v));
        profile.out_degree[v] = std::popcount(t.out_set(v));
        profile.max_in = std::max(profile.max_in, profile.in_degree[v]);
        profile.max_out = std::max(profile.max_out, profile.out_degree[v]);
        if (profile.in_degree[v] >= 4 || profile.out_degree[v] >= 4)
            profile.high_degree.push_back(v);
    }
    return profile;
}

auto tournament_from_mask(int n, std::uint64_t mask) -> OrientedGraph
{
    std::vector<Arc> arcs;
    int index = 0;
    for (int i = 0; i < n; ++i) {
        arcs.push_back({i, i});
        for (int j = i + 1; j < n; ++j, ++index) {
            if ((mask >> index) & 1u)
                arcs.push_back({i, j});
            else
                arcs.push_back({j, i});
        }
    }
    return OrientedGraph(n, std::move(arcs));
}

namespace {
    void check_enumeration_bound(int n)
    {
        if (n < 1 || n > max_enumeration_vertices)
            throw Error(ErrorCode::BoundExceeded, "enumeration needs 1 <= n <= " + std::to_string(max_enumeration_vertices));
    }

    auto to_targets(int n, const std::map<std::string, std::uint64_t> & classes) -> std::vector<Target>
    {
        std::vector<Target> result;
        int index = 0;
        for (const auto & [key, mask] : classes) {
            // Relabel the class representative into its canonical vertex order.
            auto g = tournament_from_mask(n, mask);
            auto order = canonical_order(g);
            std::vector<VertexId> position(n);
            for (int i = 0; i < n; ++i)
                position[order[i]] = i;
            std::vector<Arc> arcs;
            for (const auto & arc : g.arcs())
                arcs.push_back({position[arc.tail], position[arc.head]});
            result.emplace_back(OrientedGraph(n, std::move(arcs)), "R" + std::to_string(n) + "." + std::to_string(index++));
        }
        return result;
    }
}

auto enumerate_reflexive_tournaments_serial(int n) -> std::vector<Target>
{
    check_enumeration_bound(n);
    const std::uint64_t count = std::uint64_t{1} << (n * (n - 1) / 2);
    std::map<std::string, std::uint64_t> classes;
    for (std::uint64_t mask = 0; mask < count; ++mask)
        classes.emplace(canonical_form(tournament_from_mask(n, mask)), mask);
    return to_targets(n, classes);
}

auto enumerate_reflexive_tournaments(int n) -> std::vector<Target>
{
    check_enumeration_bound(n);
    const std::int64_t count = std::int64_t{1} << (n * (n - 1) / 2);
    std::map<std::string, std::uint64_t> classes;

#pragma omp parallel
    {
        std::map<std::string, std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t mask = 0; mask < count; ++mask)
            local.emplace(canonical_form(tournament_from_mask(n, static_cast<std::uint64_t>(mask))), static_cast<std::uint64_t>(mask));
#pragma omp critical
        for (const auto & [key, mask] : local) {
            auto [it, inserted] = classes.emplace(key, mask);
            if (! inserted && mask < it->second)
                it->second = mask;
        }
    }

    return to_targets(n, classes);
}

auto serialize_target(const Target & t) -> std::string
{
    return "# target " + (t.name().empty() ? std::string("unnamed") : t.name()) + "\n" + serialize_graph(t.graph());
}

}
