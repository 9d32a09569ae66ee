#include <injhom/solver.hpp>

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

namespace injhom {

auto Violation::describe() const -> std::string
{
    if (kind == Kind::ArcNotPreserved)
        return "arc " + std::to_string(first) + "->" + std::to_string(second) + " is not preserved";
    return "vertices " + std::to_string(first) + " and " + std::to_string(second) + " share a colour in the "
        + (neighbourhood == Direction::In ? "in" : neighbourhood == Direction::Out ? "out" : "in/out")
        + "-neighbourhood of " + std::to_string(centre);
}

auto to_string(SolveStatus status) -> std::string
{
    switch (status) {
    case SolveStatus::Sat: return "Sat";
    case SolveStatus::Unsat: return "Unsat";
    case SolveStatus::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

auto verify_colouring(const OrientedGraph & g, const Target & t, const Colouring & f, InjectivityMode mode) -> VerifyResult
{
    if (f.size() != static_cast<std::size_t>(g.vertex_count()))
        throw Error(ErrorCode::PartialColouring, "colouring covers " + std::to_string(f.size()) + " of " + std::to_string(g.vertex_count()) + " vertices");
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (f[v] < 0 || f[v] >= t.size())
            throw Error(ErrorCode::PartialColouring, "vertex " + std::to_string(v) + " has no colour");

    for (const auto & arc : g.arcs())
        if (! t.graph().has_arc(f[arc.tail], f[arc.head]))
            return {false, Violation{Violation::Kind::ArcNotPreserved, arc.tail, arc.head, -1, Direction::Out}};

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<Direction> directions;
        switch (mode) {
        case InjectivityMode::InOnly: directions = {Direction::In}; break;
        case InjectivityMode::IosSeparate: directions = {Direction::In, Direction::Out}; break;
        case InjectivityMode::IotTogether: directions = {Direction::Both}; break;
        }
        for (auto direction : directions) {
            std::map<VertexId, VertexId> seen;
            for (auto x : neighbourhood(g, v, direction)) {
                auto [it, inserted] = seen.emplace(f[x], x);
                if (! inserted)
                    return {false, Violation{Violation::Kind::InjectivityClash, it->second, x, v, direction}};
            }
        }
    }
    return {};
}

auto pigeonhole_screen(const OrientedGraph & g, const Target & t, InjectivityMode mode) -> bool
{
    int target_in = 0, target_out = 0, target_both = 0;
    for (VertexId c = 0; c < t.size(); ++c) {
        target_in = std::max(target_in, std::popcount(t.in_set(c)));
        target_out = std::max(target_out, std::popcount(t.out_set(c)));
        target_both = std::max(target_both, std::popcount(t.in_set(c) | t.out_set(c)));
    }

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto ins = static_cast<int>(g.in_neighbours(v).size());
        auto outs = static_cast<int>(g.out_neighbours(v).size());
        switch (mode) {
        case InjectivityMode::InOnly:
            if (ins > target_in)
                return false;
            break;
        case InjectivityMode::IosSeparate:
            if (ins > target_in || outs > target_out)
                return false;
            break;
        case InjectivityMode::IotTogether:
            if (static_cast<int>(neighbourhood(g, v, Direction::Both).size()) > target_both)
                return false;
            break;
        }
    }
    return true;
}

auto compose(const Permutation & automorphism, const Colouring & f) -> Colouring
{
    Colouring result(f.size(), unassigned);
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f[v] != unassigned)
            result[v] = automorphism[f[v]];
    return result;
}

auto format_witness(const Colouring & f) -> std::string
{
    std::string out;
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (f[v] == unassigned)
            continue;
        if (! out.empty())
            out += ' ';
        out += std::to_string(v) + "=" + colour_name(f[v]);
    }
    return out;
}

namespace {
    enum LinkFlags : std::uint8_t {
        tail_of_arc = 1, ///< this vertex -> other
        head_of_arc = 2, ///< other -> this vertex
        different = 4,
    };

    struct Link {
        VertexId other;
        std::uint8_t flags;
    };

    /// Instance compiled into unary domains and binary constraints.
    struct Model {
        int n = 0;
        std::vector<ColourSet> initial_domain;
        std::vector<std::vector<Link>> links;
        bool trivially_unsat = false;
    };

    auto allowed_given(const Target & t, std::uint8_t flags, VertexId colour) -> ColourSet
    {
        ColourSet allowed = t.all_colours();
        if (flags & tail_of_arc)
            allowed &= t.out_set(colour);
        if (flags & head_of_arc)
            allowed &= t.in_set(colour);
        if (flags & different)
            allowed &= ~(ColourSet{1} << colour);
        return allowed;
    }

    auto build_model(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> Model
    {
        Model model;
        model.n = g.vertex_count();
        model.initial_domain.assign(model.n, t.all_colours());
        model.links.assign(model.n, {});

        std::unordered_map<std::uint64_t, std::uint8_t> pair_flags;
        auto key = [](VertexId u, VertexId v) { return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v); };
        auto add = [&](VertexId u, VertexId v, std::uint8_t flags_uv) {
            pair_flags[key(u, v)] |= flags_uv;
        };

        ColourSet looped = 0;
        for (VertexId c = 0; c < t.size(); ++c)
            if (t.graph().has_loop(c))
                looped |= ColourSet{1} << c;

        for (const auto & arc : g.arcs()) {
            if (arc.tail == arc.head) {
                model.initial_domain[arc.tail] &= looped;
                continue;
            }
            add(arc.tail, arc.head, tail_of_arc);
            add(arc.head, arc.tail, head_of_arc);
        }

        for (VertexId v = 0; v < model.n; ++v)
            for (const auto & members : injective_neighbourhoods(g, v, options.mode))
                for (std::size_t i = 0; i < members.size(); ++i)
                    for (std::size_t j = i + 1; j < members.size(); ++j) {
                        add(members[i], members[j], different);
                        add(members[j], members[i], different);
                    }

        for (const auto & [k, flags] : pair_flags)
            model.links[static_cast<VertexId>(k >> 32)].push_back({static_cast<VertexId>(k & 0xffffffffu), flags});
        for (auto & row : model.links)
            std::sort(row.begin(), row.end(), [](const Link & x, const Link & y) { return x.other < y.other; });

        for (const auto & [v, c] : options.fixed) {
            if (v < 0 || v >= model.n || c < 0 || c >= t.size())
                throw Error(ErrorCode::InvalidFixedAssignment, "fixed assignment " + std::to_string(v) + "=" + std::to_string(c) + " is out of range");
            if (! ((model.initial_domain[v] >> c) & 1u))
                throw Error(ErrorCode::InvalidFixedAssignment, "vertex " + std::to_string(v) + " has a loop but colour " + colour_name(c) + " does not");
            model.initial_domain[v] = ColourSet{1} << c;
        }
        for (const auto & [v, c] : options.fixed)
            for (const auto & link : model.links[v]) {
                auto other = options.fixed.find(link.other);
                if (other != options.fixed.end() && ! ((allowed_given(t, link.flags, c) >> other->second) & 1u))
                    throw Error(ErrorCode::InvalidFixedAssignment, "fixed colours of " + std::to_string(v) + " and " + std::to_string(link.other) + " conflict");
            }

        model.trivially_unsat = ! pigeonhole_screen(g, t, options.mode)
            || std::any_of(model.initial_domain.begin(), model.initial_domain.end(), [](ColourSet d) { return d == 0; });
        return model;
    }

    /// Dynamic bitset over search depths.
    class DepthSet {
    public:
        explicit DepthSet(int size = 0) : _words((size + 63) / 64, 0) {}

        void set(int d) { _words[d / 64] |= std::uint64_t{1} << (d % 64); }
        void reset(int d) { _words[d / 64] &= ~(std::uint64_t{1} << (d % 64)); }
        void clear() { std::fill(_words.begin(), _words.end(), 0); }
        void unite(const DepthSet & other)
        {
            for (std::size_t i = 0; i < _words.size(); ++i)
                _words[i] |= other._words[i];
        }
        void set_below(int d)
        {
            for (int w = 0; w < d / 64; ++w)
                _words[w] = ~std::uint64_t{0};
            if (d % 64)
                _words[d / 64] |= (std::uint64_t{1} << (d % 64)) - 1;
        }
        auto highest() const -> int
        {
            for (auto w = static_cast<int>(_words.size()) - 1; w >= 0; --w)
                if (_words[w])
                    return w * 64 + 63 - std::countl_zero(_words[w]);
            return -1;
        }

    private:
        std::vector<std::uint64_t> _words;
    };

    struct Reduction {
        int depth;
        ColourSet removed;
    };

    /// FC-CBJ search. In projection mode, projection vertices are assigned first, and after a
    /// solution the search resumes at the last projection vertex.
    class Search {
    public:
        Search(const Model & model, const Target & t, const SolveOptions & options, std::vector<VertexId> projection) :
            _model(model),
            _target(t),
            _options(options),
            _in_projection(model.n, false),
            _project(! projection.empty())
        {
            for (auto v : projection)
                if (v >= 0 && v < model.n && ! _in_projection[v]) {
                    _in_projection[v] = true;
                    ++_projection_size;
                }
            if (! _project)
                _projection_size = model.n;
        }

        auto run() -> SolveResult
        {
            SolveResult result;
            result.status = SolveStatus::Unsat;
            if (_model.trivially_unsat)
                return result;

            const int n = _model.n;
            if (n == 0) {
                record(result, {});
                return finish(result);
            }

            _domain = _model.initial_domain;
            _value.assign(n, unassigned);
            _reductions.assign(n, {});
            _order.assign(n, -1);
            _remaining.assign(n, 0);
            _touched.assign(n, {});
            _conflicts.assign(n, DepthSet(n));

            int depth = 0;
            start_depth(0);

            while (true) {
                VertexId v = _order[depth];
                bool placed = false;
                while (_remaining[depth]) {
                    auto c = static_cast<VertexId>(std::countr_zero(_remaining[depth]));
                    _remaining[depth] &= _remaining[depth] - 1;
                    if (_options.node_budget && result.stats.nodes >= *_options.node_budget) {
                        result.status = SolveStatus::BudgetExhausted;
                        return finish(result);
                    }
                    ++result.stats.nodes;
                    _value[v] = c;
                    if (forward_check(depth, v, c, result.stats)) {
                        placed = true;
                        break;
                    }
                    undo_depth(depth);
                }

                if (placed) {
                    if (depth + 1 < n) {
                        ++depth;
                        start_depth(depth);
                        continue;
                    }

                    record(result, _value);
                    if (_stop_after_first || (_options.limit && result.count >= *_options.limit)) {
                        result.truncated = _options.limit.has_value() && ! _stop_after_first;
                        return finish(result);
                    }

                    // Resume chronologically, from the last projection vertex in projection mode.
                    int resume = _project ? _projection_size - 1 : depth;
                    if (resume < 0)
                        return finish(result);
                    for (int d = depth; d > resume; --d)
                        unassign_depth(d);
                    undo_depth(resume);
                    _conflicts[resume].set_below(resume);
                    depth = resume;
                    continue;
                }

                // Every value failed: jump to the deepest depth responsible.
                DepthSet culprits = _conflicts[depth];
                for (const auto & r : _reductions[v])
                    culprits.set(r.depth);
                int target = culprits.highest();
                _value[v] = unassigned;
                if (target < 0)
                    return finish(result);
                culprits.reset(target);
                if (target < depth - 1)
                    ++result.stats.backjumps;
                for (int d = depth; d > target; --d)
                    unassign_depth(d);
                _conflicts[target].unite(culprits);
                undo_depth(target);
                depth = target;
            }
        }

        void stop_after_first() { _stop_after_first = true; }

    private:
        void record(SolveResult & result, const Colouring & f)
        {
            result.status = SolveStatus::Sat;
            ++result.count;
            if (! _project) {
                result.witnesses.push_back(f);
                return;
            }
            Colouring projected(f.size(), unassigned);
            for (std::size_t v = 0; v < f.size(); ++v)
                if (_in_projection[v])
                    projected[v] = f[v];
            result.witnesses.push_back(std::move(projected));
        }

        auto finish(SolveResult & result) -> SolveResult
        {
            std::sort(result.witnesses.begin(), result.witnesses.end());
            if (result.status == SolveStatus::Unsat && ! result.witnesses.empty())
                result.status = SolveStatus::Sat;
            return std::move(result);
        }

        void start_depth(int depth)
        {
            VertexId chosen = -1;
            int best = 0;
            bool want_projection = _project && depth < _projection_size;
            for (VertexId v = 0; v < _model.n; ++v) {
                if (_value[v] != unassigned || (want_projection && ! _in_projection[v]))
                    continue;
                int size = std::popcount(_domain[v]);
                if (chosen == -1 || size < best) {
                    chosen = v;
                    best = size;
                }
            }
            _order[depth] = chosen;
            _remaining[depth] = _domain[chosen];
            _conflicts[depth].clear();
            _touched[depth].clear();
        }

        auto forward_check(int depth, VertexId v, VertexId c, SearchStats & stats) -> bool
        {
            for (const auto & link : _model.links[v]) {
                auto w = link.other;
                if (_value[w] != unassigned)
                    continue;
                auto removed = _domain[w] & ~allowed_given(_target, link.flags, c);
                if (! removed)
                    continue;
                ++stats.propagations;
                _domain[w] &= ~removed;
                _reductions[w].push_back({depth, removed});
                _touched[depth].push_back(w);
                if (! _domain[w]) {
                    for (const auto & r : _reductions[w])
                        if (r.depth != depth)
                            _conflicts[depth].set(r.depth);
                    return false;
                }
            }
            return true;
        }

        void undo_depth(int depth)
        {
            for (auto w : _touched[depth]) {
                auto & stack = _reductions[w];
                _domain[w] |= stack.back().removed;
                stack.pop_back();
            }
            _touched[depth].clear();
        }

        void unassign_depth(int depth)
        {
            undo_depth(depth);
            _value[_order[depth]] = unassigned;
            _conflicts[depth].clear();
        }

        const Model & _model;
        const Target & _target;
        const SolveOptions & _options;
        std::vector<bool> _in_projection;
        bool _project;
        int _projection_size = 0;
        bool _stop_after_first = false;

        std::vector<ColourSet> _domain;
        Colouring _value;
        std::vector<std::vector<Reduction>> _reductions;
        std::vector<VertexId> _order;
        std::vector<ColourSet> _remaining;
        std::vector<std::vector<VertexId>> _touched;
        std::vector<DepthSet> _conflicts;
    };

    auto run_search(const OrientedGraph & g, const Target & t, const SolveOptions & options, bool first_only,
        const std::vector<VertexId> & projection) -> SolveResult
    {
        auto model = build_model(g, t, options);
        Search search(model, t, options, projection);
        if (first_only)
            search.stop_after_first();
        return search.run();
    }

    /// Splits on the colours of the first branching vertex and merges in colour order.
    auto run_split(const OrientedGraph & g, const Target & t, const SolveOptions & options, bool first_only,
        const std::vector<VertexId> & projection) -> SolveResult
    {
        auto model = build_model(g, t, options);
        if (model.trivially_unsat || model.n == 0)
            return run_search(g, t, options, first_only, projection);

        VertexId root = -1;
        for (VertexId v = 0; v < model.n; ++v)
            if ((projection.empty() || std::find(projection.begin(), projection.end(), v) != projection.end())
                && (root == -1 || std::popcount(model.initial_domain[v]) < std::popcount(model.initial_domain[root])))
                root = v;
        if (root == -1)
            return run_search(g, t, options, first_only, projection);

        std::vector<VertexId> colours;
        for (auto d = model.initial_domain[root]; d; d &= d - 1)
            colours.push_back(std::countr_zero(d));

        std::vector<SolveResult> parts(colours.size());
        std::vector<char> failed(colours.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(options.workers)
        for (std::size_t i = 0; i < colours.size(); ++i) {
            auto branch = options;
            branch.fixed[root] = colours[i];
            try {
                parts[i] = run_search(g, t, branch, first_only, projection);
            }
            catch (const Error &) {
                // A fixed colour conflicting with the branch colour only empties that branch.
                failed[i] = 1;
            }
        }

        SolveResult merged;
        merged.status = SolveStatus::Unsat;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (failed[i])
                continue;
            auto & part = parts[i];
            merged.stats.nodes += part.stats.nodes;
            merged.stats.propagations += part.stats.propagations;
            merged.stats.backjumps += part.stats.backjumps;
            if (part.status == SolveStatus::BudgetExhausted && merged.status != SolveStatus::Sat)
                merged.status = SolveStatus::BudgetExhausted;
            if (part.status == SolveStatus::Sat) {
                if (first_only && merged.status == SolveStatus::Sat)
                    continue;
                merged.status = SolveStatus::Sat;
                merged.truncated = merged.truncated || part.truncated;
                for (auto & w : part.witnesses)
                    merged.witnesses.push_back(std::move(w));
            }
        }
        std::sort(merged.witnesses.begin(), merged.witnesses.end());
        if (options.limit && merged.witnesses.size() > *options.limit) {
            merged.witnesses.resize(*options.limit);
            merged.truncated = true;
        }
        merged.count = merged.witnesses.size();
        return merged;
    }

    auto dispatch(const OrientedGraph & g, const Target & t, const SolveOptions & options, bool first_only,
        const std::vector<VertexId> & projection) -> SolveResult
    {
        if (options.workers > 1)
            return run_split(g, t, options, first_only, projection);
        return run_search(g, t, options, first_only, projection);
    }
}

auto decide(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> SolveResult
{
    auto result = dispatch(g, t, options, true, {});
    result.count = result.witnesses.size();
    return result;
}

auto enumerate(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> SolveResult
{
    if (options.modulo_automorphisms)
        return enumerate_mod_aut(g, t, options);
    return dispatch(g, t, options, false, {});
}

auto enumerate_mod_aut(const OrientedGraph & g, const Target & t, const SolveOptions & options) -> SolveResult
{
    auto all_options = options;
    all_options.modulo_automorphisms = false;
    all_options.limit.reset();
    auto all = dispatch(g, t, all_options, false, {});

    const auto & group = t.automorphisms();
    SolveResult result;
    result.status = all.status;
    result.stats = all.stats;
    for (const auto & w : all.witnesses) {
        bool least = true;
        std::uint64_t stabiliser = 0;
        for (const auto & alpha : group) {
            auto image = compose(alpha, w);
            if (image < w) {
                least = false;
                break;
            }
            if (image == w)
                ++stabiliser;
        }
        if (! least)
            continue;
        result.witnesses.push_back(w);
        result.orbit_sizes.push_back(group.size() / stabiliser);
    }
    if (options.limit && result.witnesses.size() > *options.limit) {
        result.witnesses.resize(*options.limit);
        result.orbit_sizes.resize(*options.limit);
        result.truncated = true;
    }
    result.count = result.witnesses.size();
    if (result.status == SolveStatus::Sat && result.witnesses.empty())
        result.status = SolveStatus::Unsat;
    return result;
}

auto enumerate_projected(const OrientedGraph & g, const Target & t, const SolveOptions & options,
    const std::vector<VertexId> & projection) -> SolveResult
{
    for (auto v : projection)
        if (v < 0 || v >= g.vertex_count())
            throw Error(ErrorCode::VertexOutOfRange, "projection vertex " + std::to_string(v));
    if (projection.empty()) {
        // The empty restriction exists iff the instance is satisfiable.
        auto r = decide(g, t, options);
        for (auto & w : r.witnesses)
            std::fill(w.begin(), w.end(), unassigned);
        return r;
    }
    return dispatch(g, t, options, false, projection);
}

}
