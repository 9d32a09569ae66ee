#include <injhom/check/oracle.hpp>
#include <injhom/tournament.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace injhom;

namespace {
    auto permuted(const OrientedGraph & g, const std::vector<VertexId> & p) -> OrientedGraph
    {
        std::vector<Arc> arcs;
        for (const auto & arc : g.arcs())
            arcs.push_back({p[arc.tail], p[arc.head]});
        return {g.vertex_count(), arcs};
    }

    auto strict_arcs(const Target & t) -> std::set<std::pair<int, int>>
    {
        std::set<std::pair<int, int>> result;
        for (const auto & arc : t.graph().arcs())
            if (arc.tail != arc.head)
                result.emplace(arc.tail, arc.head);
        return result;
    }

    /// Brute force over all permutations, independent of the pruned search.
    auto brute_automorphisms(const OrientedGraph & g) -> std::vector<Permutation>
    {
        std::vector<VertexId> p(g.vertex_count());
        std::iota(p.begin(), p.end(), 0);
        std::vector<Permutation> result;
        do
            if (permuted(g, p) == g)
                result.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return result;
    }

    /// Isomorphism classes by brute-force comparison over all relabellings.
    auto brute_class_count(int n) -> int
    {
        std::vector<OrientedGraph> reps;
        int pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            auto g = tournament_from_mask(n, mask);
            bool known = false;
            for (const auto & r : reps) {
                std::vector<VertexId> p(n);
                std::iota(p.begin(), p.end(), 0);
                do
                    if (permuted(g, p) == r) {
                        known = true;
                        break;
                    }
                while (std::next_permutation(p.begin(), p.end()));
                if (known)
                    break;
            }
            if (! known)
                reps.push_back(g);
        }
        return static_cast<int>(reps.size());
    }

    using P = std::set<std::pair<int, int>>;
}

TEST_CASE("named targets")
{
    auto c3 = named_target(NamedTarget::C3);
    CHECK(c3.is_reflexive_tournament());
    CHECK(strict_arcs(c3) == P{{0, 1}, {1, 2}, {2, 0}});

    auto t4 = named_target(NamedTarget::T4);
    CHECK(t4.is_reflexive_tournament());
    CHECK(strict_arcs(t4) == P{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 0}});

    auto t5 = named_target(NamedTarget::T5);
    CHECK(t5.is_reflexive_tournament());
    CHECK(strict_arcs(t5) == P{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 0}, {4, 0}, {4, 1}});

    CHECK(strict_arcs(named_target(NamedTarget::TT3)) == P{{0, 1}, {0, 2}, {1, 2}});
    CHECK(named_target("TT6").size() == 6);
    CHECK(named_target("T5").name() == "T5");
    CHECK_THROWS_AS(named_target("T9"), Error);
}

TEST_CASE("T4 is the only strongly connected reflexive tournament on four vertices")
{
    int strong = 0;
    for (const auto & t : enumerate_reflexive_tournaments(4))
        if (is_strongly_connected(t.graph())) {
            ++strong;
            CHECK(canonical_form(t) == canonical_form(named_target(NamedTarget::T4)));
        }
    CHECK(strong == 1);
}

TEST_CASE("T5 is the only reflexive tournament on five vertices with all degrees three")
{
    int regular = 0;
    for (const auto & t : enumerate_reflexive_tournaments(5)) {
        auto profile = degree_profile(t);
        if (profile.max_in == 3 && profile.max_out == 3) {
            ++regular;
            CHECK(canonical_form(t) == canonical_form(named_target(NamedTarget::T5)));
        }
    }
    CHECK(regular == 1);
}

TEST_CASE("enumeration counts")
{
    const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56};
    for (int n = 1; n <= 6; ++n)
        CHECK(enumerate_reflexive_tournaments(n).size() == expected[n - 1]);
    CHECK(enumerate_reflexive_tournaments(4).size() + enumerate_reflexive_tournaments(5).size() == 16);
    CHECK_THROWS_AS(enumerate_reflexive_tournaments(8), Error);
    CHECK_THROWS_AS(enumerate_reflexive_tournaments(0), Error);
}

TEST_CASE("enumeration counts match a brute-force isomorphism check")
{
    for (int n = 1; n <= 5; ++n)
        CHECK(enumerate_reflexive_tournaments(n).size() == static_cast<std::size_t>(brute_class_count(n)));
}

TEST_CASE("parallel and serial enumeration agree")
{
    for (int n = 1; n <= 6; ++n) {
        auto parallel = enumerate_reflexive_tournaments(n);
        auto serial = enumerate_reflexive_tournaments_serial(n);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < parallel.size(); ++i) {
            CHECK(parallel[i].graph() == serial[i].graph());
            CHECK(parallel[i].name() == serial[i].name());
        }
    }
}

TEST_CASE("enumerated tournaments are pairwise non-isomorphic and well formed")
{
    for (int n = 1; n <= 6; ++n) {
        std::set<std::string> keys;
        for (const auto & t : enumerate_reflexive_tournaments(n)) {
            CHECK(t.is_reflexive_tournament());
            keys.insert(canonical_form(t));
            auto profile = degree_profile(t);
            int strict_out = 0;
            for (VertexId v = 0; v < n; ++v) {
                CHECK(profile.in_degree[v] + profile.out_degree[v] == n + 1);
                strict_out += profile.out_degree[v] - 1;
            }
            CHECK(strict_out == n * (n - 1) / 2);
            if (n == 6)
                CHECK_FALSE(profile.high_degree.empty());
        }
        CHECK(keys.size() == enumerate_reflexive_tournaments(n).size());
    }
}

TEST_CASE("canonical_form is invariant under relabelling")
{
    auto t4 = named_target(NamedTarget::T4).graph();
    std::vector<VertexId> p{2, 0, 3, 1};
    CHECK(canonical_form(permuted(t4, p)) == canonical_form(t4));
    CHECK(canonical_form(named_target(NamedTarget::C3)) != canonical_form(named_target(NamedTarget::TT3)));
    CHECK(canonical_form(t4) == canonical_form(named_target(NamedTarget::T4)));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 7;
        auto g = check::random_oriented_graph(n, 0.5, 0.3, rng);
        std::vector<VertexId> q(n);
        std::iota(q.begin(), q.end(), 0);
        std::shuffle(q.begin(), q.end(), rng);
        CHECK(canonical_form(permuted(g, q)) == canonical_form(g));

        auto order = canonical_order(g);
        std::vector<VertexId> position(n);
        for (int i = 0; i < n; ++i)
            position[order[i]] = i;
        CHECK(canonical_form(permuted(g, position)) == canonical_form(g));
    }
    CHECK_THROWS_AS(canonical_form(directed_cycle(9)), Error);
}

TEST_CASE("automorphisms")
{
    auto tt3 = named_target(NamedTarget::TT3);
    CHECK(tt3.automorphisms() == std::vector<Permutation>{{0, 1, 2}});

    auto c3 = named_target(NamedTarget::C3);
    CHECK(c3.automorphisms().size() == 3);
    CHECK(c3.automorphisms() == brute_automorphisms(c3.graph()));

    auto t5 = named_target(NamedTarget::T5);
    CHECK(t5.automorphisms().size() == 5);
    CHECK(t5.automorphisms() == brute_automorphisms(t5.graph()));
    bool found = false;
    for (const auto & p : t5.automorphisms())
        if (p[0] == 2 && p[2] == 4)
            found = true;
    CHECK(found);
    CHECK(std::find(t5.automorphisms().begin(), t5.automorphisms().end(), Permutation{2, 3, 4, 0, 1}) != t5.automorphisms().end());
}

TEST_CASE("automorphism sets are groups that fix the arc set")
{
    for (int n = 1; n <= 5; ++n)
        for (const auto & t : enumerate_reflexive_tournaments(n)) {
            const auto & group = t.automorphisms();
            CHECK(group == brute_automorphisms(t.graph()));
            std::set<Permutation> members(group.begin(), group.end());
            for (const auto & p : group) {
                CHECK(permuted(t.graph(), p) == t.graph());
                Permutation inverse(n);
                for (int i = 0; i < n; ++i)
                    inverse[p[i]] = i;
                CHECK(members.contains(inverse));
                for (const auto & q : group) {
                    Permutation pq(n);
                    for (int i = 0; i < n; ++i)
                        pq[i] = p[q[i]];
                    CHECK(members.contains(pq));
                }
            }
        }
}

TEST_CASE("vertex transitivity")
{
    CHECK(is_vertex_transitive(named_target(NamedTarget::T5)));
    CHECK_FALSE(is_vertex_transitive(named_target(NamedTarget::T4)));
    CHECK(is_vertex_transitive(Target(OrientedGraph(1, {{0, 0}}))));
    CHECK(is_vertex_transitive(named_target(NamedTarget::C3)));
}

TEST_CASE("degree profiles")
{
    auto t5 = degree_profile(named_target(NamedTarget::T5));
    for (int v = 0; v < 5; ++v) {
        CHECK(t5.in_degree[v] == 3);
        CHECK(t5.out_degree[v] == 3);
    }
    auto t4 = degree_profile(named_target(NamedTarget::T4));
    CHECK(t4.out_degree == std::vector<int>{3, 3, 2, 2});
    CHECK(t4.high_degree.empty());

    auto tt6 = degree_profile(reflexive_transitive_tournament(6));
    CHECK(tt6.out_degree[0] == 6);
    CHECK(tt6.high_degree.front() == 0);
}

TEST_CASE("colour names")
{
    CHECK(colour_name(0) == "a");
    CHECK(colour_name(4) == "e");
    CHECK(parse_colour("d") == 3);
    CHECK(parse_colour(colour_name(30)) == 30);
    CHECK_THROWS_AS(parse_colour("?"), Error);
}

TEST_CASE("serialize_target")
{
    auto text = serialize_target(named_target(NamedTarget::C3));
    CHECK(text.rfind("# target C3\n", 0) == 0);
    CHECK(parse_graph(text) == named_target(NamedTarget::C3).graph());
}
