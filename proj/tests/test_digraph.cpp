#include <injhom/check/oracle.hpp>
#include <injhom/digraph.hpp>
#include <injhom/tournament.hpp>

#include <doctest.h>

#include <random>

using namespace injhom;

namespace {
    auto code_of(auto && f) -> ErrorCode
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.code();
        }
        FAIL("no error thrown");
        return ErrorCode::InvalidArgument;
    }
}

TEST_CASE("parse_graph reads arcs and loops")
{
    auto g = parse_graph("n 2\na 0 1");
    CHECK(g.vertex_count() == 2);
    CHECK(g.arcs() == std::vector<Arc>{{0, 1}});

    auto loop = parse_graph("n 1\na 0 0");
    CHECK(neighbourhood(loop, 0, Direction::In) == std::vector<VertexId>{0});
    CHECK(neighbourhood(loop, 0, Direction::Out) == std::vector<VertexId>{0});
}

TEST_CASE("parse_graph rejects bad input")
{
    CHECK(code_of([] { parse_graph("n 2\na 0 1\na 1 0"); }) == ErrorCode::DigonViolation);
    CHECK(code_of([] { parse_graph("n 2\na 0 1\na 0 1"); }) == ErrorCode::DuplicateArc);
    CHECK(code_of([] { parse_graph("n 2\na 0 2"); }) == ErrorCode::VertexOutOfRange);
    CHECK(code_of([] { parse_graph("n 2\nb 0 1"); }) == ErrorCode::MalformedLine);
    CHECK(code_of([] { parse_graph("a 0 1"); }) == ErrorCode::MalformedLine);
    CHECK(code_of([] { parse_graph("n 2\na 0"); }) == ErrorCode::MalformedLine);
}

TEST_CASE("parse_graph skips comments and reads ports")
{
    auto doc = parse_document("# gadget\nn 3\n\na 0 1\nport tail 0\nport head 2\n");
    CHECK(doc.graph.vertex_count() == 3);
    CHECK(doc.ports.at("tail") == 0);
    CHECK(doc.ports.at("head") == 2);
    CHECK(serialize_document(doc) == "n 3\na 0 1\nport head 2\nport tail 0");
}

TEST_CASE("serialize_graph output")
{
    CHECK(serialize_graph(OrientedGraph{}) == "n 0");
    CHECK(serialize_graph(parse_graph("n 1\na 0 0")) == "n 1\na 0 0");
    CHECK(serialize_graph(directed_cycle(3)) == "n 3\na 0 1\na 1 2\na 2 0");
}

TEST_CASE("serialize and parse round-trip on random graphs")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = check::random_oriented_graph(1 + trial % 9, 0.4, 0.2, rng);
        auto text = serialize_graph(g);
        CHECK(parse_graph(text) == g);
        CHECK(serialize_graph(parse_graph(text)) == text);
    }
}

TEST_CASE("neighbourhoods follow the loop convention")
{
    OrientedGraph single(2, {{0, 1}});
    CHECK(neighbourhood(single, 1, Direction::In) == std::vector<VertexId>{0});

    OrientedGraph g(2, {{0, 0}, {0, 1}});
    CHECK(neighbourhood(g, 0, Direction::Out) == std::vector<VertexId>{0, 1});
    CHECK(neighbourhood(g, 0, Direction::Both) == std::vector<VertexId>{0, 1});
    CHECK(code_of([&] { neighbourhood(g, 2, Direction::In); }) == ErrorCode::VertexOutOfRange);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto h = check::random_oriented_graph(6, 0.5, 0.5, rng);
        for (VertexId v = 0; v < 6; ++v) {
            auto in = neighbourhood(h, v, Direction::In);
            auto out = neighbourhood(h, v, Direction::Out);
            bool in_has = std::find(in.begin(), in.end(), v) != in.end();
            bool out_has = std::find(out.begin(), out.end(), v) != out.end();
            CHECK(in_has == h.has_loop(v));
            CHECK(out_has == h.has_loop(v));
            std::vector<VertexId> both;
            std::set_union(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(both));
            CHECK(neighbourhood(h, v, Direction::Both) == both);
        }
    }
}

TEST_CASE("disjoint_union")
{
    std::vector<OrientedGraph> two{OrientedGraph(2, {{0, 1}}), OrientedGraph(2, {{0, 1}})};
    auto u = disjoint_union(two);
    CHECK(u.graph.vertex_count() == 4);
    CHECK(u.graph.arc_count() == 2);
    CHECK(u.offsets == std::vector<VertexId>{0, 2});

    CHECK(disjoint_union({}).graph.vertex_count() == 0);

    std::vector<OrientedGraph> copies(5, directed_cycle(3));
    auto many = disjoint_union(copies);
    CHECK(many.graph.vertex_count() == 15);
    CHECK(many.graph.arc_count() == 15);
}

TEST_CASE("identify_vertices")
{
    OrientedGraph g(3, {{0, 1}});
    std::vector<std::pair<VertexId, VertexId>> merge{{1, 2}};
    auto r = identify_vertices(g, merge);
    CHECK(r.graph.vertex_count() == 2);
    CHECK(r.graph.arcs() == std::vector<Arc>{{0, 1}});

    OrientedGraph dup(3, {{0, 1}, {0, 2}});
    auto collapsed = identify_vertices(dup, std::vector<std::pair<VertexId, VertexId>>{{2, 1}});
    CHECK(collapsed.graph.arc_count() == 1);
    CHECK(collapsed.graph.has_arc(collapsed.relabel[0], collapsed.relabel[2]));

    OrientedGraph digon(3, {{1, 0}, {0, 2}});
    CHECK(code_of([&] { identify_vertices(digon, std::vector<std::pair<VertexId, VertexId>>{{2, 1}}); }) == ErrorCode::DigonViolation);

    OrientedGraph path(3, {});
    CHECK(code_of([&] { identify_vertices(path, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}, {2, 0}}); }) == ErrorCode::SelfMergeCycle);
}

TEST_CASE("identify_vertices reduces the vertex count by the number of merges")
{
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto g = check::random_oriented_graph(7, 0.25, 0.1, rng);
        std::vector<std::pair<VertexId, VertexId>> pairs;
        std::vector<int> component(7);
        for (int i = 0; i < 7; ++i)
            component[i] = i;
        for (int m = 0; m < 3; ++m) {
            VertexId a = rng() % 7, b = rng() % 7;
            if (component[a] == component[b])
                continue;
            int old = component[b];
            for (auto & c : component)
                if (c == old)
                    c = component[a];
            pairs.emplace_back(a, b);
        }
        try {
            auto r = identify_vertices(g, pairs);
            CHECK(r.graph.vertex_count() == 7 - static_cast<int>(pairs.size()));
            for (const auto & arc : r.graph.arcs())
                CHECK((arc.tail == arc.head || ! r.graph.has_arc(arc.head, arc.tail)));
            ++checked;
        }
        catch (const Error & e) {
            CHECK(e.code() == ErrorCode::DigonViolation);
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("induced_subgraph")
{
    auto t4 = named_target(NamedTarget::T4).graph();
    CHECK(induced_subgraph(t4, std::vector<VertexId>{}).graph.vertex_count() == 0);
    std::vector<VertexId> all{0, 1, 2, 3};
    CHECK(induced_subgraph(t4, all).graph == t4);

    auto bc = induced_subgraph(t4, std::vector<VertexId>{1, 2}).graph;
    CHECK(bc == OrientedGraph(2, {{0, 0}, {0, 1}, {1, 1}}));
    CHECK(code_of([&] { induced_subgraph(t4, std::vector<VertexId>{4}); }) == ErrorCode::VertexOutOfRange);
}

TEST_CASE("is_strongly_connected")
{
    CHECK(is_strongly_connected(directed_cycle(3)));
    CHECK_FALSE(is_strongly_connected(named_target(NamedTarget::TT3).graph()));
    CHECK(is_strongly_connected(named_target(NamedTarget::T4).graph()));
}
