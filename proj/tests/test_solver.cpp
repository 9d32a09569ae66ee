#include <injhom/check/oracle.hpp>
#include <injhom/solver.hpp>

#include <doctest.h>

#include <random>
#include <set>

using namespace injhom;

namespace {
    const std::vector<InjectivityMode> all_modes{InjectivityMode::InOnly, InjectivityMode::IosSeparate, InjectivityMode::IotTogether};

    auto options_for(InjectivityMode mode) -> SolveOptions
    {
        SolveOptions o;
        o.mode = mode;
        return o;
    }

    auto small_targets() -> std::vector<Target>
    {
        return {named_target(NamedTarget::C3), named_target(NamedTarget::TT3), named_target(NamedTarget::T4), named_target(NamedTarget::T5)};
    }
}

TEST_CASE("verify_colouring")
{
    auto c3 = named_target(NamedTarget::C3);
    CHECK(verify_colouring(directed_cycle(3), c3, {0, 1, 2}, InjectivityMode::IotTogether).valid);

    auto t4 = named_target(NamedTarget::T4);
    CHECK(verify_colouring(OrientedGraph(2, {{0, 1}}), t4, {0, 0}, InjectivityMode::IosSeparate).valid);

    auto clash = verify_colouring(in_star(2), t4, {0, 0, 0}, InjectivityMode::InOnly);
    REQUIRE_FALSE(clash.valid);
    REQUIRE(clash.violation);
    CHECK(clash.violation->kind == Violation::Kind::InjectivityClash);
    CHECK(clash.violation->centre == 0);
    CHECK(std::set<VertexId>{clash.violation->first, clash.violation->second} == std::set<VertexId>{1, 2});

    auto broken = verify_colouring(OrientedGraph(2, {{0, 1}}), c3, {1, 0}, InjectivityMode::InOnly);
    REQUIRE_FALSE(broken.valid);
    CHECK(broken.violation->kind == Violation::Kind::ArcNotPreserved);

    CHECK_THROWS_AS(verify_colouring(directed_cycle(3), c3, {0, 1}, InjectivityMode::InOnly), Error);
    CHECK_THROWS_AS(verify_colouring(directed_cycle(3), c3, {0, 1, unassigned}, InjectivityMode::InOnly), Error);
}

TEST_CASE("decide basics")
{
    auto t4 = named_target(NamedTarget::T4);
    auto star = decide(out_star(4), t4, options_for(InjectivityMode::IosSeparate));
    CHECK(star.status == SolveStatus::Unsat);

    for (const auto & t : small_targets())
        for (auto mode : all_modes) {
            auto r = decide(OrientedGraph(1, {}), t, options_for(mode));
            CHECK(r.status == SolveStatus::Sat);
            CHECK(r.witnesses.size() == 1);
        }

    auto empty = decide(OrientedGraph{}, t4, options_for(InjectivityMode::IosSeparate));
    CHECK(empty.status == SolveStatus::Sat);
}

TEST_CASE("decide validates fixed assignments")
{
    auto c3 = named_target(NamedTarget::C3);
    auto o = options_for(InjectivityMode::IosSeparate);
    o.fixed = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(decide(OrientedGraph(2, {{0, 1}}), c3, o), Error);
    o.fixed = {{5, 0}};
    CHECK_THROWS_AS(decide(OrientedGraph(2, {{0, 1}}), c3, o), Error);
    o.fixed = {{0, 7}};
    CHECK_THROWS_AS(decide(OrientedGraph(2, {{0, 1}}), c3, o), Error);
    o.fixed = {{1, 0}, {2, 0}};
    try {
        decide(in_star(2), c3, o);
        FAIL("expected an error");
    }
    catch (const Error & e) {
        CHECK(e.code() == ErrorCode::InvalidFixedAssignment);
    }

    o.fixed = {{0, 2}};
    auto r = decide(directed_cycle(3), c3, o);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.witnesses[0][0] == 2);
}

TEST_CASE("enumerate basics")
{
    auto c3 = named_target(NamedTarget::C3);
    CHECK(enumerate(OrientedGraph(1, {}), c3, options_for(InjectivityMode::IosSeparate)).count == 3);
    auto arc = enumerate(OrientedGraph(2, {{0, 1}}), c3, options_for(InjectivityMode::IosSeparate));
    auto oracle = check::naive_colourings(OrientedGraph(2, {{0, 1}}), c3.graph(), InjectivityMode::IosSeparate);
    CHECK(arc.witnesses == oracle);
    CHECK(arc.count == oracle.size());

    auto o = options_for(InjectivityMode::IosSeparate);
    o.limit = 2;
    auto limited = enumerate(OrientedGraph(2, {}), c3, o);
    CHECK(limited.witnesses.size() == 2);
    CHECK(limited.truncated);
}

TEST_CASE("enumerate and decide match the brute-force filter on all graphs with up to three vertices")
{
    for (int n = 0; n <= 3; ++n)
        for (const auto & g : check::all_oriented_graphs(n))
            for (const auto & t : small_targets())
                for (auto mode : all_modes) {
                    auto oracle = check::naive_colourings(g, t.graph(), mode);
                    auto all = enumerate(g, t, options_for(mode));
                    REQUIRE(all.witnesses == oracle);
                    auto one = decide(g, t, options_for(mode));
                    REQUIRE((one.status == SolveStatus::Sat) == ! oracle.empty());
                }
}

TEST_CASE("enumerate matches the brute-force filter on random graphs")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        auto g = check::random_oriented_graph(5 + trial % 2, 0.45, 0.15, rng);
        for (const auto & t : small_targets())
            for (auto mode : all_modes) {
                auto oracle = check::naive_colourings(g, t.graph(), mode);
                auto all = enumerate(g, t, options_for(mode));
                REQUIRE(all.witnesses == oracle);
                for (const auto & w : all.witnesses)
                    CHECK(verify_colouring(g, t, w, mode).valid);
            }
    }
}

TEST_CASE("witness sets are nested across modes")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 80; ++trial) {
        auto g = check::random_oriented_graph(6, 0.4, 0.1, rng);
        for (const auto & t : small_targets()) {
            auto in = enumerate(g, t, options_for(InjectivityMode::InOnly)).witnesses;
            auto ios = enumerate(g, t, options_for(InjectivityMode::IosSeparate)).witnesses;
            auto iot = enumerate(g, t, options_for(InjectivityMode::IotTogether)).witnesses;
            CHECK(std::includes(in.begin(), in.end(), ios.begin(), ios.end()));
            CHECK(std::includes(ios.begin(), ios.end(), iot.begin(), iot.end()));
        }
    }
}

TEST_CASE("witness sets are closed under target automorphisms")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = check::random_oriented_graph(5, 0.4, 0.1, rng);
        for (const auto & t : small_targets()) {
            auto ws = enumerate(g, t, options_for(InjectivityMode::IosSeparate)).witnesses;
            std::set<Colouring> set(ws.begin(), ws.end());
            for (const auto & w : ws)
                for (const auto & alpha : t.automorphisms())
                    CHECK(set.contains(compose(alpha, w)));
        }
    }
}

TEST_CASE("enumerate_mod_aut")
{
    auto t5 = named_target(NamedTarget::T5);
    auto single = enumerate_mod_aut(OrientedGraph(1, {}), t5, options_for(InjectivityMode::IotTogether));
    CHECK(single.count == 1);
    CHECK(single.orbit_sizes == std::vector<std::uint64_t>{5});

    auto tt3 = named_target(NamedTarget::TT3);
    CHECK(enumerate_mod_aut(OrientedGraph(1, {}), tt3, options_for(InjectivityMode::IotTogether)).count == 3);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = check::random_oriented_graph(5, 0.4, 0.1, rng);
        for (const auto & t : small_targets())
            for (auto mode : all_modes) {
                auto full = enumerate(g, t, options_for(mode));
                auto reduced = enumerate_mod_aut(g, t, options_for(mode));
                std::uint64_t total = 0;
                for (auto s : reduced.orbit_sizes)
                    total += s;
                CHECK(total == full.count);
            }
    }
}

TEST_CASE("enumerate_projected returns every distinct restriction")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = check::random_oriented_graph(6, 0.4, 0.1, rng);
        std::vector<VertexId> projection{static_cast<VertexId>(rng() % 6), static_cast<VertexId>(rng() % 6)};
        for (const auto & t : small_targets()) {
            auto full = enumerate(g, t, options_for(InjectivityMode::IosSeparate));
            std::set<Colouring> expected;
            for (const auto & w : full.witnesses) {
                Colouring p(6, unassigned);
                for (auto v : projection)
                    p[v] = w[v];
                expected.insert(p);
            }
            auto projected = enumerate_projected(g, t, options_for(InjectivityMode::IosSeparate), projection);
            CHECK(projected.witnesses == std::vector<Colouring>(expected.begin(), expected.end()));
        }
    }
}

TEST_CASE("node budget and worker split")
{
    auto t5 = named_target(NamedTarget::T5);
    auto o = options_for(InjectivityMode::InOnly);
    o.node_budget = 3;
    auto r = enumerate(OrientedGraph(6, {}), t5, o);
    CHECK(r.status == SolveStatus::BudgetExhausted);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = check::random_oriented_graph(6, 0.3, 0.1, rng);
        auto serial = enumerate(g, t5, options_for(InjectivityMode::IosSeparate));
        auto split_options = options_for(InjectivityMode::IosSeparate);
        split_options.workers = 3;
        auto split = enumerate(g, t5, split_options);
        CHECK(split.witnesses == serial.witnesses);
        CHECK((decide(g, t5, split_options).status == serial.status));
    }
}

TEST_CASE("determinism and witness formatting")
{
    std::mt19937_64 rng(1);
    auto g = check::random_oriented_graph(6, 0.4, 0.1, rng);
    auto t4 = named_target(NamedTarget::T4);
    auto a = enumerate(g, t4, options_for(InjectivityMode::IosSeparate));
    auto b = enumerate(g, t4, options_for(InjectivityMode::IosSeparate));
    CHECK(a.witnesses == b.witnesses);
    CHECK(format_witness({0, 3, 1}) == "0=a 1=d 2=b");
}

TEST_CASE("pigeonhole screen")
{
    auto t4 = named_target(NamedTarget::T4);
    CHECK_FALSE(pigeonhole_screen(out_star(4), t4, InjectivityMode::IosSeparate));
    CHECK(pigeonhole_screen(out_star(3), t4, InjectivityMode::IosSeparate));
    CHECK(pigeonhole_screen(out_star(4), t4, InjectivityMode::InOnly));
}
