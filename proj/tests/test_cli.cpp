#include <injhom/reductions.hpp>

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>

using namespace injhom;

namespace {
    struct Run {
        int exit_code;
        std::string out;
    };

    auto run(const std::string & arguments, const std::string & environment = "") -> Run
    {
        std::string command = environment + " " + INJHOM_CLI_PATH + " " + arguments + " 2>&1";
        FILE * pipe = ::popen(command.c_str(), "r");
        REQUIRE(pipe);
        std::string out;
        std::array<char, 4096> buffer;
        while (auto n = std::fread(buffer.data(), 1, buffer.size(), pipe))
            out.append(buffer.data(), n);
        int status = ::pclose(pipe);
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
    }

    auto count(const std::string & haystack, const std::string & needle) -> std::size_t
    {
        std::size_t n = 0;
        for (auto at = haystack.find(needle); at != std::string::npos; at = haystack.find(needle, at + 1))
            ++n;
        return n;
    }

    struct Scratch {
        std::filesystem::path dir;
        Scratch() :
            dir(std::filesystem::temp_directory_path() / ("cli_" + std::to_string(::getpid())))
        {
            std::filesystem::create_directories(dir);
        }
        ~Scratch() { std::filesystem::remove_all(dir); }
        auto file(const std::string & name, const std::string & text) const -> std::string
        {
            auto path = (dir / name).string();
            write_text_file(path, text);
            return path;
        }
        auto path(const std::string & name) const -> std::string { return (dir / name).string(); }
    };
}

TEST_CASE("cli solve")
{
    Scratch s;
    auto cycle = s.file("cycle.graph", serialize_graph(directed_cycle(3)));
    auto sat = run("solve --input " + cycle + " --target C3 --mode iot");
    CHECK(sat.exit_code == 0);
    CHECK(sat.out == "Sat\n0=a 1=b 2=c\n");

    auto star = s.file("star.graph", serialize_graph(out_star(4)));
    auto unsat = run("solve --input " + star + " --target T4 --mode ios");
    CHECK(unsat.exit_code == 1);
    CHECK(unsat.out == "Unsat\n");

    auto hx = default_asset_dir() + "/Hx.graph";
    auto all = run("solve --input " + hx + " --target T4 --mode ios --enumerate all");
    CHECK(all.exit_code == 0);
    auto witnesses = count(all.out, "\n0=");
    CHECK(witnesses > 0);
    CHECK(count(all.out, " 31=d") == witnesses);
    CHECK(count(all.out, " 3=a ") == witnesses);

    auto orbits = run("solve --input " + cycle + " --target T5 --mode in --enumerate all --mod-aut");
    CHECK(orbits.exit_code == 0);
    CHECK(orbits.out.find("orbits ") != std::string::npos);

    auto fixed = run("solve --input " + cycle + " --target C3 --mode iot --fixed 0=b");
    CHECK(fixed.out == "Sat\n0=b 1=c 2=a\n");

    auto fast = run("solve --input " + cycle + " --target TT2 --mode in --fast-small");
    CHECK(fast.exit_code == 0);
    CHECK(fast.out.find("2-SAT") != std::string::npos);

    CHECK(run("solve --input " + s.path("missing.graph") + " --target C3").exit_code == 2);
    CHECK(run("solve --input " + cycle + " --target C3 --mode sideways").exit_code == 2);
    CHECK(run("solve --input " + cycle + " --target C3 --fixed 9=a").exit_code == 2);
    CHECK(run("solve --input " + hx + " --target T4 --enumerate all --budget 2").exit_code == 2);
}

TEST_CASE("cli reduce, then solve and project back")
{
    Scratch s;
    auto k4 = s.file("k4.txt", serialize_undirected(complete_graph(4)));
    auto reduced = run("reduce --kind ios-t4 --input " + k4 + " --output " + s.path("k4.graph"));
    CHECK(reduced.exit_code == 0);
    CHECK(reduced.out.find("4 H_x, 6 H_e") != std::string::npos);
    CHECK(std::filesystem::exists(s.path("k4.graph.map")));

    auto k3 = s.file("k3.txt", serialize_undirected(complete_graph(3)));
    REQUIRE(run("reduce --kind ios-t4 --input " + k3 + " --output " + s.path("k3.graph")).exit_code == 0);
    auto solved = run("solve --input " + s.path("k3.graph") + " --target T4 --mode ios --project " + s.path("k3.graph.map"));
    CHECK(solved.exit_code == 0);
    auto at = solved.out.find("edges: ");
    REQUIRE(at != std::string::npos);
    auto line = solved.out.substr(at + 7, solved.out.find('\n', at) - at - 7);
    auto triangle = complete_graph(3);
    EdgeColouring colouring;
    for (const auto & [u, v] : triangle.edges()) {
        auto key = std::to_string(u) + "-" + std::to_string(v) + "=";
        auto pos = line.find(key);
        REQUIRE(pos != std::string::npos);
        colouring.push_back(parse_colour(line.substr(pos + key.size(), 1)));
    }
    CHECK(is_proper_edge_colouring(triangle, colouring));

    // The written instance matches a direct builder call.
    CHECK(parse_graph(read_text_file(s.path("k4.graph"))).arcs() == build_ios_t4(complete_graph(4)).graph.arcs());
    CHECK(read_text_file(s.path("k4.graph.map")) == serialize_map(build_ios_t4(complete_graph(4))));

    auto cycle = s.file("cycle.graph", serialize_graph(directed_cycle(3)));
    auto collapse = run("reduce --kind collapse-ios --input " + cycle + " --output " + s.path("x.graph") + " --target T4 --pivot a");
    CHECK(collapse.exit_code == 2);
    CHECK(collapse.out.find("DegreeTooLow") != std::string::npos);
    CHECK(run("reduce --kind collapse-iot --input " + cycle + " --output " + s.path("y.graph") + " --target TT5 --pivot e --direction in").exit_code == 0);
    CHECK(run("reduce --kind ios-t5 --input " + cycle + " --output " + s.path("z.graph")).exit_code == 0);
    auto ring = run("solve --input " + s.path("z.graph") + " --target T5 --mode ios --project " + s.path("z.graph.map"));
    CHECK(ring.exit_code == 0);
    CHECK(ring.out.find("source: ") != std::string::npos);

    auto k5 = s.file("k5.txt", serialize_undirected(complete_graph(5)));
    CHECK(run("reduce --kind ios-t4 --input " + k5 + " --output " + s.path("k5.graph")).exit_code == 2);
    CHECK(run("reduce --kind sideways --input " + k4 + " --output " + s.path("w.graph")).exit_code == 2);
}

TEST_CASE("cli verify-gadget")
{
    auto hx = run("verify-gadget --gadget Hx --lemma hx-forced");
    CHECK(hx.exit_code == 0);
    CHECK(hx.out.find("PASS") != std::string::npos);
    CHECK(hx.out.find("FAIL") == std::string::npos);

    auto he = run("verify-gadget --gadget He");
    CHECK(he.exit_code == 0);

    Scratch s;
    for (const auto & entry : std::filesystem::directory_iterator(default_asset_dir()))
        std::filesystem::copy_file(entry.path(), s.dir / entry.path().filename());
    write_text_file(s.path("Hx.graph"), "n 2\na 0 1\na 1 0\n");
    auto corrupted = run("verify-gadget --gadget Hx", "INJHOM_ASSET_DIR=" + s.dir.string());
    CHECK(corrupted.exit_code == 2);

    // A gadget that parses but no longer satisfies its contract.
    write_text_file(s.path("Hx.graph"), read_text_file(default_asset_dir() + "/Hx.graph"));
    write_text_file(s.path("Fx.graph"), "n 7\na 4 0\na 0 1\na 0 2\na 0 3\nport sq0 1\nport sq1 2\nport sq2 3\n");
    auto broken = run("verify-gadget --gadget Fx", "INJHOM_ASSET_DIR=" + s.dir.string());
    CHECK(broken.exit_code == 1);
    auto selfcheck = run("selfcheck --criterion 6", "INJHOM_ASSET_DIR=" + s.dir.string());
    CHECK(selfcheck.exit_code == 1);
    CHECK(selfcheck.out.find("FAIL [6]") != std::string::npos);
    CHECK(selfcheck.out.find("Fx") != std::string::npos);
}

TEST_CASE("cli catalog")
{
    CHECK(run("catalog --list n=4").out.starts_with("4 tournaments\n"));
    CHECK(run("catalog --list n=5").out.starts_with("12 tournaments\n"));
    auto t5 = run("catalog --show T5");
    CHECK(t5.exit_code == 0);
    CHECK(t5.out.find("vertex-transitive: true") != std::string::npos);
    CHECK(t5.out.find("arcs: ab ac bc bd cd ce da de ea eb") != std::string::npos);
    CHECK(run("catalog --aut TT3").out == "1 automorphisms\na->a b->b c->c\n");
    CHECK(run("catalog --aut T5").out.starts_with("5 automorphisms\n"));
    CHECK(run("catalog --list n=0").exit_code == 2);
    CHECK(run("catalog --list n=9").exit_code == 2);
}

TEST_CASE("cli oracle and selfcheck")
{
    Scratch s;
    auto k4 = run("oracle --input " + s.file("k4.txt", serialize_undirected(complete_graph(4))));
    CHECK(k4.exit_code == 0);
    CHECK(k4.out.starts_with("Sat\n"));
    CHECK(run("oracle --input " + s.file("p.txt", serialize_undirected(petersen_graph()))).exit_code == 1);
    CHECK(run("oracle --input " + s.file("k5.txt", serialize_undirected(complete_graph(5)))).exit_code == 2);

    auto quick = run("selfcheck --criterion 1 --criterion 3");
    CHECK(quick.exit_code == 0);
    CHECK(count(quick.out, "PASS") == 2);
    CHECK(run("").exit_code == 2);
}
