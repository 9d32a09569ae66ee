#include <injhom/check/acceptance.hpp>

#include <CLI11.hpp>

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Acceptance suite"};
    injhom::check::AcceptanceOptions options;
    std::vector<int> only;
    app.add_option("--seed", options.seed, "Seed for the random batteries");
    app.add_flag("--quick", options.quick, "Skip the stretch checks");
    app.add_option("--criterion", only, "Run only these criteria")->check(CLI::Range(1, injhom::check::criterion_count));
    CLI11_PARSE(app, argc, argv);

    std::vector<injhom::check::CriterionResult> results;
    auto report = [](const injhom::check::CriterionResult & r) { std::cout << r.format() << std::endl; };
    if (only.empty())
        results = injhom::check::run_acceptance(options, report);
    else
        for (int k : only) {
            results.push_back(injhom::check::run_criterion(k, options));
            report(results.back());
        }
    return injhom::check::all_gating_passed(results) ? 0 : 1;
}
