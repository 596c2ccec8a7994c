#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "casimir/commands.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

int main(int argc, char** argv)
{
    CLI::App app{"Casimir force between dissipative slabs in 1+1 dimensions"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    bool reproducible = false;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "INI run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output file (a directory for sweep-sigma)");
        sub->add_flag("--reproducible", reproducible, "omit the timestamp line from CSV output");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };
    CLI::App* force = app.add_subcommand("force", "force breakdown for one configuration");
    CLI::App* sweep = app.add_subcommand("sweep-sigma", "ratio of thermal to band-squeezed forces over sigma");
    CLI::App* limits = app.add_subcommand("limits", "dissipationless, squeezing and Lifshitz limits");
    CLI::App* verify = app.add_subcommand("verify", "consistency checks; exits 4 on failure");
    for (CLI::App* s : {force, sweep, limits, verify}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    CommandOptions opt;
    if (!out.empty()) opt.out = out;
    opt.reproducible = reproducible;
    if (threads > 0) opt.threads = threads;

    try {
        const RunConfig cfg = load_config(config);
        if (force->parsed()) return cmd_force(cfg, opt, std::cout);
        if (sweep->parsed()) return cmd_sweep_sigma(cfg, opt, std::cout);
        if (limits->parsed()) return cmd_limits(cfg, opt, std::cout);
        return cmd_verify(cfg, opt, std::cout);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return exit_config;
    } catch (const DomainError& e) {
        fmt::print(stderr, "invalid parameter: {}\n", e.what());
        return exit_config;
    } catch (const NaNIntegrand& e) {
        fmt::print(stderr, "numerical error: {} (abscissa {:.17g})\n", e.what(), e.abscissa);
        return exit_numerical;
    } catch (const NonConvergence& e) {
        fmt::print(stderr, "numerical error: {}\n", e.what());
        return exit_numerical;
    } catch (const SingularEvaluation& e) {
        fmt::print(stderr, "numerical error: {}\n", e.what());
        return exit_numerical;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
