// Command-line front end: equilibrium metrics, finite-N simulation, parameter
// sweeps, and convergence studies for the pi(p, T1, T2) redundancy policy
// with server-side threshold discard. Emits CSV.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "redlb/cli_ops.hpp"

int main(int argc, char** argv) {
    CLI::App app{"probabilistic-redundancy load balancing: analytics and simulation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "-";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    auto add_common = [&](CLI::App* sub, bool takes_seed) {
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_path, "output CSV path ('-' for stdout)");
        if (takes_seed) {
            sub->add_option("--seed", seed, "override the simulation base seed")
                ->each([&](const std::string&) { seed_set = true; });
        }
        sub->add_option("--threads", threads, "worker threads (0 = auto)");
    };

    add_common(app.add_subcommand("analytic", "equilibrium workload and response metrics"),
               false);
    add_common(app.add_subcommand("simulate", "finite-N discrete-event simulation"), true);
    add_common(app.add_subcommand("sweep", "evaluate a parameter grid"), true);
    add_common(app.add_subcommand("validate", "simulation vs analytic over server counts"),
               true);

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    const std::optional<std::uint64_t> seed_override =
        seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt;
    return redlb::run_command(sub, config_path, out_path, seed_override, threads, std::cerr);
}
