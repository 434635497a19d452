#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace redlb {

// Subcommand bodies behind the CLI front end. Each takes the JSON config
// text, writes CSV to `out` and diagnostics to `diag`, and returns the
// process exit code: 0 success, 1 I/O or parse error, 2 domain error
// (instability / degeneracy).
int cmd_analytic(const std::string& config_text, std::ostream& out, std::ostream& diag);
int cmd_simulate(const std::string& config_text, std::ostream& out, std::ostream& diag,
                 std::optional<std::uint64_t> seed_override, int threads);
int cmd_sweep(const std::string& config_text, std::ostream& out, std::ostream& diag,
              std::optional<std::uint64_t> seed_override, int threads);
int cmd_validate(const std::string& config_text, std::ostream& out, std::ostream& diag,
                 std::optional<std::uint64_t> seed_override, int threads);

// Path-based wrapper shared by the CLI: reads the config file, dispatches on
// the subcommand name, and writes to out_path ("-" for stdout).
int run_command(const std::string& subcommand, const std::string& config_path,
                const std::string& out_path, std::optional<std::uint64_t> seed_override,
                int threads, std::ostream& diag);

}  // namespace redlb
