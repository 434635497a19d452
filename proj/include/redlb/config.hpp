#pragma once

#include <string>
#include <vector>

#include "redlb/model.hpp"
#include "redlb/simulate.hpp"
#include "redlb/sweep.hpp"

namespace redlb {

// JSON configuration schemas, one per CLI subcommand. Field names mirror the
// in-code structs in lower_snake_case; infinite thresholds are encoded as the
// string "inf". Parsers throw InvalidConfig on malformed input.

struct ValidateSpec {
    PolicyParams params;
    std::vector<int> n_grid;
    SimConfig sim;
};

PolicyParams parse_params_json(const std::string& text);
SimConfig parse_sim_config_json(const std::string& text);  // {"params":…, "sim":…}
SweepSpec parse_sweep_spec_json(const std::string& text);
ValidateSpec parse_validate_spec_json(const std::string& text);

std::string read_file(const std::string& path);  // throws InvalidConfig on I/O failure

}  // namespace redlb
