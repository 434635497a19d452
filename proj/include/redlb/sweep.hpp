#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redlb/model.hpp"
#include "redlb/simulate.hpp"

namespace redlb {

enum class SweepAxis { Lambda, T, T2, D, P, NServers };

enum class SweepOutput { Tau, PLoss, TauAnalytic, TauSim, Gap, Improvement };

// One experiment grid: a base parameter point, the axis being varied, and the
// requested output columns. `sim` is required when tau_sim or gap is listed.
struct SweepSpec {
    PolicyParams base;
    SweepAxis axis = SweepAxis::Lambda;
    std::vector<double> values;
    std::vector<SweepOutput> outputs;
    std::optional<SimConfig> sim;

    void validate() const;  // throws InvalidConfig
};

std::string axis_name(SweepAxis axis);
std::string output_name(SweepOutput output);
SweepAxis axis_from_name(const std::string& name);
SweepOutput output_from_name(const std::string& name);

// Substitutes one axis value into the base parameters.
PolicyParams apply_axis(const PolicyParams& base, SweepAxis axis, double value);

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // formatted cells, axis order
    int points_succeeded = 0;
    std::vector<std::string> warnings;  // closed-form disagreement diagnostics
};

// Evaluates every grid point (in parallel when threads != 1) and buffers the
// rows in axis order. Per-point domain failures land in the trailing `error`
// column instead of aborting the sweep.
SweepTable run_sweep(const SweepSpec& spec, int threads = 1);

}  // namespace redlb
