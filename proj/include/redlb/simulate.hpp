#pragma once

#include <cstdint>
#include <vector>

#include "redlb/model.hpp"

namespace redlb {

struct SimConfig {
    PolicyParams params;
    std::int64_t n_arrivals = 100000;  // jobs per replication
    double warmup_fraction = 0.1;      // leading jobs excluded from statistics
    int n_replications = 20;
    std::uint64_t seed = 1;
    // Optional probe: also estimate P(R > tail_probe_x | admitted).
    double tail_probe_x = -1.0;  // < 0 disables
    // Reservoir cap (total across replications) for workload-at-arrival
    // samples observed by replicas directed at the tagged queue 0.
    int max_workload_samples = 100000;

    void validate() const;  // throws InvalidConfig
};

struct SimStats {
    double tau_hat = 0.0;  // mean over replication means, admitted jobs only
    double tau_ci_halfwidth = 0.0;
    double p_loss_hat = 0.0;
    double p_loss_ci_halfwidth = 0.0;
    std::int64_t n_admitted = 0;
    std::int64_t n_lost = 0;
    double tail_prob_hat = 0.0;  // valid only when the probe is enabled
    double tail_prob_ci_halfwidth = 0.0;
    std::vector<double> workload_samples;
};

// Discrete-event simulation of the exact finite-N system: Poisson arrivals
// of rate N*lambda, probabilistic d-fold replication to distinct servers,
// threshold discard at arrival (FCFS workload equals queueing delay), lazy
// workload decay. Confidence intervals are normal-approximation across
// replications; replications run in parallel when threads != 1 and the merge
// is independent of completion order.
SimStats run(const SimConfig& config, int threads = 1);

struct ConvergencePoint {
    int n_servers;
    double tau_hat;
    double tau_ci_halfwidth;
    double tau_analytic;
    double rel_gap;  // |tau_hat - tau_analytic| / tau_analytic
    double p_loss_hat;
    double p_loss_analytic;
};

// Runs the simulator over a grid of server counts against the cavity-queue
// prediction, for validating the asymptotic-independence approximation.
std::vector<ConvergencePoint> convergence_study(const PolicyParams& params,
                                                const std::vector<int>& n_grid,
                                                const SimConfig& base_config,
                                                int threads = 1);

}  // namespace redlb
