#include "redlb/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "redlb/analytic.hpp"
#include "redlb/rng.hpp"

namespace redlb {

void SimConfig::validate() const {
    params.validate();
    if (n_arrivals < 1000) throw InvalidConfig("n_arrivals must be >= 1000");
    if (!(warmup_fraction >= 0.0 && warmup_fraction <= 0.5)) {
        throw InvalidConfig("warmup_fraction must lie in [0, 0.5]");
    }
    if (n_replications < 1) throw InvalidConfig("n_replications must be >= 1");
    if (max_workload_samples < 0) throw InvalidConfig("max_workload_samples must be >= 0");
}

namespace {

struct RepResult {
    double tau_mean = 0.0;
    double loss_frac = 0.0;
    double tail_frac = 0.0;
    std::int64_t admitted = 0;
    std::int64_t lost = 0;
    std::vector<double> samples;
};

// One replication, strictly sequential. Draw order per job is fixed:
// interarrival, primary position, replication coin (only for 0 < p < 1),
// d-1 secondary positions, then one service draw per admitted replica in
// dispatch order. The reservoir uses a separate stream so sampling does not
// perturb the event dynamics.
RepResult run_replication(const SimConfig& cfg, int rep_index, int sample_cap) {
    const PolicyParams& q = cfg.params;
    const int n = q.n_servers;
    const std::uint64_t stream = cfg.seed + static_cast<std::uint64_t>(rep_index);
    SplitMix64 rng(stream);
    SplitMix64 reservoir_rng(stream ^ 0xC2B2AE3D27D4EB4FULL);

    std::vector<double> workload(n, 0.0);
    std::vector<double> last_update(n, 0.0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> selected(q.d);

    const std::int64_t warmup =
        static_cast<std::int64_t>(cfg.warmup_fraction * static_cast<double>(cfg.n_arrivals));
    const double arrival_rate = static_cast<double>(n) * q.lambda;
    const bool probe = cfg.tail_probe_x >= 0.0;

    RepResult out;
    out.samples.reserve(sample_cap);
    double now = 0.0;
    double sum_response = 0.0;
    std::int64_t tail_count = 0;
    std::int64_t reservoir_seen = 0;

    for (std::int64_t job = 0; job < cfg.n_arrivals; ++job) {
        now += rng.exponential(arrival_rate);
        const bool counted = job >= warmup;

        // primary: draw a position, then park it at the back so secondary
        // sampling ranges over the other n-1 servers
        const int q_pos = static_cast<int>(rng.uniform_below(n));
        const int primary = perm[q_pos];
        std::swap(perm[q_pos], perm[n - 1]);
        selected[0] = primary;
        int n_replicas = 1;

        bool replicate;
        if (q.p >= 1.0) {
            replicate = true;
        } else if (q.p <= 0.0) {
            replicate = false;
        } else {
            replicate = rng.bernoulli(q.p);
        }
        if (replicate) {
            // partial Fisher-Yates over the front n-1 slots: distinct
            // secondaries, uniform without replacement
            for (int j = 0; j < q.d - 1; ++j) {
                const int r = j + static_cast<int>(rng.uniform_below(n - 1 - j));
                std::swap(perm[j], perm[r]);
                selected[1 + j] = perm[j];
            }
            n_replicas = q.d;
        }

        // all replicas observe workloads at the same instant; servers are
        // distinct so admissions cannot interact within one job
        double best = kInf;
        for (int j = 0; j < n_replicas; ++j) {
            const int s = selected[j];
            double w = workload[s] - (now - last_update[s]);
            if (w < 0.0) w = 0.0;
            if (s == 0 && counted && sample_cap > 0) {
                ++reservoir_seen;
                if (static_cast<int>(out.samples.size()) < sample_cap) {
                    out.samples.push_back(w);
                } else {
                    const auto slot = reservoir_rng.uniform_below(
                        static_cast<std::uint64_t>(reservoir_seen));
                    if (slot < static_cast<std::uint64_t>(sample_cap)) {
                        out.samples[static_cast<std::size_t>(slot)] = w;
                    }
                }
            }
            const double threshold = (j == 0) ? q.t1 : q.t2;
            if (w <= threshold) {
                const double service = rng.exponential(q.mu);
                workload[s] = w + service;
                if (w + service < best) best = w + service;
            } else {
                workload[s] = w;  // replica discarded, workload just decayed
            }
            last_update[s] = now;
        }

        if (counted) {
            if (best != kInf) {
                ++out.admitted;
                sum_response += best;
                if (probe && best > cfg.tail_probe_x) ++tail_count;
            } else {
                ++out.lost;
            }
        }
    }

    const std::int64_t jobs = out.admitted + out.lost;
    out.tau_mean = out.admitted > 0 ? sum_response / static_cast<double>(out.admitted) : 0.0;
    out.loss_frac = jobs > 0 ? static_cast<double>(out.lost) / static_cast<double>(jobs) : 0.0;
    out.tail_frac =
        out.admitted > 0 ? static_cast<double>(tail_count) / static_cast<double>(out.admitted)
                         : 0.0;
    return out;
}

struct MeanCi {
    double mean = 0.0;
    double ci_halfwidth = 0.0;
};

MeanCi across_replications(const std::vector<double>& values) {
    const std::size_t r = values.size();
    MeanCi out;
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(r);
    if (r < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(r - 1));
    out.ci_halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(r));
    return out;
}

void run_indexed(int count, int threads, const std::function<void(int)>& body) {
    if (threads == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

int resolve_threads(int threads, int count) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return std::max(1, std::min(threads, count));
}

}  // namespace

SimStats run(const SimConfig& config, int threads) {
    config.validate();
    const int reps = config.n_replications;
    const int per_rep_cap =
        config.max_workload_samples > 0
            ? std::max(1, config.max_workload_samples / reps)
            : 0;

    std::vector<RepResult> results(reps);
    run_indexed(reps, resolve_threads(threads, reps), [&](int r) {
        results[r] = run_replication(config, r, per_rep_cap);
    });

    // merge in replication order: independent of completion order
    std::vector<double> taus, losses, tails;
    SimStats stats;
    for (const RepResult& r : results) {
        taus.push_back(r.tau_mean);
        losses.push_back(r.loss_frac);
        tails.push_back(r.tail_frac);
        stats.n_admitted += r.admitted;
        stats.n_lost += r.lost;
        for (double s : r.samples) {
            if (static_cast<int>(stats.workload_samples.size()) < config.max_workload_samples) {
                stats.workload_samples.push_back(s);
            }
        }
    }
    const MeanCi tau = across_replications(taus);
    const MeanCi loss = across_replications(losses);
    const MeanCi tail = across_replications(tails);
    stats.tau_hat = tau.mean;
    stats.tau_ci_halfwidth = tau.ci_halfwidth;
    stats.p_loss_hat = loss.mean;
    stats.p_loss_ci_halfwidth = loss.ci_halfwidth;
    stats.tail_prob_hat = tail.mean;
    stats.tail_prob_ci_halfwidth = tail.ci_halfwidth;
    return stats;
}

std::vector<ConvergencePoint> convergence_study(const PolicyParams& params,
                                                const std::vector<int>& n_grid,
                                                const SimConfig& base_config,
                                                int threads) {
    const WorkloadLaw law = make_workload_law(params);
    const ServiceLaw service = ServiceLaw::exponential(params.mu);
    const ResponseMetrics analytic = mean_response_time(law, service);

    std::vector<ConvergencePoint> out;
    for (int n : n_grid) {
        SimConfig cfg = base_config;
        cfg.params = params;
        cfg.params.n_servers = n;
        const SimStats stats = run(cfg, threads);
        ConvergencePoint pt;
        pt.n_servers = n;
        pt.tau_hat = stats.tau_hat;
        pt.tau_ci_halfwidth = stats.tau_ci_halfwidth;
        pt.tau_analytic = analytic.tau;
        pt.rel_gap = std::fabs(stats.tau_hat - analytic.tau) / analytic.tau;
        pt.p_loss_hat = stats.p_loss_hat;
        pt.p_loss_analytic = analytic.p_loss;
        out.push_back(pt);
    }
    return out;
}

}  // namespace redlb
