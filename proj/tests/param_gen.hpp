#pragma once

// Shared test helper: reproducible random-but-stable policy parameter sets.

#include <vector>

#include "redlb/model.hpp"
#include "redlb/rng.hpp"

inline std::vector<redlb::PolicyParams> random_stable_params(int count,
                                                             std::uint64_t seed) {
    using redlb::kInf;
    redlb::SplitMix64 g(seed);
    std::vector<redlb::PolicyParams> out;
    while (static_cast<int>(out.size()) < count) {
        redlb::PolicyParams q;
        q.mu = 1.0;
        q.n_servers = 50;
        q.d = 1 + static_cast<int>(g.uniform_below(4));
        q.p = g.next_double();
        const int shape = static_cast<int>(g.uniform_below(4));
        switch (shape) {
            case 0: {  // identical finite thresholds
                q.t1 = q.t2 = 0.3 + 5.0 * g.next_double();
                q.lambda = 0.05 + 1.4 * g.next_double();
                break;
            }
            case 1: {  // distinct finite thresholds
                q.t2 = 0.2 + 2.0 * g.next_double();
                q.t1 = q.t2 + 0.1 + 3.0 * g.next_double();
                q.lambda = 0.05 + 1.4 * g.next_double();
                break;
            }
            case 2: {  // no loss: t1 = inf
                q.t1 = kInf;
                q.t2 = 0.2 + 3.0 * g.next_double();
                q.lambda = 0.05 + 0.85 * g.next_double();
                break;
            }
            default: {  // no discard at all
                q.t1 = q.t2 = kInf;
                q.lambda = 0.05 + 0.85 * g.next_double();
                break;
            }
        }
        if (!redlb::stability(q).stable) continue;
        out.push_back(q);
    }
    return out;
}
