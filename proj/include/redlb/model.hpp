#pragma once

#include "redlb/errors.hpp"
#include "redlb/math_util.hpp"

namespace redlb {

// Full parameterization of a pi(p, T1, T2) system: N servers, Poisson job
// arrivals of rate lambda*N, i.i.d. Exponential(mu) service. Each job sends a
// primary replica (discard threshold t1) to one uniform server and, with
// probability p, d-1 secondary replicas (threshold t2 <= t1) to distinct
// other servers. Thresholds are extended reals; +inf disables discarding.
struct PolicyParams {
    double lambda = 0.1;  // normalized per-server arrival rate
    double mu = 1.0;      // service rate
    int n_servers = 20;
    int d = 1;            // total replica count (1 primary + d-1 secondary)
    double p = 0.0;       // replication probability
    double t1 = kInf;     // primary discard threshold
    double t2 = kInf;     // secondary discard threshold, t2 <= t1

    void validate() const;  // throws InvalidConfig
};

// Potential arrival rate seen by a single (cavity) queue.
struct EffectiveRate {
    double lambda_bar;
};

enum class StabilityKind {
    AlwaysStable,            // t1 < inf: arrivals above threshold are discarded
    StableIffLambdaLtMu,     // t1 = inf, t2 < inf
    StableIffLambdaBarLtMu,  // t1 = t2 = inf
};

struct StabilityClass {
    StabilityKind kind;
    bool stable;
};

// Self-consistent triple closing the cavity-queue workload law:
// the atom F(0) and the tails 1-F(t1), 1-F(t2).
struct EquilibriumConstants {
    double f0;
    double fbar_t1;
    double fbar_t2;
};

// lambda_bar = lambda(1-p) + p*lambda*d: primaries arrive at rate lambda,
// secondary replicas at rate p*lambda*(d-1).
EffectiveRate effective_rate(const PolicyParams& params);

StabilityClass stability(const PolicyParams& params);

// Solves the 3x3 linear system fixing (F(0), Fbar(T1), Fbar(T2)): the
// workload-CDF expression is affine in the three constants, so requiring
// F(t1) = 1 - Fbar(T1), F(t2) = 1 - Fbar(T2) and the zero-workload balance
// F(0) = 1 - lambda_bar/mu + ((lambda_bar-lambda)/mu) Fbar(T2)
//      + (lambda/mu) Fbar(T1)
// pins them uniquely. Infinite thresholds contribute Fbar = 0 rows.
// Throws UnstableSystem / SingularSystem.
EquilibriumConstants solve_constants(const PolicyParams& params);

}  // namespace redlb
