#pragma once

#include <string>
#include <vector>

#include "redlb/model.hpp"
#include "redlb/service.hpp"

namespace redlb {

// Equilibrium workload law of the cavity queue: an atom f0 at zero plus a
// piecewise sum-of-exponentials density with knots at t2 and t1.
struct WorkloadLaw {
    PolicyParams params;
    EquilibriumConstants constants;
    double lambda_bar;  // cached effective rate
};

struct ResponseMetrics {
    double tau;               // conditional mean response time of admitted jobs
    double p_loss;            // probability a job loses every replica
    double quadrature_error;  // absolute error estimate of the tau integral
};

// A closed-form expression disagreeing with the general evaluation path
// beyond 1e-6 relative. The general value is what production returns; the
// record exists so the disagreement is reported, never silently resolved.
struct FormulaMismatch {
    std::string formula;  // which closed form
    double x;
    double t;
    double closed_value;
    double general_value;
};

// Solves the equilibrium constants for stable params.
WorkloadLaw make_workload_law(const PolicyParams& params);

// Workload CDF F(w). Piecewise evaluation: on each segment (0,t2), (t2,t1),
// (t1,inf) the consistency relations between the constants reduce the density
// to a single exponential term, which avoids the cancellation blow-up of the
// raw four-term expression when lambda_bar > mu. Clamped into [0, 1].
double workload_cdf(const WorkloadLaw& law, double w);

// Density of the continuous part, for w > 0.
double workload_density(const WorkloadLaw& law, double w);

// Phi_W(theta) = E[e^{-theta W}]. Throws OutOfDomain when theta is at or
// below the convergence abscissa (-mu for finite t1; -(mu-lambda) for
// t1 = inf; -(mu-lambda_bar) when both thresholds are infinite).
double workload_mgf(const WorkloadLaw& law, double theta);

// k(x, t) = E[Gbar(x - W) 1{W <= t}]. Exponential service uses the
// closed forms where the policy admits them (identical thresholds;
// t1 = inf) cross-checked against the exact general path, and the general
// path otherwise; non-exponential laws fall back to adaptive quadrature.
double k_kernel(const WorkloadLaw& law, const ServiceLaw& service, double x, double t);

// P_L = Fbar(T1) (p Fbar(T2)^{d-1} + (1-p)).
double loss_probability(const WorkloadLaw& law);

// Hbar(x) = p[(Fbar(T1)+k(x,T1))(Fbar(T2)+k(x,T2))^{d-1}
//            - Fbar(T1) Fbar(T2)^{d-1}] + (1-p) k(x,T1).
double response_tail(const WorkloadLaw& law, const ServiceLaw& service, double x);

// tau = 1/(1-P_L) * integral of Hbar over [0, x_max], adaptive quadrature at
// absolute tolerance 1e-10 split at the threshold knots. The truncation point
// follows the exponential envelope of the slowest k-kernel tail.
// Throws DegenerateLoss when P_L > 1 - 1e-12.
ResponseMetrics mean_response_time(const WorkloadLaw& law, const ServiceLaw& service);

// Fast path for t1 = t2 = inf: tau = p/((mu-lb)d) + (1-p)/(mu-lb).
double tau_no_discard(const PolicyParams& params);

// Fast path for pi(1, inf, 0): binomial sum with F(0) = (mu-l)/(mu+l(d-1)).
double tau_idle_replication(const PolicyParams& params);

// Probes every closed form applicable to this law on a grid of x values and
// returns the points where it deviates from the general evaluation path by
// more than 1e-6 relative.
std::vector<FormulaMismatch> check_closed_forms(const WorkloadLaw& law,
                                                const ServiceLaw& service);

}  // namespace redlb
