#include "redlb/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "redlb/quadrature.hpp"

namespace redlb {

namespace {

using detail::int_exp;
using detail::int_exp_shifted;

// Frequently used derived quantities of a law.
struct View {
    double lam, mu, p;
    int d;
    double t1, t2;
    double lb;      // effective rate
    double a;       // mu - lb
    double b;       // mu - lam
    double f0, fb1, fb2;
    double c2;      // (mu-lam) Fbar(T2) + lam Fbar(T1)
};

View view(const WorkloadLaw& law) {
    View v;
    v.lam = law.params.lambda;
    v.mu = law.params.mu;
    v.p = law.params.p;
    v.d = law.params.d;
    v.t1 = law.params.t1;
    v.t2 = law.params.t2;
    v.lb = law.lambda_bar;
    v.a = v.mu - v.lb;
    v.b = v.mu - v.lam;
    v.f0 = law.constants.f0;
    v.fb1 = law.constants.fbar_t1;
    v.fb2 = law.constants.fbar_t2;
    v.c2 = v.b * v.fb2 + v.lam * v.fb1;
    return v;
}

double cdf_raw(const View& v, double w) {
    if (w < 0.0) return 0.0;
    // On (t2, t1) the equilibrium consistency relation
    //   c2 = F(0) lb e^{-(mu-lb) t2}
    // cancels the e^{-(mu-lb)w} component, and past t1
    //   mu Fbar(T1) = c2 e^{-(mu-lam)(t1-t2)}
    // cancels the e^{-(mu-lam)w} one, leaving a single exponential per
    // segment. Evaluating segment-locally keeps every term bounded even when
    // lb > mu, where the unreduced expression cancels catastrophically.
    if (v.t1 != kInf && w >= v.t1) {
        return 1.0 - v.fb1 * std::exp(-v.mu * (w - v.t1));
    }
    if (v.t2 != kInf && w >= v.t2) {
        return (1.0 - v.fb2) + v.c2 * int_exp(v.b, w - v.t2);
    }
    return v.f0 * (1.0 + v.lb * int_exp(v.a, w));
}

double density_raw(const View& v, double w) {
    if (v.t1 != kInf && w > v.t1) return v.mu * v.fb1 * std::exp(-v.mu * (w - v.t1));
    if (v.t2 != kInf && w > v.t2) return v.c2 * std::exp(-v.b * (w - v.t2));
    return v.f0 * v.lb * std::exp(-v.a * w);
}

// General k(x, t) for exponential service at the law's own rate: the atom,
// the segment-wise exact integrals of e^{-mu(x-w)} against the density, and
// the mass above min(x, t) where Gbar = 1.
double k_general_exponential(const View& v, double x, double t) {
    const double u = std::min(x, t);
    double val = v.f0 * std::exp(-v.mu * x);
    if (u > 0.0) {
        const double h1 = std::min(u, v.t2);
        // e^{mu w} * f0 lb e^{-(mu-lb) w} = f0 lb e^{lb w}
        val += int_exp_shifted(v.f0 * v.lb, -v.mu * x, v.lb, 0.0, h1);
        if (v.t2 != kInf && u > v.t2) {
            const double h2 = std::min(u, v.t1);
            // e^{mu w} * c2 e^{-(mu-lam)(w-t2)} = c2 e^{(mu-lam) t2} e^{lam w}
            val += int_exp_shifted(v.c2, v.b * v.t2 - v.mu * x, v.lam, v.t2, h2);
            if (v.t1 != kInf && u > v.t1) {
                // e^{mu w} * mu fb1 e^{-mu(w-t1)} is constant in w
                val += v.mu * v.fb1 * (u - v.t1) * std::exp(-v.mu * (x - v.t1));
            }
        }
    }
    const double f_t = (t == kInf) ? 1.0 : cdf_raw(v, t);
    return val + (f_t - cdf_raw(v, u));
}

// Numeric fallback for service laws without closed exponential forms.
double k_numeric(const View& v, const ServiceLaw& service, double x, double t) {
    const double u = std::min(x, t);
    double val = v.f0 * service.tail(x);
    if (u > 0.0) {
        std::vector<double> knots;
        if (v.t2 != kInf) knots.push_back(v.t2);
        if (v.t1 != kInf) knots.push_back(v.t1);
        auto f = [&](double w) { return service.tail(x - w) * density_raw(v, w); };
        val += integrate_with_knots(f, 0.0, u, knots, 1e-10).value;
    }
    const double f_t = (t == kInf) ? 1.0 : cdf_raw(v, t);
    return val + (f_t - cdf_raw(v, u));
}

// k(x, T) closed form shared by the identical-threshold policy and the
// finite-secondary-threshold part of the no-loss policy.
double k_closed_identical(const View& v, double threshold, double x) {
    if (x >= threshold) {
        return v.f0 * std::exp(v.lb * threshold - v.mu * x);
    }
    if (std::fabs(v.a) < 1e-9) {
        return v.f0 * (1.0 + v.lb * (threshold - x));  // mu = lb limit
    }
    return v.f0 * (v.mu / v.a * std::exp(-v.a * x) - v.lb / v.a * std::exp(-v.a * threshold));
}

// k(x, inf) for pi(p, inf, T2), for pi(p, inf, T2); the x < T2 branch of this form
// is known to disagree with the general path (see check_closed_forms).
double k_closed_no_loss_inf(const View& v, double x) {
    const double base = k_closed_identical(v, v.t2, x);
    if (x >= v.t2) {
        const double e = (v.lb - v.lam) * v.t2 - v.mu * x;
        const double term = (std::exp(e + v.lam * x) - std::exp(e + v.lam * v.t2)) / v.lam +
                            std::exp(e + v.lam * x) / v.b;
        return base + v.f0 * v.lb * term;
    }
    return base + v.lb / v.b * v.f0 * std::exp((v.mu - v.lb) * v.t2);
}

struct ClosedForm {
    const char* name;
    double value;
};

std::optional<ClosedForm> k_closed_form(const View& v, double x, double t) {
    if (v.t1 == kInf && v.t2 == kInf) {
        if (t == kInf) return ClosedForm{"k(x,inf) no-discard", std::exp(-v.a * x)};
        return std::nullopt;
    }
    if (v.t1 == v.t2 && t == v.t1) {
        return ClosedForm{"k(x,T) identical-thresholds", k_closed_identical(v, v.t1, x)};
    }
    if (v.t1 == kInf) {
        if (t == v.t2) {
            return ClosedForm{"k(x,T2) no-loss", k_closed_identical(v, v.t2, x)};
        }
        if (t == kInf) {
            return ClosedForm{"k(x,inf) no-loss", k_closed_no_loss_inf(v, x)};
        }
    }
    return std::nullopt;
}

bool values_agree(double closed, double general) {
    const double scale = std::max({std::fabs(closed), std::fabs(general), 1e-12});
    return std::fabs(closed - general) <= 1e-6 * scale;
}

double k_eval(const View& v, const ServiceLaw& service, double x, double t) {
    if (service.kind != ServiceLaw::Kind::Exponential || service.rate != v.mu) {
        return k_numeric(v, service, x, t);
    }
    const double general = k_general_exponential(v, x, t);
    if (const auto closed = k_closed_form(v, x, t)) {
        if (values_agree(closed->value, general)) return closed->value;
    }
    return general;
}

double hbar(const View& v, double k1, double k2) {
    const double pow_k2 = std::pow(v.fb2 + k2, v.d - 1);
    const double pow_fb2 = std::pow(v.fb2, v.d - 1);
    return v.p * ((v.fb1 + k1) * pow_k2 - v.fb1 * pow_fb2) + (1.0 - v.p) * k1;
}

double hbar_at(const View& v, const ServiceLaw& service, double x) {
    const double k1 = k_eval(v, service, x, v.t1);
    const double k2 = (v.t2 == v.t1) ? k1 : k_eval(v, service, x, v.t2);
    return hbar(v, k1, k2);
}

// Truncation point past which the response tail is below 1e-13: every
// k-kernel is enveloped by e^{-mu(x-t1)} for finite t1, by e^{-(mu-lam)x}
// when only t2 is finite, and by e^{-(mu-lb)x} when nothing is discarded.
double tau_integration_limit(const View& v) {
    if (v.t1 != kInf) return v.t1 + 40.0 / v.mu;
    if (v.t2 != kInf) return v.t2 + 40.0 / v.b;
    return 40.0 / v.a;
}

}  // namespace

WorkloadLaw make_workload_law(const PolicyParams& params) {
    WorkloadLaw law;
    law.params = params;
    law.constants = solve_constants(params);
    law.lambda_bar = effective_rate(params).lambda_bar;
    return law;
}

double workload_cdf(const WorkloadLaw& law, double w) {
    return detail::clamp01(cdf_raw(view(law), w));
}

double workload_density(const WorkloadLaw& law, double w) {
    if (w <= 0.0) return 0.0;
    return density_raw(view(law), w);
}

double workload_mgf(const WorkloadLaw& law, double theta) {
    const View v = view(law);
    double abscissa;
    if (v.t1 != kInf) {
        abscissa = -v.mu;
    } else if (v.t2 != kInf) {
        abscissa = -v.b;
    } else {
        abscissa = -v.a;
    }
    if (!(theta > abscissa)) {
        throw OutOfDomain("theta outside the transform's convergence region");
    }
    // Pole-free regrouping of the transform: the same consistency relations
    // used by the CDF turn each difference of simple poles into an int_exp
    // factor, so removable singularities at theta = lb-mu and lam-mu never
    // surface as division by zero.
    double val = v.f0 * (1.0 + v.lb * int_exp(theta + v.a, v.t2));
    if (v.t2 != kInf) {
        const double span = (v.t1 == kInf) ? kInf : v.t1 - v.t2;
        val += v.c2 * std::exp(-theta * v.t2) * int_exp(theta + v.b, span);
    }
    if (v.t1 != kInf) {
        val += v.mu * v.fb1 * std::exp(-theta * v.t1) / (theta + v.mu);
    }
    return val;
}

double k_kernel(const WorkloadLaw& law, const ServiceLaw& service, double x, double t) {
    return k_eval(view(law), service, x, t);
}

double loss_probability(const WorkloadLaw& law) {
    const View v = view(law);
    return v.fb1 * (v.p * std::pow(v.fb2, v.d - 1) + (1.0 - v.p));
}

double response_tail(const WorkloadLaw& law, const ServiceLaw& service, double x) {
    return hbar_at(view(law), service, x);
}

ResponseMetrics mean_response_time(const WorkloadLaw& law, const ServiceLaw& service) {
    const View v = view(law);
    const double p_loss = loss_probability(law);
    if (p_loss > 1.0 - 1e-12) {
        throw DegenerateLoss("loss probability is 1 to machine precision");
    }
    const double xmax = tau_integration_limit(v);
    std::vector<double> knots;
    if (v.t2 != kInf) knots.push_back(v.t2);
    if (v.t1 != kInf) knots.push_back(v.t1);
    auto f = [&](double x) { return hbar_at(v, service, x); };
    const QuadratureResult q = integrate_with_knots(f, 0.0, xmax, knots, 1e-10);
    return {q.value / (1.0 - p_loss), p_loss, q.error_estimate / (1.0 - p_loss)};
}

double tau_no_discard(const PolicyParams& params) {
    params.validate();
    if (params.t1 != kInf || params.t2 != kInf) {
        throw InvalidConfig("tau_no_discard requires t1 = t2 = inf");
    }
    const double lb = effective_rate(params).lambda_bar;
    if (lb >= params.mu) {
        throw UnstableSystem("no-discard policy requires lambda_bar < mu");
    }
    const double slack = params.mu - lb;
    return params.p / (slack * params.d) + (1.0 - params.p) / slack;
}

double tau_idle_replication(const PolicyParams& params) {
    params.validate();
    if (params.p != 1.0 || params.t1 != kInf || params.t2 != 0.0) {
        throw InvalidConfig("tau_idle_replication requires p = 1, t1 = inf, t2 = 0");
    }
    if (params.lambda >= params.mu) {
        throw UnstableSystem("idle-replication policy requires lambda < mu");
    }
    const double mu = params.mu;
    const double lam = params.lambda;
    const int d = params.d;
    const double f0 = (mu - lam) / (mu + lam * (d - 1));
    const double fb0 = 1.0 - f0;

    double tau = 0.0;
    double binom = 1.0;  // (d-1 choose n)
    for (int n = 0; n < d; ++n) {
        const double bracket =
            d * mu / ((mu - lam) * (mu * (n + 1) - lam)) - (d - 1.0) / (mu * (n + 1));
        tau += binom * std::pow(fb0, d - 1 - n) * std::pow(f0, n + 1) * bracket;
        binom = binom * (d - 1 - n) / (n + 1);
    }
    return tau;
}

std::vector<FormulaMismatch> check_closed_forms(const WorkloadLaw& law,
                                                const ServiceLaw& service) {
    std::vector<FormulaMismatch> out;
    const View v = view(law);
    if (service.kind != ServiceLaw::Kind::Exponential || service.rate != v.mu) {
        return out;  // closed forms only exist for the law's own exponential
    }

    std::vector<double> xs{0.0, 0.25 / v.mu, 1.0 / v.mu, 3.0 / v.mu, 10.0 / v.mu};
    for (double thr : {v.t2, v.t1}) {
        if (thr == kInf || thr <= 0.0) continue;
        xs.push_back(0.5 * thr);
        xs.push_back(thr);
        xs.push_back(1.5 * thr + 0.5);
    }
    std::vector<double> ts;
    if (v.t1 == v.t2) {
        ts.push_back(v.t1);
    } else if (v.t1 == kInf) {
        ts.push_back(v.t2);
        ts.push_back(kInf);
    }
    for (double t : ts) {
        for (double x : xs) {
            const auto closed = k_closed_form(v, x, t);
            if (!closed) continue;
            const double general = k_general_exponential(v, x, t);
            if (!values_agree(closed->value, general)) {
                out.push_back({closed->name, x, t, closed->value, general});
            }
        }
    }
    return out;
}

}  // namespace redlb
