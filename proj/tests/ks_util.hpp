#pragma once

// Shared test helper: two-sided Kolmogorov-Smirnov statistic of workload
// samples against an M/M/1 workload law F(w) = 1 - rho e^{-(mu-lambda)w}.
// The law has an atom at zero, so the left-limit comparison skips zero
// samples (F(0-) = 0 there, which never binds).

#include <algorithm>
#include <cmath>
#include <vector>

inline double ks_statistic_vs_mm1(std::vector<double> samples, double lambda, double mu) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    const double rho = lambda / mu;
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = samples[i];
        const double f = 1.0 - rho * std::exp(-(mu - lambda) * x);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        if (x > 0.0) d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

inline double ks_critical_1pct(std::size_t n) {
    return 1.628 / std::sqrt(static_cast<double>(n));
}
