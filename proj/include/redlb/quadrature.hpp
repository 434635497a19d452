#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace redlb {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 node-weight table on [-1, 1] (abscissa, Gauss weight,
// Kronrod weight); first row is the center node, the rest are +/- pairs.
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class Func>
double g7k15(const Func& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g7 = kG7K15[0][1] * y0;
    double k15 = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kG7K15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kG7K15[i][1] * yi;
        k15 += kG7K15[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    const double diff = std::fabs(g7 - k15);
    err = std::min(diff, 200.0 * diff * std::sqrt(diff));
    return k15;
}

}  // namespace detail

// Adaptive Gauss-Kronrod refinement to an absolute tolerance. Intervals whose
// error estimate exceeds their share of the budget are bisected, worst first.
template <class Func>
QuadratureResult integrate(const Func& f, double a, double b, double abs_tol,
                           std::size_t max_intervals = 4096) {
    QuadratureResult out;
    if (!(b > a)) return out;

    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> heap;
    auto cmp = [](const Interval& x, const Interval& y) { return x.error < y.error; };

    double err0;
    double v0 = detail::g7k15(f, a, b, err0);
    out.evaluations = 15;
    heap.push_back({a, b, v0, err0});

    double total_err = err0;
    while (total_err > abs_tol && heap.size() < max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        if (worst.error <= 0.0 || worst.b - worst.a < 1e-14 * (b - a)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;  // cannot refine further
        }
        total_err -= worst.error;
        const double m = 0.5 * (worst.a + worst.b);
        double e1, e2;
        const double v1 = detail::g7k15(f, worst.a, m, e1);
        const double v2 = detail::g7k15(f, m, worst.b, e2);
        out.evaluations += 30;
        heap.push_back({worst.a, m, v1, e1});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({m, worst.b, v2, e2});
        std::push_heap(heap.begin(), heap.end(), cmp);
        total_err += e1 + e2;
    }
    for (const auto& iv : heap) out.value += iv.value;
    out.error_estimate = total_err;
    return out;
}

// Splits [a, b] at the interior knots (integrand kinks) and integrates each
// smooth piece to the shared absolute tolerance.
template <class Func>
QuadratureResult integrate_with_knots(const Func& f, double a, double b,
                                      const std::vector<double>& knots, double abs_tol) {
    std::vector<double> edges{a};
    for (double k : knots) {
        if (k > a && k < b) edges.push_back(k);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    QuadratureResult out;
    const double piece_tol = abs_tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        QuadratureResult piece = integrate(f, edges[i], edges[i + 1], piece_tol);
        out.value += piece.value;
        out.error_estimate += piece.error_estimate;
        out.evaluations += piece.evaluations;
    }
    return out;
}

}  // namespace redlb
