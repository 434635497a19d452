#include "redlb/model.hpp"

#include <array>
#include <cmath>
#include <string>

namespace redlb {

void PolicyParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidConfig("lambda must be positive and finite");
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw InvalidConfig("mu must be positive and finite");
    }
    if (d < 1) throw InvalidConfig("d must be >= 1");
    if (n_servers < d) throw InvalidConfig("n_servers must be >= d");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidConfig("p must lie in [0, 1]");
    if (std::isnan(t1) || t1 < 0.0) throw InvalidConfig("t1 must lie in [0, inf]");
    if (std::isnan(t2) || t2 < 0.0) throw InvalidConfig("t2 must lie in [0, inf]");
    if (t2 > t1) throw InvalidConfig("t2 must not exceed t1");
}

EffectiveRate effective_rate(const PolicyParams& params) {
    return {params.lambda * (1.0 - params.p) + params.p * params.lambda * params.d};
}

StabilityClass stability(const PolicyParams& params) {
    if (params.t1 != kInf) {
        return {StabilityKind::AlwaysStable, true};
    }
    if (params.t2 != kInf) {
        return {StabilityKind::StableIffLambdaLtMu, params.lambda < params.mu};
    }
    const double lb = effective_rate(params).lambda_bar;
    return {StabilityKind::StableIffLambdaBarLtMu, lb < params.mu};
}

namespace {

// Coefficients of the workload CDF at w as an affine function of the
// constants: F(w) = c0*F(0) + c1*Fbar(T1) + c2*Fbar(T2).
struct CdfCoeffs {
    double c0, c1, c2;
};

CdfCoeffs cdf_coeffs(const PolicyParams& q, double lb, double w) {
    using detail::int_exp;
    const double a = q.mu - lb;
    const double b = q.mu - q.lambda;
    const double d2 = (q.t2 == kInf) ? 0.0 : std::max(w - q.t2, 0.0);
    const double d1 = (q.t1 == kInf) ? 0.0 : std::max(w - q.t1, 0.0);
    const double q2 = int_exp(b, d2) - int_exp(a, d2);
    const double q1 = int_exp(b, d1) - int_exp(q.mu, d1);
    return {1.0 + lb * int_exp(a, w), q.lambda * q2 - q.mu * q1, b * q2};
}

// 3x3 Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    double scale = 0.0;
    for (const auto& row : m) {
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(row[j]));
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        }
        if (std::fabs(m[piv][col]) < 1e-13 * scale) {
            throw SingularSystem("equilibrium constant system is degenerate");
        }
        std::swap(m[col], m[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double acc = m[r][3];
        for (int j = r + 1; j < 3; ++j) acc -= m[r][j] * x[j];
        x[r] = acc / m[r][r];
    }
    return x;
}

}  // namespace

EquilibriumConstants solve_constants(const PolicyParams& params) {
    params.validate();
    if (!stability(params).stable) {
        throw UnstableSystem("no equilibrium: arrival rate at or above service capacity");
    }
    const double lb = effective_rate(params).lambda_bar;
    const double mu = params.mu;
    const double lam = params.lambda;

    std::array<std::array<double, 4>, 3> m{};
    // zero-workload balance
    m[0] = {1.0, -lam / mu, -(lb - lam) / mu, 1.0 - lb / mu};
    // CDF evaluated at each finite threshold equals one minus its tail;
    // an infinite threshold forces the tail to zero.
    if (params.t1 == kInf) {
        m[1] = {0.0, 1.0, 0.0, 0.0};
    } else {
        const CdfCoeffs c = cdf_coeffs(params, lb, params.t1);
        m[1] = {c.c0, c.c1 + 1.0, c.c2, 1.0};
    }
    if (params.t2 == kInf) {
        m[2] = {0.0, 0.0, 1.0, 0.0};
    } else {
        const CdfCoeffs c = cdf_coeffs(params, lb, params.t2);
        m[2] = {c.c0, c.c1, c.c2 + 1.0, 1.0};
    }

    const std::array<double, 3> x = solve3(m);
    EquilibriumConstants out{detail::clamp01(x[0]), detail::clamp01(x[1]),
                             detail::clamp01(x[2])};

    // The solution must satisfy the zero-workload balance to solver precision.
    const double residual =
        out.f0 - (1.0 - lb / mu + (lb - lam) / mu * out.fbar_t2 + lam / mu * out.fbar_t1);
    if (std::fabs(residual) > 1e-10) {
        throw SingularSystem("equilibrium constants failed the balance residual check");
    }
    return out;
}

}  // namespace redlb
