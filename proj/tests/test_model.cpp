#include <doctest.h>

#include <cmath>

#include "param_gen.hpp"
#include "redlb/model.hpp"

using namespace redlb;

namespace {

PolicyParams make(double lambda, double mu, int d, double p, double t1, double t2,
                  int n = 20) {
    PolicyParams q;
    q.lambda = lambda;
    q.mu = mu;
    q.n_servers = std::max(n, d);
    q.d = d;
    q.p = p;
    q.t1 = t1;
    q.t2 = t2;
    return q;
}

// Closed form for identical thresholds: F(0) and F(T).
double f0_identical(double lb, double mu, double t) {
    if (std::fabs(mu - lb) < 1e-9) return 1.0 / (lb * t + 2.0);
    const double rho = lb / mu;
    return (1.0 - rho) / (1.0 - rho * rho * std::exp(-(mu - lb) * t));
}

// Closed form for t1 = inf: two algebraically distinct closed-form shapes.
// Shape A is singular (removably) at lb = mu; shape B is written through
// int_exp so the limit evaluates.
double f0_no_loss_a(double lam, double lb, double mu, double t2) {
    const double e = std::exp(-(mu - lb) * t2);
    const double num = (1.0 - lam / mu) * (1.0 - lb / mu);
    const double den = (1.0 - lam / mu) + (lb / mu) * (lam / mu - lb / mu) * e;
    return num / den;
}

double f0_no_loss_b(double lam, double lb, double mu, double t2) {
    const double e = std::exp(-(mu - lb) * t2);
    return 1.0 / (lb * (detail::int_exp(mu - lb, t2) + e / (mu - lam)) + 1.0);
}

}  // namespace

TEST_CASE("parameter validation rejects out-of-range values") {
    CHECK_THROWS_AS(make(0.0, 1, 1, 0, kInf, kInf).validate(), InvalidConfig);
    CHECK_THROWS_AS(make(0.1, -1, 1, 0, kInf, kInf).validate(), InvalidConfig);
    CHECK_THROWS_AS(make(0.1, 1, 0, 0, kInf, kInf).validate(), InvalidConfig);
    PolicyParams too_many_replicas = make(0.1, 1, 2, 0, kInf, kInf);
    too_many_replicas.n_servers = 1;
    CHECK_THROWS_AS(too_many_replicas.validate(), InvalidConfig);
    CHECK_THROWS_AS(make(0.1, 1, 1, 1.5, kInf, kInf).validate(), InvalidConfig);
    CHECK_THROWS_AS(make(0.1, 1, 1, 0, 1.0, 2.0).validate(), InvalidConfig);
    CHECK_NOTHROW(make(0.1, 1, 2, 0.5, 2.0, 1.0).validate());
    CHECK_NOTHROW(make(0.1, 1, 2, 0.5, kInf, 1.0).validate());
}

TEST_CASE("effective rate combines primary and secondary traffic") {
    CHECK(effective_rate(make(0.1, 1, 5, 0.0, kInf, kInf)).lambda_bar ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK(effective_rate(make(0.1, 1, 3, 1.0, kInf, kInf)).lambda_bar ==
          doctest::Approx(0.3).epsilon(1e-14));
    CHECK(effective_rate(make(0.2, 1, 2, 0.5, kInf, kInf)).lambda_bar ==
          doctest::Approx(0.3).epsilon(1e-14));
    // a single replica generates no secondary traffic whatever p is
    CHECK(effective_rate(make(0.2, 1, 1, 0.7, kInf, kInf)).lambda_bar ==
          doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("stability classification follows the threshold structure") {
    auto s1 = stability(make(10.0, 1, 3, 1.0, 5.0, 5.0));
    CHECK(s1.kind == StabilityKind::AlwaysStable);
    CHECK(s1.stable);

    auto s2 = stability(make(0.99, 1, 3, 1.0, kInf, 2.0));
    CHECK(s2.kind == StabilityKind::StableIffLambdaLtMu);
    CHECK(s2.stable);

    auto s3 = stability(make(0.4, 1, 3, 1.0, kInf, kInf));
    CHECK(s3.kind == StabilityKind::StableIffLambdaBarLtMu);
    CHECK_FALSE(s3.stable);  // lambda_bar = 1.2

    CHECK(stability(make(0.2, 1, 3, 1.0, kInf, kInf)).stable);
}

TEST_CASE("solve_constants reproduces the identical-threshold closed form") {
    const auto c = solve_constants(make(0.3, 1.0, 3, 1.0, 5.0, 5.0));
    const double f0 = f0_identical(0.9, 1.0, 5.0);
    CHECK(std::fabs(c.f0 - f0) < 1e-12);
    CHECK(c.f0 == doctest::Approx(0.19657).epsilon(1e-4));
    CHECK(c.fbar_t1 == doctest::Approx(c.fbar_t2).epsilon(1e-12));
    // F(T) = (mu/lb)(1 - F(0))
    CHECK(1.0 - c.fbar_t1 == doctest::Approx((1.0 / 0.9) * (1.0 - f0)).epsilon(1e-12));
}

TEST_CASE("solve_constants handles infinite thresholds as the M/M/1 reduction") {
    const auto c = solve_constants(make(0.2, 1.0, 3, 0.7, kInf, kInf));
    const double lb = effective_rate(make(0.2, 1.0, 3, 0.7, kInf, kInf)).lambda_bar;
    CHECK(c.f0 == doctest::Approx(1.0 - lb).epsilon(1e-14));
    CHECK(c.fbar_t1 == 0.0);
    CHECK(c.fbar_t2 == 0.0);
}

TEST_CASE("solve_constants matches the idle-replication zero-workload mass") {
    const auto c = solve_constants(make(0.2, 1.0, 3, 1.0, kInf, 0.0));
    CHECK(std::fabs(c.f0 - 0.8 / 1.4) < 1e-12);
    CHECK(c.f0 == doctest::Approx(0.571429).epsilon(1e-5));
    // at t2 = 0 the secondary tail is everything above the atom
    CHECK(c.fbar_t2 == doctest::Approx(1.0 - c.f0).epsilon(1e-12));
}

TEST_CASE("identical-threshold grid agrees with the closed form") {
    for (double p : {1.0, 0.6}) {
        for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (double t : {0.5, 1.0, 2.0, 5.0}) {
                for (int d : {2, 3, 6}) {
                    const PolicyParams q = make(lambda, 1.0, d, p, t, t);
                    const double lb = effective_rate(q).lambda_bar;
                    const auto c = solve_constants(q);
                    const double want = f0_identical(lb, 1.0, t);
                    CHECK(std::fabs(c.f0 - want) <= 1e-9 * std::max(1.0, want));
                    CHECK(c.fbar_t1 <= c.fbar_t2 + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("no-loss grid agrees with both closed-form shapes") {
    for (double p : {1.0, 0.6}) {
        for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (double t2 : {0.5, 1.0, 2.0, 5.0}) {
                for (int d : {2, 3, 6}) {
                    const PolicyParams q = make(lambda, 1.0, d, p, kInf, t2);
                    const double lb = effective_rate(q).lambda_bar;
                    const auto c = solve_constants(q);
                    const double fb = f0_no_loss_b(lambda, lb, 1.0, t2);
                    CHECK(std::fabs(c.f0 - fb) <= 1e-9 * std::max(1.0, fb));
                    if (std::fabs(1.0 - lb) > 1e-9) {
                        const double fa = f0_no_loss_a(lambda, lb, 1.0, t2);
                        CHECK(std::fabs(fa - fb) <= 1e-9 * std::max(1.0, fa));
                    }
                    CHECK(c.fbar_t1 == 0.0);
                }
            }
        }
    }
}

TEST_CASE("large identical threshold converges to the no-discard limit") {
    const PolicyParams q = make(0.2, 1.0, 3, 1.0, 50.0, 50.0);
    const auto c = solve_constants(q);
    CHECK(std::fabs(c.f0 - (1.0 - 0.6)) < 1e-6);
}

TEST_CASE("the mu = lambda_bar removable singularity is evaluated exactly") {
    const PolicyParams q = make(1.0 / 3.0, 1.0, 3, 1.0, 2.0, 2.0);
    const auto c = solve_constants(q);
    const double lb = effective_rate(q).lambda_bar;
    CHECK(std::fabs(lb - 1.0) < 1e-9);
    CHECK(std::fabs(c.f0 - 1.0 / (lb * 2.0 + 2.0)) < 1e-9);
}

TEST_CASE("unstable parameters are rejected") {
    CHECK_THROWS_AS(solve_constants(make(0.4, 1.0, 3, 1.0, kInf, kInf)), UnstableSystem);
    CHECK_THROWS_AS(solve_constants(make(1.2, 1.0, 3, 1.0, kInf, 2.0)), UnstableSystem);
    CHECK_NOTHROW(solve_constants(make(2.0, 1.0, 3, 1.0, 1.5, 1.5)));
}

TEST_CASE("solved constants satisfy the zero-workload balance residual") {
    for (const PolicyParams& q : random_stable_params(20, 90210)) {
        const auto c = solve_constants(q);
        const double lb = effective_rate(q).lambda_bar;
        const double rhs = 1.0 - lb / q.mu + (lb - q.lambda) / q.mu * c.fbar_t2 +
                           q.lambda / q.mu * c.fbar_t1;
        CHECK(std::fabs(c.f0 - rhs) < 1e-10);
        CHECK(c.f0 >= 0.0);
        CHECK(c.f0 <= 1.0);
        CHECK(c.fbar_t1 <= c.fbar_t2 + 1e-12);
    }
}
