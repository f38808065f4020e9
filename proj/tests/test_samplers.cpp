#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcerr/samplers.hpp"
#include "statutil.hpp"

using namespace mcerr;
using namespace mcerr::sampler;

namespace {

MembershipOracle unit_ball(int /*dim*/) {
    MembershipOracle body;
    body.contains = [](const Point& x) { return x.norm() <= 1.0; };
    body.outer_radius = 1.0;
    body.inner_radius = 1.0;
    return body;
}

MembershipOracle box2() {
    MembershipOracle body;
    body.contains = [](const Point& x) {
        return std::abs(x(0)) <= 1.0 && std::abs(x(1)) <= 1.0;
    };
    body.outer_radius = std::sqrt(2.0);
    body.inner_radius = 1.0;
    return body;
}

Point pt(double a) {
    Point x(1);
    x(0) = a;
    return x;
}

Point pt(double a, double b) {
    Point x(2);
    x(0) = a;
    x(1) = b;
    return x;
}

}  // namespace

TEST_CASE("RngStream reproducibility and independence") {
    RngStream a(123, 7), b(123, 7), c(123, 8);
    bool diverged = false;
    for (int i = 0; i < 1000; ++i) {
        auto va = a.next_u64();
        REQUIRE(va == b.next_u64());
        if (va != c.next_u64()) diverged = true;
    }
    CHECK(diverged);
    // uniforms live strictly inside (0,1)
    RngStream d(9, 9);
    for (int i = 0; i < 100000; ++i) {
        double u = d.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("sample_direction is unit length and sign-balanced in d = 1") {
    RngStream rng(1001, 0);
    long long plus = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        Point v = sample_direction(rng, 1);
        REQUIRE(std::abs(std::abs(v(0)) - 1.0) < 1e-12);
        if (v(0) > 0) ++plus;
    }
    // two-sided binomial z test at the 1e-3 level (z crit 3.29)
    double z = (static_cast<double>(plus) - draws * 0.5) / std::sqrt(draws * 0.25);
    CHECK(std::abs(z) < 3.29);
}

TEST_CASE("sample_direction octant balance in d = 3") {
    RngStream rng(1002, 0);
    std::vector<long long> counts(8, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        Point v = sample_direction(rng, 3);
        REQUIRE(std::abs(v.norm() - 1.0) < 1e-12);
        int octant = (v(0) > 0) | ((v(1) > 0) << 1) | ((v(2) > 0) << 2);
        ++counts[octant];
    }
    std::vector<double> probs(8, 0.125);
    CHECK(statutil::chi2_gof_pvalue(counts, probs) > 1e-3);
}

TEST_CASE("ball_walk proposals: radial CDF is t^d") {
    RngStream rng(1003, 0);
    const int d = 3;
    auto body = unit_ball(d);
    std::vector<double> radii;
    const int draws = 100000;
    Point origin = Point::Zero(d);
    for (int i = 0; i < draws; ++i) {
        Point y = ball_walk_step(origin, 0.5, body, rng);
        radii.push_back(y.norm() / 0.5);
    }
    double stat = statutil::ks_statistic(
        radii, [](double t) { return std::pow(std::clamp(t, 0.0, 1.0), 3.0); });
    CHECK(statutil::ks_sf(std::sqrt(static_cast<double>(draws)) * stat) > 1e-3);
}

TEST_CASE("ball_walk stays inside and accepts everything near the center") {
    RngStream rng(1004, 0);
    auto body = unit_ball(2);
    Point x = Point::Zero(2);
    for (int i = 0; i < 1000; ++i) {
        Point y = ball_walk_step(x, 0.25, body, rng);
        REQUIRE((y - x).norm() <= 0.25 + 1e-12);
        REQUIRE(y.norm() <= 1.0);
        REQUIRE((y - x).norm() > 0.0);  // delta-ball inside the domain: no rejections
    }
}

TEST_CASE("ball_walk local acceptance at the boundary stays above 0.3") {
    // delta = r/sqrt(d+1), the regime of the 0.3 local-conductance bound
    for (int d : {1, 2, 3, 5, 8}) {
        RngStream rng(1005, static_cast<std::uint64_t>(d));
        auto body = unit_ball(d);
        Point x = Point::Zero(d);
        x(0) = 1.0;
        double delta = 1.0 / std::sqrt(static_cast<double>(d + 1));
        int accepted = 0;
        const int draws = 20000;
        for (int i = 0; i < draws; ++i) {
            if ((ball_walk_step(x, delta, body, rng) - x).norm() > 0.0) ++accepted;
        }
        double rate = static_cast<double>(accepted) / draws;
        CAPTURE(d);
        // 0.3 minus three binomial sigmas of slack
        REQUIRE(rate >= 0.3 - 3.0 * std::sqrt(0.25 / draws));
    }
    // d = 2 keeps the margin even at twice that radius
    RngStream rng(1005, 99);
    auto body = unit_ball(2);
    Point x = pt(1.0, 0.0);
    int accepted = 0;
    for (int i = 0; i < 20000; ++i) {
        if ((ball_walk_step(x, 2.0 / std::sqrt(3.0), body, rng) - x).norm() > 0.0) ++accepted;
    }
    CHECK(static_cast<double>(accepted) / 20000.0 >= 0.3);
}

TEST_CASE("metropolis_step acceptance statistics") {
    LogDensityOracle target;
    target.dim = 1;
    target.log_density = [](const Point& x) { return x(0); };  // ratio e^{y-x}

    RngStream rng(1006, 0);
    // equal density: always accepted
    for (int i = 0; i < 100; ++i) {
        Point y = metropolis_step(pt(0.0), pt(0.0), target, rng);
        REQUIRE(y(0) == 0.0);
    }
    // log rho(y) - log rho(x) = -log 2: acceptance 1/2
    int accepted = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        Point y = metropolis_step(pt(0.0), pt(-std::log(2.0)), target, rng);
        if (y(0) != 0.0) ++accepted;
    }
    double z = (accepted - draws * 0.5) / std::sqrt(draws * 0.25);
    CHECK(std::abs(z) < 3.29);
    // detailed-balance identity min{rho(x), rho(y)} is swap invariant
    for (double a : {-1.0, 0.2, 3.0}) {
        for (double bval : {-2.0, 0.0, 1.5}) {
            double lhs = std::exp(a) * std::min(1.0, std::exp(bval - a));
            double rhs = std::exp(bval) * std::min(1.0, std::exp(a - bval));
            REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("lazy_step holds half the time") {
    RngStream rng(1007, 0);
    auto bump = [](const Point& x, RngStream&) { return pt(x(0) + 1.0); };
    // identity inner kernel: output always equals input
    auto ident = [](const Point& x, RngStream&) { return x; };
    for (int i = 0; i < 100; ++i) REQUIRE(lazy_step(pt(3.0), ident, rng)(0) == 3.0);
    int held = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        if (lazy_step(pt(0.0), bump, rng)(0) == 0.0) ++held;
    }
    double z = (held - draws * 0.5) / std::sqrt(draws * 0.25);
    CHECK(std::abs(z) < 3.29);
}

TEST_CASE("chord_bisect bracket and accuracy") {
    const double eps0 = 1e-9;
    auto ball = unit_ball(2);
    // through the center: (-1, 1)
    auto chord = chord_bisect(ball, pt(0.0, 0.0), pt(1.0, 0.0), eps0);
    CHECK(chord.lambda1 == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(chord.lambda2 == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(chord.lambda1 <= -1.0);  // bracket contains the true chord
    CHECK(chord.lambda2 >= 1.0);
    CHECK(chord.lambda2 - 1.0 <= 0.25 * eps0);
    CHECK(-1.0 - chord.lambda1 <= 0.25 * eps0);
    // oracle budget: 3 log2(2r/eps0) + 2, plus the anchor check
    double budget = 3.0 * std::log2(2.0 / eps0) + 2.0 + 1.0;
    CHECK(static_cast<double>(chord.oracle_calls) <= budget);

    // box chord along the first axis
    auto box = box2();
    auto bc = chord_bisect(box, pt(0.0, 0.0), pt(1.0, 0.0), eps0);
    CHECK(bc.lambda1 == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(bc.lambda2 == doctest::Approx(1.0).epsilon(1e-8));

    // off-center chord through a ball of radius r: (-r - a, r - a)
    MembershipOracle big;
    big.contains = [](const Point& x) { return x.norm() <= 2.0; };
    big.outer_radius = 2.0;
    big.inner_radius = 2.0;
    auto oc = chord_bisect(big, pt(0.7, 0.0), pt(1.0, 0.0), eps0);
    CHECK(oc.lambda1 == doctest::Approx(-2.7).epsilon(1e-8));
    CHECK(oc.lambda2 == doctest::Approx(1.3).epsilon(1e-8));

    CHECK_THROWS_AS(chord_bisect(ball, pt(5.0, 0.0), pt(1.0, 0.0), eps0), DomainError);
}

TEST_CASE("chord_bisect bracket length never exceeds 6x the true chord") {
    RngStream rng(1008, 0);
    auto ball = unit_ball(2);
    for (int trial = 0; trial < 200; ++trial) {
        Point x = pt(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
        if (x.norm() > 0.9) continue;
        Point dir = sample_direction(rng, 2);
        auto chord = chord_bisect(ball, x, dir, 1e-9);
        // analytic chord of the unit ball: t^2 + 2 t <x,dir> + |x|^2 - 1 = 0
        double bterm = x.dot(dir);
        double disc = std::sqrt(bterm * bterm - (x.squaredNorm() - 1.0));
        double lo = -bterm - disc, hi = -bterm + disc;
        REQUIRE(chord.lambda1 <= lo + 1e-12);
        REQUIRE(chord.lambda2 >= hi - 1e-12);
        REQUIRE(chord.length() <= 6.0 * (hi - lo));
        REQUIRE(chord.length() >= (hi - lo) * (1.0 - 1e-9));
    }
}

TEST_CASE("hit_and_run_step lands inside and spends a bounded oracle budget") {
    RngStream rng(1009, 0);
    auto ball = unit_ball(2);
    const double eps0 = 1e-9;
    Point x = Point::Zero(2);
    long long before = ball.calls();
    const int steps = 2000;
    for (int i = 0; i < steps; ++i) {
        x = hit_and_run_step(x, ball, rng, eps0);
        REQUIRE(x.norm() <= 1.0);
    }
    double per_step = static_cast<double>(ball.calls() - before) / steps;
    CHECK(per_step <= 3.0 * std::log2(2.0 / eps0) + 8.0 + 1.0);  // +1 anchor check
}

TEST_CASE("hit-and-run occupancy matches the uniform law on the 2-ball") {
    RngStream rng(1010, 0);
    auto ball = unit_ball(2);
    Point x = Point::Zero(2);
    const int steps = 100000;
    const int thin = 10;  // decorrelate before the chi-square count
    // 4 quadrants x 2 equal-area annuli
    std::vector<long long> counts(8, 0);
    for (int i = 0; i < steps; ++i) {
        x = hit_and_run_step(x, ball, rng, 1e-9);
        if (i % thin != 0) continue;
        int quadrant = (x(0) > 0) | ((x(1) > 0) << 1);
        int annulus = x.norm() > std::sqrt(0.5) ? 1 : 0;
        ++counts[quadrant + 4 * annulus];
    }
    std::vector<double> probs(8, 0.125);
    CHECK(statutil::chi2_gof_pvalue(counts, probs) > 1e-3);
}

TEST_CASE("hit-and-run per-quadrant balance on the square-ball intersection") {
    RngStream rng(1011, 0);
    MembershipOracle body;
    body.contains = [](const Point& x) {
        return x.norm() <= 1.0 && std::abs(x(0)) <= 0.8 && std::abs(x(1)) <= 0.8;
    };
    body.outer_radius = 1.0;
    body.inner_radius = 0.8;
    Point x = Point::Zero(2);
    std::vector<long long> counts(4, 0);
    for (int i = 0; i < 100000; ++i) {
        x = hit_and_run_step(x, body, rng, 1e-9);
        if (i % 10 != 0) continue;
        ++counts[(x(0) > 0) | ((x(1) > 0) << 1)];
    }
    std::vector<double> probs(4, 0.25);
    CHECK(statutil::chi2_gof_pvalue(counts, probs) > 1e-3);
}

TEST_CASE("builtin kernels") {
    // example2 from x = 0.5 jumps into [-1, 0] every time
    auto ex2 = KernelSampler::example2(false);
    RngStream rng(1012, 0);
    for (int i = 0; i < 1000; ++i) {
        Point y = ex2.step(pt(0.5), rng);
        REQUIRE(y(0) <= 0.0);
        REQUIRE(y(0) >= -1.0);
    }
    // contracting normal keeps N(0,1) stationary: long-run variance 1
    auto cn = KernelSampler::contracting_normal(0.5);
    Point x = pt(0.0);
    double sum = 0.0, sum_sq = 0.0;
    const int steps = 200000;
    for (int i = 0; i < steps; ++i) {
        x = cn.step(x, rng);
        sum += x(0);
        sum_sq += x(0) * x(0);
    }
    double mean = sum / steps;
    double var = sum_sq / steps - mean * mean;
    // autocorrelated draws: generous 3 sigma with an effective sample size
    double ess = steps * (1.0 - 0.5 * 0.5) / (1.0 + 0.5 * 0.5);
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / ess) + 0.01);

    // example1 proposals stay in [0,1] and follow the quadratic inverse CDF
    auto ex1 = KernelSampler::example1();
    for (int i = 0; i < 1000; ++i) {
        Point y = ex1.step(pt(0.3), rng);
        REQUIRE(y(0) >= 0.0);
        REQUIRE(y(0) <= 1.0 + 1e-12);
    }
}

TEST_CASE("independence sampler converges in distribution to N(0,1)") {
    // empirical CDF distance to the target shrinks roughly like (1 - 1/xi)^n
    auto kernel = KernelSampler::independence_normal(2.0);
    auto normal_cdf = [](double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); };
    const int chains = 4000;
    double prev = 1.0;
    for (int n : {1, 4, 16}) {
        std::vector<double> sample;
        for (int c = 0; c < chains; ++c) {
            RngStream rng(1013, static_cast<std::uint64_t>(c));
            Point x = pt(4.0);  // start far in the tail
            for (int i = 0; i < n; ++i) x = kernel.step(x, rng);
            sample.push_back(x(0));
        }
        double d = statutil::ks_statistic(sample, normal_cdf);
        CHECK(d < prev + 0.05);
        prev = d;
    }
    // after 16 steps the bound (1 - 1/2)^16 is tiny: only sampling noise left
    CHECK(prev < 0.05);
}

TEST_CASE("lazy example2 autocovariance decays like 2^{-k}") {
    auto kernel = KernelSampler::example2(true);
    auto u = [](double v) {
        return ((v > -0.5 && v <= 0.0) || v > 0.5) ? 1.0 : -1.0;
    };
    RngStream rng(1014, 0);
    // stationary start: uniform on [-1,1]
    Point x = pt(rng.uniform(-1.0, 1.0));
    const int steps = 400000;
    std::vector<double> series(steps);
    for (int i = 0; i < steps; ++i) {
        x = kernel.step(x, rng);
        series[i] = u(x(0));
    }
    for (int lag : {1, 2, 3, 4}) {
        double acc = 0.0;
        for (int i = 0; i + lag < steps; ++i) acc += series[i] * series[i + lag];
        double cov = acc / static_cast<double>(steps - lag);
        CAPTURE(lag);
        CHECK(std::abs(cov - std::pow(0.5, lag)) < 0.01);
    }
}

TEST_CASE("l1_contraction_1d") {
    // first worked kernel: k(x,y) = (1+x+y)/(x+3/2), rho = (x+3/2)/2 -> 1/24
    auto kernel = [](double x, double y) { return (1.0 + x + y) / (x + 1.5); };
    auto rho = [](double x) { return 0.5 * (x + 1.5); };
    double alpha = l1_contraction_1d(kernel, rho, 0.0, 1.0, 64);
    CHECK(alpha == doctest::Approx(1.0 / 24.0).epsilon(1e-4 * 24.0));

    // scaling rho by a constant leaves the value unchanged
    auto rho_scaled = [](double x) { return 17.0 * 0.5 * (x + 1.5); };
    CHECK(l1_contraction_1d(kernel, rho_scaled, 0.0, 1.0, 64) ==
          doctest::Approx(alpha).epsilon(1e-10));

    // iid kernel k(x,y) = rho(y): contraction coefficient zero
    auto iid = [](double, double y) { return 0.5 * (y + 1.5); };
    CHECK(l1_contraction_1d(iid, rho, 0.0, 1.0, 32) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("trajectories are reproducible for fixed (seed, stream, config)") {
    auto kernel = KernelSampler::contracting_normal(0.7);
    std::vector<double> first;
    for (int rep = 0; rep < 2; ++rep) {
        RngStream rng(424242, 5);
        Point x = pt(1.0);
        std::vector<double> trace;
        for (int i = 0; i < 50; ++i) {
            x = kernel.step(x, rng);
            trace.push_back(x(0));
        }
        if (rep == 0) {
            first = trace;
        } else {
            REQUIRE(first == trace);
        }
    }
}

TEST_CASE("l1_contraction_1d reports non-stabilizing refinements") {
    // a near-singular spike pinned at a grid node: the trapezoid value keeps
    // halving with the mesh and never settles
    auto spiked = [](double x, double) { return 1.0 + std::pow(x + 1e-30, -0.9); };
    auto flat = [](double) { return 1.0; };
    CHECK_THROWS_AS(sampler::l1_contraction_1d(spiked, flat, 0.0, 1.0, 4), NonConvergent);
}

TEST_CASE("test-helper sanity: chi-square and KS survival functions") {
    CHECK(statutil::chi2_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(statutil::chi2_sf(18.475, 7.0) == doctest::Approx(0.01).epsilon(2e-3));
    // Kolmogorov: Q(1.3581) ~ 0.05, Q(1.9495) ~ 0.001
    CHECK(statutil::ks_sf(1.3581) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(statutil::ks_sf(1.9495) == doctest::Approx(0.001).epsilon(2e-2));
}
