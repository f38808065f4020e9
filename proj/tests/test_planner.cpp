#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcerr/estimator.hpp"
#include "mcerr/planner.hpp"

using namespace mcerr;
using namespace mcerr::planner;

TEST_CASE("plan_logconcave spot values") {
    // d = 1, r = 1, L = 0, p = inf: n0 = ceil(5.92e6 * 2 * 2 * 4.16) = 98508800
    LogConcaveProblem prob;
    prob.d = 1;
    prob.r = 1.0;
    prob.lipschitz = 0.0;
    prob.p = bounds::kPInf;
    auto plan = plan_logconcave(prob);
    CHECK(plan.n0 == 98508800.0);
    CHECK(*plan.delta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(plan.gap_lower == doctest::Approx(4.225e-7).epsilon(1e-12));
    CHECK(plan.n == 0.0);
    CHECK(std::isinf(plan.error_bound));

    // L = 0 always reduces delta* to r/sqrt(d+1)
    prob.d = 7;
    prob.r = 3.0;
    CHECK(*plan_logconcave(prob).delta ==
          doctest::Approx(3.0 / std::sqrt(8.0)).epsilon(1e-15));

    // with a target eps the plan solves the display for n
    prob.d = 1;
    prob.r = 1.0;
    prob.eps = 0.01;
    auto sized = plan_logconcave(prob);
    CHECK(sized.n > 0.0);
    CHECK(sized.error_bound <= 0.01 * (1.0 + 1e-12));
    // one step less would miss the target
    double less = logconcave_error_bound(1, 1.0, 0.0, sized.n - 1.0);
    CHECK(less > 0.01);
}

TEST_CASE("plan_logconcave internal consistency and complexity form") {
    LogConcaveProblem prob;
    prob.d = 3;
    prob.r = 2.0;
    prob.lipschitz = 1.5;
    prob.p = 3.0;
    prob.eps = 0.05;
    auto plan = plan_logconcave(prob);
    // stored bound re-derives from (d, r, L, n)
    CHECK(plan.error_bound ==
          doctest::Approx(logconcave_error_bound(3, 2.0, 1.5, plan.n)).epsilon(1e-12));
    // total budget inside the complexity display
    double size = 4.0 * std::max(4.0 * 2.25, 4.0);
    double branch = (3.0 / 1.0) * (3.0 + 0.5 * std::log(96.0));
    double complexity = size * (4.8e6 / (0.05 * 0.05) + 1.2e6 * branch);
    CHECK(plan.n + plan.n0 <= complexity);
}

TEST_CASE("plan_convex_body spot values") {
    ConvexBodyProblem prob;
    prob.d = 1;
    prob.r = 1.0;
    prob.p = 4.0;
    auto plan = plan_convex_body(prob);
    CHECK(plan.n0 == 18761600000000000.0);  // ceil(4.51e15 * 4.16)
    CHECK(plan.gap_lower == doctest::Approx(std::pow(2.0, -52.0)).epsilon(1e-14));

    // r = 1 zeroes the d log r term: n0 independent of d up to the d^2 factor
    ConvexBodyProblem prob_d3;
    prob_d3.d = 3;
    prob_d3.r = 1.0;
    prob_d3.p = 4.0;
    CHECK(plan_convex_body(prob_d3).n0 == doctest::Approx(9.0 * plan.n0).epsilon(1e-12));

    prob.eps = 0.01;
    auto sized = plan_convex_body(prob);
    CHECK(sized.error_bound <= 0.01 * (1.0 + 1e-12));
    CHECK(sized.error_bound ==
          doctest::Approx(convex_body_error_bound(1, 1.0, sized.n)).epsilon(1e-12));
    // complexity display
    double branch = 1.0 * std::log(1.0) + 4.16;
    double complexity = 1.0 * (4e16 / (0.01 * 0.01) + 5e15 * branch);
    CHECK(sized.n + sized.n0 <= complexity);
}

TEST_CASE("chapter-4 plans are monotone in r, L, d") {
    // with a fixed target eps the planned sizes grow; the bound display at a
    // fixed n grows as well
    double prev_n0 = 0.0, prev_n = 0.0, prev_disp = 0.0;
    for (double r : {1.0, 2.0, 5.0}) {
        LogConcaveProblem prob{2, r, 1.0, 4.0, 0.05};
        auto plan = plan_logconcave(prob);
        CHECK(plan.n0 >= prev_n0);
        CHECK(plan.n >= prev_n);
        double disp = logconcave_error_bound(2, r, 1.0, 1e6);
        CHECK(disp >= prev_disp);
        prev_n0 = plan.n0;
        prev_n = plan.n;
        prev_disp = disp;
    }
    prev_n0 = prev_n = prev_disp = 0.0;
    for (double lipschitz : {0.0, 2.0, 8.0}) {
        LogConcaveProblem prob{2, 1.0, lipschitz, 4.0, 0.05};
        auto plan = plan_logconcave(prob);
        CHECK(plan.n0 >= prev_n0);
        CHECK(plan.n >= prev_n);
        double disp = logconcave_error_bound(2, 1.0, lipschitz, 1e6);
        CHECK(disp >= prev_disp);
        prev_n0 = plan.n0;
        prev_n = plan.n;
        prev_disp = disp;
    }
    prev_n0 = prev_n = prev_disp = 0.0;
    for (int d : {1, 3, 9}) {
        ConvexBodyProblem prob{d, 2.0, 4.0, 0.05};
        auto plan = plan_convex_body(prob);
        CHECK(plan.n0 >= prev_n0);
        CHECK(plan.n >= prev_n);
        double disp = convex_body_error_bound(d, 2.0, 1e6);
        CHECK(disp >= prev_disp);
        prev_n0 = plan.n0;
        prev_n = plan.n;
        prev_disp = disp;
    }
}

TEST_CASE("plan_contracting_normals reference rows") {
    struct Row {
        double theta, c, beta_hat, n0, n, total;
    };
    // reference values: c and beta_hat to the printed digits, sizes to 0.5%
    const Row rows[] = {
        {0.91, 1.12845, 0.999664, 2.82241e5, 5.94614e7, 5.97437e7},
        {0.92, 1.11691, 0.999816, 5.16275e5, 1.08759e8, 1.09275e8},
        {0.93, 1.10499, 0.999912, 1.08257e6, 2.28043e8, 2.29126e8},
        {0.94, 1.09260, 0.999966, 2.76738e6, 5.82923e8, 5.85690e8},
        {0.95, 1.07964, 0.999990, 9.60536e6, 2.02337e9, 2.03297e9},
        {0.96, 1.06599, 0.999998, 5.58578e7, 1.17624e10, 1.18183e10},
    };
    for (const auto& row : rows) {
        CAPTURE(row.theta);
        auto np = plan_contracting_normals(row.theta, 0.0, 0.1, 2.1, 0.01);
        CHECK(std::abs(np.beta_hat - row.beta_hat) < 5e-6);
        CHECK(std::abs(np.c_star - row.c) < 1e-2);
        CHECK(std::abs(np.plan.n0 - row.n0) / row.n0 < 5e-3);
        CHECK(std::abs(np.plan.n - row.n) / row.n < 5e-3);
        CHECK(std::abs(np.plan.n0 + np.plan.n - row.total) / row.total < 5e-3);
        // internal consistency with the bound calculus
        CHECK(np.plan.error_bound ==
              doctest::Approx(bounds::est_upper(np.plan.n,
                                                static_cast<long long>(np.plan.n0),
                                                np.beta_hat,
                                                (2.1 / 0.1) * 32.0 * np.density_norm, 2.1))
                  .epsilon(1e-12));
    }
    // a wider initial interval shrinks the burn-in
    double prev = std::numeric_limits<double>::infinity();
    for (double delta : {0.05, 0.1, 0.3, 0.6}) {
        auto np = plan_contracting_normals(0.91, 0.0, delta, 2.1, 0.01);
        CHECK(np.plan.n0 <= prev);
        prev = np.plan.n0;
    }
}

TEST_CASE("plan_worked_example") {
    // two-block kernel at delta = 1e-3: burn-in 13
    auto ex2 = plan_worked_example(WorkedExample::example2, {.delta = 1e-3, .eps = 0.05});
    CHECK(ex2.plan.n0 == 13.0);
    CHECK(ex2.alpha == 0.5);
    CHECK(ex2.m == 3.0);
    CHECK(ex2.upper_coeff_n == 4.0);
    CHECK(ex2.upper_coeff_n2 == 8.0);
    CHECK(ex2.lower_coeff_n == 3.0);
    CHECK(ex2.lower_coeff_n2 == 16.0);
    // bound at the chosen n meets the target and re-derives from est_upper
    CHECK(ex2.plan.error_bound <= 0.05 * (1.0 + 1e-12));
    CHECK(ex2.plan.error_bound ==
          doctest::Approx(bounds::est_upper(ex2.plan.n, 0, ex2.alpha, 1.0, 4.0))
              .epsilon(1e-12));
    // sandwich is non-trivial once 3/n - 16/n^2 > 0, i.e. n >= 6
    CHECK(3.0 / 6.0 - 16.0 / 36.0 > 0.0);
    CHECK(3.0 / 5.0 - 16.0 / 25.0 < 0.0);

    auto ex1 = plan_worked_example(WorkedExample::example1, {.delta = 1e-3, .eps = 0.05});
    CHECK(ex1.alpha == doctest::Approx(1.0 / 24.0));
    CHECK(ex1.plan.n0 ==
          std::ceil(std::log(4.0 / (3.0 * 1e-3) - 1.0) / std::log(24.0)));
    CHECK(ex1.upper_coeff_n == doctest::Approx(48.0 / 23.0).epsilon(1e-15));
    CHECK(ex1.upper_coeff_n2 == doctest::Approx(1152.0 / 529.0).epsilon(1e-15));
    // bound below 5/n for every n
    for (double n : {1.0, 10.0, 1000.0}) {
        CHECK(ex1.upper_coeff_n / n + ex1.upper_coeff_n2 / (n * n) < 5.0 / n);
    }
    // boundary: log argument <= 1 collapses the burn-in
    auto ex1_edge =
        plan_worked_example(WorkedExample::example1, {.delta = 0.6659, .eps = 0.05});
    CHECK(ex1_edge.plan.n0 == 0.0);

    auto ind = plan_worked_example(WorkedExample::independence_normal,
                                   {.delta = 0.1, .x0 = 0.0, .xi = 2.0, .eps = 0.05});
    CHECK(ind.plan.n0 ==
          std::ceil(2.0 * (std::log(10.0) + 0.5 * 0.01 + 0.23)));
    CHECK(ind.upper_coeff_n == 4.0);   // 2 xi
    CHECK(ind.upper_coeff_n2 == 8.0);  // 2 xi^2
}

TEST_CASE("end-to-end soundness: planned bounds hold empirically on cheap kernels") {
    using estimator::InitialSpec;
    using estimator::RunConfig;
    using estimator::empirical_mse;
    auto check_plan = [](const sampler::KernelSampler& kernel, const InitialSpec& initial,
                         std::function<double(const estimator::Point&)> f, double target,
                         long long n, long long n0, double bound, std::uint64_t seed) {
        RunConfig cfg;
        cfg.kernel = kernel;
        cfg.initial = initial;
        cfg.integrand = std::move(f);
        cfg.integrand_name = "test";
        cfg.n = n;
        cfg.n0 = n0;
        cfg.replications = 3000;
        cfg.seed = seed;
        auto report = empirical_mse(cfg, target, 2);
        double sigma_root = report.mse_std_error /
                            (2.0 * std::sqrt(std::max(report.empirical_mse, 1e-300)));
        REQUIRE(std::sqrt(report.empirical_mse) <= bound + 3.0 * sigma_root);
    };

    // example2 with the u eigenfunction: planned upper bound holds
    {
        auto wp = plan_worked_example(WorkedExample::example2, {.delta = 1e-3, .eps = 0.2});
        auto u = [](const estimator::Point& x) {
            double v = x(0);
            return ((v > -0.5 && v <= 0.0) || v > 0.5) ? 1.0 : -1.0;
        };
        check_plan(sampler::KernelSampler::example2(true),
                   InitialSpec::uniform_interval(0.0, 1e-3), u, 0.0,
                   static_cast<long long>(wp.plan.n), static_cast<long long>(wp.plan.n0),
                   wp.plan.error_bound, 101);
    }
    // example1 with a centered coordinate integrand (2-norm below 1)
    {
        auto wp = plan_worked_example(WorkedExample::example1, {.delta = 0.05, .eps = 0.2});
        // S(x) under rho = (x + 3/2)/2 on [0,1]: 13/24
        auto f = [](const estimator::Point& x) { return x(0) - 13.0 / 24.0; };
        check_plan(sampler::KernelSampler::example1(),
                   InitialSpec::uniform_interval(0.0, 0.05), f, 0.0,
                   static_cast<long long>(wp.plan.n), static_cast<long long>(wp.plan.n0),
                   wp.plan.error_bound, 103);
    }
    // independence sampler targeting N(0,1), integrand x (2-norm 1)
    {
        auto wp = plan_worked_example(WorkedExample::independence_normal,
                                      {.delta = 0.1, .x0 = 0.0, .xi = 2.0, .eps = 0.2});
        check_plan(sampler::KernelSampler::independence_normal(2.0),
                   InitialSpec::uniform_interval(-0.1, 0.1),
                   [](const estimator::Point& x) { return x(0); }, 0.0,
                   static_cast<long long>(wp.plan.n), static_cast<long long>(wp.plan.n0),
                   wp.plan.error_bound, 107);
    }
    // contracting normals at theta = 0.5 with integrand x
    {
        auto np = plan_contracting_normals(0.5, 0.0, 0.1, 4.0, 0.2);
        check_plan(sampler::KernelSampler::contracting_normal(0.5),
                   InitialSpec::uniform_interval(-0.1, 0.1),
                   [](const estimator::Point& x) { return x(0); }, 0.0,
                   static_cast<long long>(np.plan.n), static_cast<long long>(np.plan.n0),
                   np.plan.error_bound, 109);
    }
}
