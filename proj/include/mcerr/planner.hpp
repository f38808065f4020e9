#pragma once

#include <optional>
#include <string>

#include "mcerr/bounds.hpp"

namespace mcerr::planner {

/// Integration of f against a log-concave density on an r-ball, with
/// L-Lipschitz log-density and integrand norm index p in (2, inf].
struct LogConcaveProblem {
    int d = 1;
    double r = 1.0;
    double lipschitz = 0.0;
    double p = bounds::kPInf;
    std::optional<double> eps;

    void validate() const;
};

/// Uniform integration on a convex body sandwiched between the unit ball and
/// the r-ball.
struct ConvexBodyProblem {
    int d = 1;
    double r = 1.0;
    double p = bounds::kPInf;
    std::optional<double> eps;

    void validate() const;
};

/// Certified plan: step radius (when the walk has one), burn-in, sample
/// size, spectral-gap lower bound, predicted root-MSE bound, oracle budget.
/// Burn-in and sample size are integer-valued but stored as doubles: the
/// planned budgets can exceed the int64 range and are never executed.
struct Plan {
    std::string walk;
    std::optional<double> delta;
    double n0 = 0;
    double n = 0;
    double gap_lower = 0.0;
    double error_bound = 0.0;        // root-MSE scale; +inf when no eps given
    double oracle_budget = 0.0;      // density/membership calls plus f calls
    double density_calls = 0.0;
    double f_calls = 0.0;
};

/// Metropolis delta*-ball walk plan.  delta* = min{1/L, r/sqrt(d+1)};
/// burn-in and error bound follow the explicit displays with the verbatim
/// constants 5.92e6, 1089, 8.38e5.
Plan plan_logconcave(const LogConcaveProblem& prob);

/// Root-MSE display 1089 sqrt(d+1) max{rL, sqrt(d+1)} / sqrt(n)
///                + 8.38e5 (d+1) max{r^2 L^2, d+1} / n.
double logconcave_error_bound(int d, double r, double lipschitz, double n);

/// Lazy hit-and-run plan with gap lower bound 2^-52 (dr)^-2 and the verbatim
/// constants 4.51e15, 9.5e7, 6.4e15.
Plan plan_convex_body(const ConvexBodyProblem& prob);

double convex_body_error_bound(int d, double r, double n);

struct NormalsPlan {
    Plan plan;
    double c_star = 0.0;
    double beta_hat = 0.0;
    double density_norm = 0.0;

    /// CSV row in the (theta, c, beta_hat, n0, n, N) column layout.
    std::string csv_row(double theta) const;
    static std::string csv_header();
};

/// Contracting-normals plan: optimized beta_hat, burn-in from the general
/// recipe with density norm sqrt(pi/2) exp((x0+delta)^2/2)/delta, sample size
/// for the target precision.
NormalsPlan plan_contracting_normals(double theta, double x0, double delta, double p,
                                     double eps);

enum class WorkedExample { example1, example2, independence_normal };

struct WorkedExampleParams {
    double delta = 0.1;   // width of the uniform initial interval
    double x0 = 0.0;      // center (independence_normal only)
    double xi = 2.0;      // proposal scale (independence_normal only)
    double eps = 0.01;    // target root-MSE
};

struct WorkedExamplePlan {
    Plan plan;
    double alpha = 0.0;       // L1-exponential rate used
    double m = 1.0;           // L1-exponential prefactor
    double lower_coeff_n = 0.0;   // lower bound a/n - b/n^2 (squared scale)
    double lower_coeff_n2 = 0.0;
    double upper_coeff_n = 0.0;   // upper bound a/n + b/n^2 (squared scale)
    double upper_coeff_n2 = 0.0;
};

WorkedExamplePlan plan_worked_example(WorkedExample which, const WorkedExampleParams& params);

}  // namespace mcerr::planner
