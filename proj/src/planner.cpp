#include "mcerr/planner.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace mcerr::planner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// ceiling with the borderline snap, staying in double for magnitudes past
// the int64 range
double ceil_big(double x) {
    if (!(x < 1e300)) throw SizeOverflow("plan: burn-in out of range");
    if (x <= 0.0) return 0.0;
    if (x < 9.0e18) return static_cast<double>(bounds::ceil_snap(x));
    return std::ceil(x);
}

// smallest n with c1/sqrt(n) + c2/n <= eps
double solve_budget(double c1, double c2, double eps) {
    double s = (-c1 + std::sqrt(c1 * c1 + 4.0 * c2 * eps)) / (2.0 * c2);
    double n = 1.0 / (s * s);
    return std::max(ceil_big(n), 1.0);
}

double branch_logconcave(double p, double lipschitz, double r) {
    if (p > 2.0 && p < 4.0) {
        return (p / (p - 2.0)) * (lipschitz * r + 0.5 * std::log(32.0 * p / (p - 2.0)));
    }
    return 2.0 * lipschitz * r + 4.16;
}

double branch_convex(double p, int d, double r) {
    if (p > 2.0 && p < 4.0) {
        return (p / (2.0 * (p - 2.0))) * (d * std::log(r) + std::log(32.0 * p / (p - 2.0)));
    }
    return d * std::log(r) + 4.16;
}

// expected membership calls per hit-and-run step: 3 log2(2r/eps0) + 8
double har_calls_per_step(double r, double eps0) {
    return 3.0 * std::log2(2.0 * r / eps0) + 8.0;
}

}  // namespace

void LogConcaveProblem::validate() const {
    if (d < 1 || !(r > 0.0) || lipschitz < 0.0) throw DomainError("LogConcaveProblem: invalid");
    if (!(p > 2.0)) throw DomainError("LogConcaveProblem: p must exceed 2");
    if (eps && (!(*eps > 0.0) || !(*eps < 1.0))) throw DomainError("LogConcaveProblem: eps in (0,1)");
}

void ConvexBodyProblem::validate() const {
    if (d < 1 || !(r >= 1.0)) throw DomainError("ConvexBodyProblem: requires r >= 1");
    if (!(p > 2.0)) throw DomainError("ConvexBodyProblem: p must exceed 2");
    if (eps && (!(*eps > 0.0) || !(*eps < 1.0))) throw DomainError("ConvexBodyProblem: eps in (0,1)");
}

double logconcave_error_bound(int d, double r, double lipschitz, double n) {
    double a = std::sqrt(static_cast<double>(d + 1)) *
               std::max(r * lipschitz, std::sqrt(static_cast<double>(d + 1)));
    double b = static_cast<double>(d + 1) *
               std::max(r * r * lipschitz * lipschitz, static_cast<double>(d + 1));
    return 1089.0 * a / std::sqrt(n) + 8.38e5 * b / n;
}

Plan plan_logconcave(const LogConcaveProblem& prob) {
    prob.validate();
    Plan plan;
    plan.walk = "ball_walk_metropolis";
    double root = std::sqrt(static_cast<double>(prob.d + 1));
    plan.delta = prob.lipschitz > 0.0 ? std::min(1.0 / prob.lipschitz, prob.r / root)
                                      : prob.r / root;
    plan.gap_lower = bounds::metro_gap_lower(prob.d, prob.r, prob.lipschitz);

    double size = static_cast<double>(prob.d + 1) *
                  std::max(prob.r * prob.r * prob.lipschitz * prob.lipschitz,
                           static_cast<double>(prob.d + 1));
    plan.n0 = ceil_big(5.92e6 * size * branch_logconcave(prob.p, prob.lipschitz, prob.r));

    if (prob.eps) {
        double a = 1089.0 * root * std::max(prob.r * prob.lipschitz, root);
        double b = 8.38e5 * size;
        plan.n = solve_budget(a, b, *prob.eps);
        plan.error_bound = logconcave_error_bound(prob.d, prob.r, prob.lipschitz, plan.n);
    } else {
        plan.n = 0;
        plan.error_bound = kInf;
    }
    plan.density_calls = plan.n + plan.n0;
    plan.f_calls = plan.n;
    plan.oracle_budget = plan.density_calls + plan.f_calls;
    return plan;
}

double convex_body_error_bound(int d, double r, double n) {
    return 9.5e7 * d * r / std::sqrt(n) + 6.4e15 * d * d * r * r / n;
}

Plan plan_convex_body(const ConvexBodyProblem& prob) {
    prob.validate();
    Plan plan;
    plan.walk = "hit_and_run";
    double dr = static_cast<double>(prob.d) * prob.r;
    plan.gap_lower = std::pow(2.0, -52.0) / (dr * dr);
    plan.n0 = ceil_big(4.51e15 * dr * dr * branch_convex(prob.p, prob.d, prob.r));
    if (prob.eps) {
        plan.n = solve_budget(9.5e7 * dr, 6.4e15 * dr * dr, *prob.eps);
        plan.error_bound = convex_body_error_bound(prob.d, prob.r, plan.n);
    } else {
        plan.n = 0;
        plan.error_bound = kInf;
    }
    double steps = plan.n + plan.n0;
    plan.density_calls = steps * har_calls_per_step(prob.r, 1e-9 * prob.r);
    plan.f_calls = static_cast<double>(plan.n);
    plan.oracle_budget = plan.density_calls + plan.f_calls;
    return plan;
}

std::string NormalsPlan::csv_header() { return "theta,c,beta_hat,n0,n,N"; }

std::string NormalsPlan::csv_row(double theta) const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.0f,%.0f,%.0f", theta, c_star,
                  beta_hat, plan.n0, plan.n, plan.n0 + plan.n);
    return buf;
}

NormalsPlan plan_contracting_normals(double theta, double x0, double delta, double p,
                                     double eps) {
    if (!(theta > 0.0) || !(theta < 1.0)) throw DomainError("contracting_normals: theta in (0,1)");
    if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("contracting_normals: delta in (0,1)");
    if (x0 < 0.0) throw DomainError("contracting_normals: x0 must be non-negative");
    if (!(p > 2.0)) throw DomainError("contracting_normals: p must exceed 2");

    NormalsPlan out;
    auto opt = bounds::optimize_beta_hat(theta);
    out.c_star = opt.c_star;
    out.beta_hat = opt.beta_hat_star;
    out.density_norm =
        std::sqrt(kPi / 2.0) * std::exp(0.5 * (x0 + delta) * (x0 + delta)) / delta;

    bounds::GapParams gap;
    gap.beta = out.beta_hat;
    gap.lambda_max = out.beta_hat;
    bounds::BurninInputs in;
    in.p = p;
    in.density_norm = out.density_norm;
    in.c = (p < 4.0 ? 32.0 * p / (p - 2.0) : 64.0) * out.density_norm;

    out.plan.walk = "contracting_normal";
    out.plan.gap_lower = 1.0 - out.beta_hat;
    out.plan.n0 = static_cast<double>(bounds::suggest_burnin_general(in, gap));
    out.plan.n = static_cast<double>(bounds::sample_size_for_eps(out.beta_hat, eps));
    out.plan.error_bound = bounds::est_upper(out.plan.n, static_cast<long long>(out.plan.n0),
                                             out.beta_hat, in.c, p);
    out.plan.density_calls = out.plan.n + out.plan.n0;
    out.plan.f_calls = out.plan.n;
    out.plan.oracle_budget = out.plan.density_calls + out.plan.f_calls;
    return out;
}

WorkedExamplePlan plan_worked_example(WorkedExample which, const WorkedExampleParams& params) {
    WorkedExamplePlan out;
    double eps = params.eps;
    if (!(eps > 0.0) || !(eps < 1.0)) throw DomainError("worked_example: eps in (0,1)");
    switch (which) {
        case WorkedExample::example1: {
            if (!(params.delta > 0.0) || !(params.delta < 2.0 / 3.0)) {
                throw DomainError("example1: delta in (0, 2/3)");
            }
            out.alpha = 1.0 / 24.0;
            out.m = 1.0;
            double dn = 4.0 / (3.0 * params.delta) - 1.0;
            out.plan.walk = "example1";
            out.plan.n0 = dn <= 1.0 ? 0.0 : ceil_big(std::log(dn) / std::log(24.0));
            out.upper_coeff_n = 48.0 / 23.0;
            out.upper_coeff_n2 = 1152.0 / 529.0;
            break;
        }
        case WorkedExample::example2: {
            if (!(params.delta > 0.0) || !(params.delta < 1.0)) {
                throw DomainError("example2: delta in (0,1)");
            }
            out.alpha = 0.5;
            out.m = 3.0;
            double dn = 2.0 / params.delta - 1.0;
            out.plan.walk = "example2";
            out.plan.n0 =
                out.m * dn <= 1.0 ? 0.0 : ceil_big(std::log(out.m * dn) / std::log(2.0));
            out.upper_coeff_n = 4.0;
            out.upper_coeff_n2 = 8.0;
            out.lower_coeff_n = 3.0;
            out.lower_coeff_n2 = 16.0;
            break;
        }
        case WorkedExample::independence_normal: {
            if (!(params.xi > 1.0)) throw DomainError("independence_normal: xi must exceed 1");
            if (!(params.delta > 0.0) || !(params.delta < 1.0)) {
                throw DomainError("independence_normal: delta in (0,1)");
            }
            out.alpha = 1.0 - 1.0 / params.xi;
            out.m = 1.0;
            out.plan.walk = "independence_normal";
            // log(1 - 1/xi)^{-1} >= 1/xi relaxation; 0.23 covers log(sqrt(pi/2))
            double x0d = params.x0 + params.delta;
            out.plan.n0 = ceil_big(params.xi *
                                   (std::log(1.0 / params.delta) + 0.5 * x0d * x0d + 0.23));
            out.upper_coeff_n = 2.0 * params.xi;
            out.upper_coeff_n2 = 2.0 * params.xi * params.xi;
            break;
        }
    }
    out.plan.gap_lower = 1.0 - out.alpha;
    out.plan.n = static_cast<double>(bounds::sample_size_for_eps(out.alpha, eps));
    double n = out.plan.n;
    out.plan.error_bound = std::sqrt(out.upper_coeff_n / n + out.upper_coeff_n2 / (n * n));
    out.plan.density_calls = out.plan.n + out.plan.n0;
    out.plan.f_calls = n;
    out.plan.oracle_budget = out.plan.density_calls + out.plan.f_calls;
    return out;
}

}  // namespace mcerr::planner
