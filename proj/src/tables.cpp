#include "mcerr/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mcerr/planner.hpp"

namespace mcerr::tables {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::vector<long long> log_grid(long long lo, long long hi, int points) {
    if (lo < 1 || hi < lo || points < 1) throw DomainError("log_grid: invalid range");
    std::vector<long long> out;
    out.reserve(points);
    double llo = std::log(static_cast<double>(lo));
    double lhi = std::log(static_cast<double>(hi));
    long long prev = 0;
    for (int i = 0; i < points; ++i) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        auto v = static_cast<long long>(std::llround(std::exp(llo + t * (lhi - llo))));
        v = std::clamp(v, lo, hi);
        if (v != prev) out.push_back(v);
        prev = v;
    }
    return out;
}

std::string burnin_table(const std::vector<long long>& budgets,
                         const std::vector<double>& betas, double c, double p) {
    if (!(p > 2.0) || !(p < 4.0)) throw DomainError("burnin_table: p must lie in (2,4)");
    std::ostringstream out;
    out << "# schema=burnin-table v1\n";
    out << "N,beta,n_opt_tail,n0_suggested_tail,n_opt_mid,n0_suggested_mid,"
           "mid_fits_budget\n";
    for (long long n : budgets) {
        for (double beta : betas) {
            double q = std::log(c) / std::log(1.0 / beta);
            auto tail = bounds::minimize_burnin(n, beta, c, 4.0);
            auto mid = bounds::minimize_burnin(n, beta, c, p);
            long long sugg_tail = std::max<long long>(bounds::ceil_snap(q), 0);
            long long sugg_mid =
                std::max<long long>(bounds::ceil_snap(p / (2.0 * (p - 2.0)) * q), 0);
            out << n << "," << fmt(beta) << "," << tail.n0_opt << "," << sugg_tail << ","
                << mid.n0_opt << "," << sugg_mid << ","
                << (mid.suggested_fits_budget ? 1 : 0) << "\n";
        }
    }
    return out.str();
}

std::string normals_table(const std::vector<double>& thetas, double x0, double delta,
                          double p, double eps) {
    std::ostringstream out;
    out << "# schema=normals-table v1\n";
    out << planner::NormalsPlan::csv_header() << "\n";
    for (double theta : thetas) {
        auto row = planner::plan_contracting_normals(theta, x0, delta, p, eps);
        out << row.csv_row(theta) << "\n";
    }
    return out.str();
}

namespace {

struct FigureCurves {
    long long n0;
    // squared-scale callables evaluated at the sample size n
    std::function<double(long long)> exact_sq;
    std::function<double(long long)> lower_sq;
    std::function<double(long long)> upper_sq;
};

FigureCurves circle_curves() {
    auto spec = finite::ToySpec::circle(999);
    auto sc = finite::toy_scalars(spec);
    long long n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
    double b1 = sc.beta1, b = sc.beta;
    return {
        n0,
        [spec, n0](long long n) { return finite::analytic_example_error(spec, n, n0); },
        [b1, b](long long n) {
            return finite::bounds_finite_at_suggested(b1, b, n).lower;
        },
        // beta1 differs from beta here, so the sharper mixed-term upper bound
        // applies: 2/(n(1-beta1)) + 2/(n^2(1-beta)^2)
        [b1, b](long long n) { return finite::bounds_finite(b1, b, 1.0, n, 0).upper; },
    };
}

FigureCurves hypercube_curves() {
    auto spec = finite::ToySpec::hypercube(50);
    auto sc = finite::toy_scalars(spec);
    long long n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
    double b1 = sc.beta1, b = sc.beta;
    return {
        n0,
        [spec, n0](long long n) { return finite::analytic_example_error(spec, n, n0); },
        [b1, b](long long n) { return finite::bounds_finite_at_suggested(b1, b, n).lower; },
        [b1, b](long long n) { return finite::bounds_finite_at_suggested(b1, b, n).upper; },
    };
}

FigureCurves star_curves() {
    auto spec = finite::ToySpec::star(100000, 0.1);
    auto sc = finite::toy_scalars(spec);
    long long n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
    double b1 = sc.beta1, b = sc.beta;
    return {
        n0,
        [spec, n0](long long n) { return finite::analytic_example_error(spec, n, n0); },
        [b1, b](long long n) { return finite::bounds_finite_at_suggested(b1, b, n).lower; },
        [b1, b](long long n) { return finite::bounds_finite_at_suggested(b1, b, n).upper; },
    };
}

FigureCurves example2_curves() {
    auto ex = planner::plan_worked_example(planner::WorkedExample::example2,
                                           {.delta = 1e-3, .eps = 0.5});
    auto n0 = static_cast<long long>(ex.plan.n0);
    return {
        n0,
        [](long long n) {
            double nn = static_cast<double>(n);
            return 3.0 / nn - 4.0 * (1.0 - std::pow(2.0, -nn)) / (nn * nn);
        },
        [ex](long long n) {
            double nn = static_cast<double>(n);
            return std::max(ex.lower_coeff_n / nn - ex.lower_coeff_n2 / (nn * nn), 0.0);
        },
        [ex](long long n) {
            double nn = static_cast<double>(n);
            return ex.upper_coeff_n / nn + ex.upper_coeff_n2 / (nn * nn);
        },
    };
}

std::string est_curves(const std::vector<long long>& budgets) {
    constexpr double kBeta = 0.99;
    constexpr double kC = 1e30;
    long long suggested = std::max<long long>(
        bounds::ceil_snap(std::log(kC) / std::log(1.0 / kBeta)), 0);
    std::ostringstream out;
    out << "# schema=figure-data-est-curves v1\n";
    out << "N,n0_label,n0,est,exact_stationary\n";
    struct Choice {
        const char* label;
        long long n0;
        bool half_budget;
    };
    const Choice choices[] = {
        {"none", 0, false},
        {"half_suggested", suggested / 2, false},
        {"suggested", suggested, false},
        {"double_suggested", 2 * suggested, false},
        {"half_budget", 0, true},
    };
    for (long long total : budgets) {
        double nn = static_cast<double>(total);
        double stationary = std::sqrt(bounds::w_factor(total, kBeta)) / nn;
        for (const auto& choice : choices) {
            long long n0 = choice.half_budget ? total / 2 : choice.n0;
            if (n0 >= total) continue;
            double est = bounds::est_upper(static_cast<double>(total - n0), n0, kBeta, kC, 4.0);
            out << total << "," << choice.label << "," << n0 << "," << fmt(est) << ","
                << fmt(stationary) << "\n";
        }
    }
    return out.str();
}

}  // namespace

std::string figure_data(FigureKind kind, const std::vector<long long>& total_budgets) {
    if (kind == FigureKind::fig_est_curves) return est_curves(total_budgets);
    FigureCurves curves;
    switch (kind) {
        case FigureKind::fig2_circle:
            curves = circle_curves();
            break;
        case FigureKind::fig3_hypercube:
            curves = hypercube_curves();
            break;
        case FigureKind::fig4_star:
            curves = star_curves();
            break;
        case FigureKind::fig5_example2:
            curves = example2_curves();
            break;
        default:
            throw DomainError("figure_data: unknown kind");
    }
    std::ostringstream out;
    out << "# schema=figure-data v1\n";
    out << "N,burnin,exact_error,lower_bound,upper_bound\n";
    for (long long total : total_budgets) {
        long long n = total - curves.n0;
        if (n < 1) continue;
        out << total << "," << curves.n0 << "," << fmt(std::sqrt(curves.exact_sq(n))) << ","
            << fmt(std::sqrt(std::max(curves.lower_sq(n), 0.0))) << ","
            << fmt(std::sqrt(curves.upper_sq(n))) << "\n";
    }
    return out.str();
}

}  // namespace mcerr::tables
