#pragma once

#include <string>
#include <vector>

#include "mcerr/bounds.hpp"
#include "mcerr/finite_chain.hpp"

namespace mcerr::tables {

/// Burn-in comparison table.  One row per (N, beta): the numerically
/// minimized burn-in and the suggested one, for the {2} u [4,inf] branch and
/// for p in (2,4).  C is the aggregate constant, shared by every branch.
std::string burnin_table(const std::vector<long long>& budgets,
                         const std::vector<double>& betas, double c, double p);

/// Contracting-normals table in the (theta, c, beta_hat, n0, n, N) layout.
std::string normals_table(const std::vector<double>& thetas, double x0, double delta,
                          double p, double eps);

enum class FigureKind {
    fig2_circle,      // circle T = 999 at the suggested burn-in
    fig3_hypercube,   // hypercube d = 50
    fig4_star,        // star theta = 0.1, T = 1e5
    fig5_example2,    // lazy two-block kernel, delta = 1e-3
    fig_est_curves,   // est(N - n0, n0) for several n0 at beta = 0.99, C = 1e30
};

/// Figure source data: columns N, exact_error, lower_bound, upper_bound on
/// the root-error scale, evaluated at the family's suggested burn-in.
/// fig_est_curves instead emits N, n0, est, exact_stationary rows.
std::string figure_data(FigureKind kind, const std::vector<long long>& total_budgets);

/// Log-spaced grid of distinct integers in [lo, hi].
std::vector<long long> log_grid(long long lo, long long hi, int points);

}  // namespace mcerr::tables
