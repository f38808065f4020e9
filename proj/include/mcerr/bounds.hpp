#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcerr/errors.hpp"

namespace mcerr::bounds {

/// Sentinel for the p = infinity norm index.
inline constexpr double kPInf = std::numeric_limits<double>::infinity();

/// Smallest integer >= x, snapping to the nearest integer when x sits within
/// `snap` of it.  Ratios like log(C)/log(1/beta) routinely land a hair above
/// an integer after rounding of the inputs; the snap keeps such borderline
/// cells stable.
long long ceil_snap(double x, double snap = 1e-2);

/// W(n,a) = (n(1-a^2) - 2a(1-a^n)) / (1-a)^2, the stationary variance factor.
/// Non-decreasing in a on [-1,1); W(n,a) <= 2n/(1-a).
double w_factor(long long n, double a);

/// U(a,n) = sum_{j<=n} a^j + 2 sum_{j<n} sum_{k=j+1}^{n} a^k, in closed form.
/// U(a,n) <= 2/(1-a)^2.
double u_factor(double a, long long n);
/// Direct double-sum evaluation of U; O(n), kept as the debug oracle.
double u_factor_direct(double a, long long n);

/// Two-branch V(beta,n,p) controlling the non-stationary remainder for
/// integrands in L_p, p in (2,inf].  Closed form; V <= v_cap(beta,p).
double v_factor(double beta, long long n, double p);
/// Direct double-sum evaluation of V; O(n^2), debug oracle.
double v_factor_direct(double beta, long long n, double p);
/// 64 p / ((p-2)(1-beta)^2); at p = inf the limit 64/(1-beta)^2.
double v_cap(double beta, double p);

/// ||P^n - S||_{L_p->L_p} decay bound obtained by interpolation:
/// 2^{2/p} beta^{2n(p-1)/p} for p in (1,2), 2^{2(p-1)/p} beta^{2n/p} for
/// p in [2,inf).  At p = 2 both equal 2 beta^n.
double lp_norm_decay(double beta, long long n, double p);

/// Scalar convergence parameters consumed by the bound calculus.
struct GapParams {
    double beta = 1.0;        ///< L2 operator norm of P on mean-zero L2.
    double lambda_max = 1.0;  ///< sup spec(P|L2^0); Lambda <= beta.
    std::optional<double> alpha;  ///< L1-exponential rate, if known.
    std::optional<double> m;      ///< L1-exponential prefactor M.
    bool reversible = true;

    void validate() const;
};

struct BurninInputs {
    double c = 0.0;             ///< aggregate initial-bias constant
    double p = kPInf;           ///< norm index: 2, (2,4), or [4,inf]
    double density_norm = 0.0;  ///< ||d nu/d pi - 1||_q for the relevant q
};

/// Burn-in recipe with the L1-exponential route (p = 2) or the spectral-gap
/// route (p > 2).  `normal_op_sqrt` applies the alpha -> sqrt(alpha)
/// substitution valid for normal, not necessarily reversible, operators.
long long suggest_burnin_general(const BurninInputs& in, const GapParams& g,
                                 bool normal_op_sqrt = false);

/// n0 = max{ceil(log C / log(1/beta)), 0} for the finite-chain recipe.
long long suggest_burnin_finite(double c, double beta);

/// Root-mean-square error estimate
///   est(n,n0) = sqrt(2/(n(1-beta)) + 2 C r^{n0} / (n^2 (1-beta)^2)),
/// where r = beta for p in {2} u [4,inf] and r = beta^{2(p-2)/p} for
/// p in (2,4).
double est_upper(double n, long long n0, double beta, double c, double p);

struct PlanRow {
    long long n0;
    long long n;
    double est;
};

struct PlanCurve {
    long long total_budget = 0;
    std::vector<PlanRow> rows;
};

struct BurninPlan {
    long long n0_opt = 0;
    double est_opt = 0.0;
    /// n0_opt lies in [log C/log(1/beta), (1+eta) log C/log(1/beta)], eta=1e-3.
    bool bracket_ok = false;
    /// The suggested burn-in fits inside the budget N.
    bool suggested_fits_budget = true;
    PlanCurve curve;
};

/// Integer n0 in [0, N-1] minimizing est_upper(N-n0, n0, beta, c, p).
/// Golden-section over integers plus a +-2 local scan when the unimodality
/// conditions hold; otherwise a 1024-point logarithmic scan seeds the search.
BurninPlan minimize_burnin(long long total_budget, double beta, double c, double p,
                           int curve_points = 0);

/// Smallest n with n >= (1 + sqrt(1+4 eps^2)) / ((1-beta) eps^2); with the
/// suggested burn-in this guarantees an error of at most eps.
long long sample_size_for_eps(double beta, double eps);

/// Upper bound beta_hat on the L2 norm of the contracting-normals operator,
/// from the drift/minorization estimate with free parameter c > 1.
double baxendale_beta_hat(double theta, double c);

struct BetaHatOptimum {
    double c_star;
    double beta_hat_star;
};

/// Minimize baxendale_beta_hat over c in [1.01, 1e3]; beta_hat is 1 at both
/// ends of the range, so a coarse log-grid brackets the dip before the
/// golden-section polish (tolerance 1e-8 in c).
BetaHatOptimum optimize_beta_hat(double theta);

/// Cheeger: 1 - Lambda >= phi^2 / 2.
double gap_from_conductance(double phi);
/// Same bound routed through the lazy version: 1 - beta_lazy >= phi^2 / 4.
double gap_from_conductance_lazy(double phi);

/// Spectral-gap lower bound of the lazy Metropolis ball walk on an r-ball,
/// general form (l^2 e^{-2 L delta} / 256) min{(pi/8) l^2 delta^2 /
/// (r^2(d+1)), 1}.  Requires delta <= r/sqrt(d+1) when the default local
/// conductance l = 0.3 is used.
double metro_gap_lower(int d, double r, double lipschitz, double delta,
                       double local_conductance = 0.3);
/// Closed form at the tuned radius delta* = min{1/L, r/sqrt(d+1)}:
/// 1.69e-6/(d+1) * min{1/(r L)^2, 1/(d+1)}.
double metro_gap_lower(int d, double r, double lipschitz);

/// tau = (1+beta1)/(1-beta1), the MSE inflation relative to iid sampling.
double autocorrelation_time(double beta1);

// Comparison-only literature bounds (never used by planners).
double doeblin_bound(double m, double gamma, double n, double f_inf = 1.0);
double aldous_stationary_bound(double beta1, double n, double f_2 = 1.0);
double niemiro_pokarowska_bound(double beta, double n, long long n0, double nu_norm,
                                double f_2 = 1.0, double f_inf = 1.0);
double belloni_bound(double phi, double warm_r, double n, long long n0,
                     double f_2 = 1.0, double f_inf = 1.0);

// Confidence estimates, clamped to [0,1].
double markov_confidence(double mse, double eps);
double lezaud_confidence(double nu_norm, double n, double beta1, double eps);

/// String-keyed dispatchers used by the CLI's bound-eval subcommand.
double literature_bound(std::string_view kind, const std::map<std::string, double>& params);
double confidence_bound(std::string_view kind, const std::map<std::string, double>& params);

}  // namespace mcerr::bounds
