#include "mcerr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace mcerr::bounds {

namespace {

constexpr double kGapFloor = 1e-12;

void require_rate(double beta) {
    if (!(beta >= 0.0) || beta >= 1.0 - kGapFloor) {
        throw GapExhausted("rate must lie in [0, 1); got " + std::to_string(beta));
    }
}

// sum_{j=1}^{m} z^j with the z == 1 and m == 0 edges handled.
double geometric_sum(double z, long long m) {
    if (m <= 0) return 0.0;
    if (z == 0.0) return 0.0;
    if (std::abs(1.0 - z) < 1e-14) return static_cast<double>(m);
    return z * (1.0 - std::pow(z, static_cast<double>(m))) / (1.0 - z);
}

// sum_{j=1}^{n-1} x^j sum_{k=j+1}^{n} y^k  (requires y < 1; x may exceed 1).
double nested_geometric_sum(double x, double y, long long n) {
    if (n <= 1) return 0.0;
    if (y == 0.0) return 0.0;
    double yn1 = std::pow(y, static_cast<double>(n + 1));
    return (y * geometric_sum(x * y, n - 1) - yn1 * geometric_sum(x, n - 1)) / (1.0 - y);
}

double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double tol) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c1 = b - kInvPhi * (b - a);
    double c2 = a + kInvPhi * (b - a);
    double f1 = f(c1), f2 = f(c2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - kInvPhi * (b - a);
            f1 = f(c1);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + kInvPhi * (b - a);
            f2 = f(c2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

long long ceil_snap(double x, double snap) {
    if (!std::isfinite(x)) {
        throw DomainError("ceil_snap: non-finite argument");
    }
    double r = std::nearbyint(x);
    if (std::abs(x - r) <= snap) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

double w_factor(long long n, double a) {
    if (n < 1) throw DomainError("w_factor: n must be >= 1");
    if (!(a >= -1.0) || a >= 1.0) throw DomainError("w_factor: a must lie in [-1, 1)");
    double an = std::pow(a, static_cast<double>(n));
    double d = 1.0 - a;
    return (static_cast<double>(n) * (1.0 - a * a) - 2.0 * a * (1.0 - an)) / (d * d);
}

double u_factor(double a, long long n) {
    if (n < 1) throw DomainError("u_factor: n must be >= 1");
    if (!(a >= 0.0) || a >= 1.0) throw DomainError("u_factor: a must lie in [0, 1)");
    return geometric_sum(a, n) + 2.0 * nested_geometric_sum(1.0, a, n);
}

double u_factor_direct(double a, long long n) {
    double s = 0.0;
    for (long long j = 1; j <= n; ++j) s += std::pow(a, static_cast<double>(j));
    double t = 0.0;
    for (long long j = 1; j <= n - 1; ++j)
        for (long long k = j + 1; k <= n; ++k) t += std::pow(a, static_cast<double>(k));
    return s + 2.0 * t;
}

double v_factor(double beta, long long n, double p) {
    if (n < 1) throw DomainError("v_factor: n must be >= 1");
    if (!(beta >= 0.0) || beta >= 1.0) throw DomainError("v_factor: beta must lie in [0, 1)");
    if (!(p > 2.0)) throw DomainError("v_factor: p must exceed 2");
    if (beta == 0.0) return 0.0;
    if (p < 4.0) {
        double b_sq = std::pow(beta, 2.0 * (p - 2.0) / p);   // beta^{2j(p-2)/p} base
        double x = std::pow(beta, 2.0 * (p - 3.0) / p);      // may exceed 1 for p < 3
        double y = std::pow(beta, 2.0 / p);
        return 4.0 * (std::pow(2.0, 4.0 / p) * geometric_sum(b_sq, n) +
                      std::pow(2.0, (3.0 * p + 2.0) / p) * nested_geometric_sum(x, y, n));
    }
    double coef = std::isinf(p) ? 8.0 : std::pow(2.0, (3.0 * p + 2.0) / p);
    double x = std::isinf(p) ? 1.0 : std::pow(beta, 2.0 / p);
    double y = std::isinf(p) ? beta : std::pow(beta, (p - 2.0) / p);
    return 4.0 * (2.0 * geometric_sum(beta, n) + coef * nested_geometric_sum(x, y, n));
}

double v_factor_direct(double beta, long long n, double p) {
    if (!(p > 2.0)) throw DomainError("v_factor_direct: p must exceed 2");
    auto bpow = [&](double e) { return beta == 0.0 ? 0.0 : std::pow(beta, e); };
    double s1 = 0.0, s2 = 0.0;
    if (p < 4.0) {
        for (long long j = 1; j <= n; ++j) s1 += bpow(2.0 * j * (p - 2.0) / p);
        for (long long j = 1; j <= n - 1; ++j)
            for (long long k = j + 1; k <= n; ++k)
                s2 += bpow(2.0 * j * (p - 3.0) / p) * bpow(2.0 * k / p);
        return 4.0 * (std::pow(2.0, 4.0 / p) * s1 + std::pow(2.0, (3.0 * p + 2.0) / p) * s2);
    }
    double coef = std::isinf(p) ? 8.0 : std::pow(2.0, (3.0 * p + 2.0) / p);
    for (long long j = 1; j <= n; ++j) s1 += bpow(static_cast<double>(j));
    for (long long j = 1; j <= n - 1; ++j)
        for (long long k = j + 1; k <= n; ++k) {
            double a = std::isinf(p) ? 1.0 : bpow(2.0 * j / p);
            double b = std::isinf(p) ? bpow(static_cast<double>(k)) : bpow(k * (p - 2.0) / p);
            s2 += a * b;
        }
    return 4.0 * (2.0 * s1 + coef * s2);
}

double v_cap(double beta, double p) {
    if (!(p > 2.0)) throw DomainError("v_cap: p must exceed 2");
    double d = 1.0 - beta;
    if (std::isinf(p)) return 64.0 / (d * d);
    return 64.0 * p / ((p - 2.0) * d * d);
}

double lp_norm_decay(double beta, long long n, double p) {
    if (n < 1) throw DomainError("lp_norm_decay: n must be >= 1");
    if (!(beta >= 0.0) || beta >= 1.0) throw DomainError("lp_norm_decay: beta in [0,1) required");
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("lp_norm_decay: p must lie in (1, inf)");
    if (beta == 0.0) return 0.0;
    if (p < 2.0) {
        return std::pow(2.0, 2.0 / p) * std::pow(beta, 2.0 * n * (p - 1.0) / p);
    }
    return std::pow(2.0, 2.0 * (p - 1.0) / p) * std::pow(beta, 2.0 * n / p);
}

void GapParams::validate() const {
    if (lambda_max > beta + 1e-12) {
        throw DomainError("GapParams: Lambda must not exceed beta");
    }
    if (alpha && reversible && beta > *alpha + 1e-12) {
        throw DomainError("GapParams: reversible chains require beta <= alpha");
    }
    if (alpha && (!(*alpha >= 0.0) || *alpha >= 1.0)) {
        throw DomainError("GapParams: alpha must lie in [0, 1)");
    }
    if (m && !(*m >= 0.0)) {
        throw DomainError("GapParams: M must be non-negative");
    }
}

long long suggest_burnin_general(const BurninInputs& in, const GapParams& g,
                                 bool normal_op_sqrt) {
    if (in.density_norm < 0.0) throw DomainError("suggest_burnin_general: negative norm");
    if (in.p == 2.0) {
        if (!g.alpha || !g.m) {
            throw DomainError("suggest_burnin_general: p = 2 requires (alpha, M)");
        }
        double rate = normal_op_sqrt ? std::sqrt(*g.alpha) : *g.alpha;
        require_rate(rate);
        double arg = *g.m * in.density_norm;
        if (arg <= 1.0) return 0;
        return std::max<long long>(ceil_snap(std::log(arg) / std::log(1.0 / rate)), 0);
    }
    if (!(in.p > 2.0)) throw DomainError("suggest_burnin_general: p must be 2 or > 2");
    require_rate(g.beta);
    double logb = std::log(1.0 / g.beta);
    if (in.p < 4.0) {
        double arg = (32.0 * in.p / (in.p - 2.0)) * in.density_norm;
        if (arg <= 1.0) return 0;
        double q = (in.p / (2.0 * (in.p - 2.0))) * std::log(arg) / logb;
        return std::max<long long>(ceil_snap(q), 0);
    }
    double arg = 64.0 * in.density_norm;
    if (arg <= 1.0) return 0;
    return std::max<long long>(ceil_snap(std::log(arg) / logb), 0);
}

long long suggest_burnin_finite(double c, double beta) {
    if (c < 0.0) throw DomainError("suggest_burnin_finite: C must be non-negative");
    require_rate(beta);
    if (c <= 1.0) return 0;
    return std::max<long long>(ceil_snap(std::log(c) / std::log(1.0 / beta)), 0);
}

double est_upper(double n, long long n0, double beta, double c, double p) {
    if (!(n >= 1.0)) throw DomainError("est_upper: n must be >= 1");
    require_rate(beta);
    if (c < 0.0) throw DomainError("est_upper: C must be non-negative");
    double r = (p > 2.0 && p < 4.0) ? std::pow(beta, 2.0 * (p - 2.0) / p) : beta;
    double gap = 1.0 - beta;
    double bias = c == 0.0 ? 0.0
                           : 2.0 * c * std::pow(r, static_cast<double>(n0)) / (n * n * gap * gap);
    return std::sqrt(2.0 / (n * gap) + bias);
}

BurninPlan minimize_burnin(long long total_budget, double beta, double c, double p,
                           int curve_points) {
    if (total_budget < 2) throw DomainError("minimize_burnin: budget must be >= 2");
    require_rate(beta);
    BurninPlan plan;
    auto est_at = [&](long long n0) {
        return est_upper(static_cast<double>(total_budget - n0), n0, beta, c, p);
    };
    if (c <= 0.0) {
        plan.n0_opt = 0;
        plan.est_opt = est_at(0);
        plan.bracket_ok = false;
        return plan;
    }

    double logb = std::log(1.0 / beta);
    double q = std::log(c) / logb;
    constexpr double kEta = 1e-3;
    // Unimodality is guaranteed only under the bracket conditions; otherwise a
    // coarse logarithmic scan seeds the local search.
    bool reasonable_c = std::pow(c, kEta) > logb / (1.0 - beta);
    bool reasonable_n =
        static_cast<double>(total_budget) > (1.0 + kEta) * q + 2.0 / (logb - (1.0 - beta));

    long long lo = 0, hi = total_budget - 1;
    if (!(reasonable_c && reasonable_n)) {
        constexpr int kGrid = 1024;
        double span = std::log(static_cast<double>(total_budget));
        long long prev = -1;
        std::vector<long long> pts;
        pts.reserve(kGrid + 1);
        for (int i = 0; i <= kGrid; ++i) {
            long long n0 = static_cast<long long>(
                std::expm1(span * static_cast<double>(i) / kGrid));
            n0 = std::min(n0, total_budget - 1);
            if (n0 == prev) continue;
            pts.push_back(n0);
            prev = n0;
        }
        std::size_t best_i = 0;
        double best_v = est_at(pts[0]);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            double v = est_at(pts[i]);
            if (v < best_v) {
                best_v = v;
                best_i = i;
            }
        }
        lo = best_i > 0 ? pts[best_i - 1] : 0;
        hi = best_i + 1 < pts.size() ? pts[best_i + 1] : total_budget - 1;
    }

    double n0_cont = golden_section(
        [&](double x) { return est_at(static_cast<long long>(std::llround(x))); },
        static_cast<double>(lo), static_cast<double>(hi), 0.5);
    long long center = std::llround(n0_cont);
    long long best = std::clamp<long long>(center, 0, total_budget - 1);
    double best_v = est_at(best);
    for (long long d = -2; d <= 2; ++d) {
        long long cand = center + d;
        if (cand < 0 || cand > total_budget - 1) continue;
        double v = est_at(cand);
        if (v < best_v) {
            best_v = v;
            best = cand;
        }
    }
    plan.n0_opt = best;
    plan.est_opt = best_v;
    plan.bracket_ok =
        static_cast<double>(best) >= q && static_cast<double>(best) <= (1.0 + kEta) * q;
    double q_suggested = (p > 2.0 && p < 4.0) ? (p / (2.0 * (p - 2.0))) * q : q;
    plan.suggested_fits_budget = q_suggested <= static_cast<double>(total_budget - 1);

    if (curve_points > 0) {
        plan.curve.total_budget = total_budget;
        double span = std::log(static_cast<double>(total_budget));
        long long prev = -1;
        for (int i = 0; i <= curve_points; ++i) {
            long long n0 = static_cast<long long>(
                std::expm1(span * static_cast<double>(i) / curve_points));
            n0 = std::min(n0, total_budget - 1);
            if (n0 == prev) continue;
            prev = n0;
            plan.curve.rows.push_back({n0, total_budget - n0, est_at(n0)});
        }
    }
    return plan;
}

long long sample_size_for_eps(double beta, double eps) {
    require_rate(beta);
    if (!(eps > 0.0) || !(eps < 1.0)) throw DomainError("sample_size_for_eps: eps in (0,1)");
    double x = (1.0 + std::sqrt(1.0 + 4.0 * eps * eps)) / ((1.0 - beta) * eps * eps);
    return std::max<long long>(ceil_snap(x), 1);
}

namespace {
double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }
}  // namespace

double baxendale_beta_hat(double theta, double c) {
    if (!(theta > 0.0) || !(theta < 1.0)) throw DomainError("baxendale: theta in (0,1)");
    if (!(c > 1.0)) throw DomainError("baxendale: c must exceed 1");
    double lambda = theta * theta + 2.0 * (1.0 - theta * theta) / (1.0 + c * c);
    double kappa = 2.0 + theta * theta * (c * c - 1.0);
    double s = std::sqrt(1.0 - theta * theta);
    double b = 2.0 * (normal_cdf((1.0 + theta) * c / s) - normal_cdf(theta * c / s));
    double a = 1.0 + std::log((kappa - b) / (1.0 - b)) / std::log(1.0 / lambda);
    return std::max(lambda, std::pow(1.0 - b, 1.0 / a));
}

BetaHatOptimum optimize_beta_hat(double theta) {
    if (!(theta > 0.0) || !(theta < 1.0)) throw DomainError("optimize_beta_hat: theta in (0,1)");
    constexpr double kLo = 1.01, kHi = 1e3;
    constexpr int kGrid = 512;
    double ratio = std::log(kHi / kLo);
    std::vector<double> cs(kGrid);
    int best_i = 0;
    double best_v = baxendale_beta_hat(theta, kLo);
    for (int i = 0; i < kGrid; ++i) {
        cs[i] = kLo * std::exp(ratio * static_cast<double>(i) / (kGrid - 1));
        double v = baxendale_beta_hat(theta, cs[i]);
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    double lo = cs[std::max(best_i - 1, 0)];
    double hi = cs[std::min(best_i + 1, kGrid - 1)];
    double c_star = golden_section([&](double c) { return baxendale_beta_hat(theta, c); },
                                   lo, hi, 1e-8);
    return {c_star, baxendale_beta_hat(theta, c_star)};
}

double gap_from_conductance(double phi) {
    if (!(phi >= 0.0) || phi > 1.0) throw DomainError("gap_from_conductance: phi in [0,1]");
    return 0.5 * phi * phi;
}

double gap_from_conductance_lazy(double phi) {
    if (!(phi >= 0.0) || phi > 1.0) throw DomainError("gap_from_conductance_lazy: phi in [0,1]");
    return 0.25 * phi * phi;
}

double metro_gap_lower(int d, double r, double lipschitz, double delta,
                       double local_conductance) {
    if (d < 1 || !(r > 0.0) || lipschitz < 0.0 || !(delta > 0.0)) {
        throw DomainError("metro_gap_lower: invalid inputs");
    }
    if (local_conductance == 0.3 && delta > r / std::sqrt(static_cast<double>(d + 1)) + 1e-15) {
        throw DomainError("metro_gap_lower: delta exceeds r/sqrt(d+1); l = 0.3 not valid");
    }
    double l = local_conductance;
    double pi8 = 0.39269908169872415481;  // pi/8
    double inner = pi8 * l * l * delta * delta / (r * r * (d + 1));
    return (l * l * std::exp(-2.0 * lipschitz * delta) / 256.0) * std::min(inner, 1.0);
}

double metro_gap_lower(int d, double r, double lipschitz) {
    if (d < 1 || !(r > 0.0) || lipschitz < 0.0) {
        throw DomainError("metro_gap_lower: invalid inputs");
    }
    double rl = r * lipschitz;
    double a = rl > 0.0 ? 1.0 / (rl * rl) : std::numeric_limits<double>::infinity();
    double b = 1.0 / static_cast<double>(d + 1);
    return 1.69e-6 / static_cast<double>(d + 1) * std::min(a, b);
}

double autocorrelation_time(double beta1) {
    if (!(beta1 >= -1.0) || beta1 >= 1.0) throw DomainError("autocorrelation_time: beta1 in [-1,1)");
    return (1.0 + beta1) / (1.0 - beta1);
}

double doeblin_bound(double m, double gamma, double n, double f_inf) {
    if (!(m >= 2.0) || !(gamma > 0.0) || !(n >= 1.0)) throw DomainError("doeblin: invalid inputs");
    return 8.0 * (m - 1.0) * f_inf * f_inf / (n * gamma);
}

double aldous_stationary_bound(double beta1, double n, double f_2) {
    if (!(beta1 >= 0.0) || beta1 >= 1.0) throw DomainError("aldous: beta1 in [0,1)");
    if (!(n >= 1.0)) throw DomainError("aldous: n >= 1");
    double gap = 1.0 - beta1;
    return 2.0 * f_2 * f_2 / (n * gap) +
           2.0 * std::exp(-n * gap) * f_2 * f_2 / (n * n * gap * gap);
}

double niemiro_pokarowska_bound(double beta, double n, long long n0, double nu_norm,
                                double f_2, double f_inf) {
    require_rate(beta);
    if (!(n >= 1.0) || n0 < 0 || nu_norm < 0.0) throw DomainError("niemiro_poka: invalid inputs");
    double gap = 1.0 - beta;
    return (1.0 + beta) / (n * gap) * f_2 * f_2 + 2.0 * beta / (gap * gap * n * n) * f_2 * f_2 +
           2.0 * (1.0 + beta) * std::pow(beta, static_cast<double>(n0)) * nu_norm /
               (gap * n * n) * f_inf * f_2;
}

double belloni_bound(double phi, double warm_r, double n, long long n0, double f_2,
                     double f_inf) {
    if (!(phi > 0.0) || phi > 1.0 || !(warm_r >= 1.0) || !(n >= 1.0) || n0 < 0) {
        throw DomainError("belloni: invalid inputs");
    }
    return 4.0 / (phi * phi * n) * f_2 * f_2 +
           8.0 * std::sqrt(warm_r) * std::pow(1.0 - 0.5 * phi * phi, static_cast<double>(n0)) *
               f_inf * f_inf;
}

double markov_confidence(double mse, double eps) {
    if (mse < 0.0 || !(eps > 0.0) || !(eps < 1.0)) throw DomainError("markov: invalid inputs");
    return std::clamp(mse / (eps * eps), 0.0, 1.0);
}

double lezaud_confidence(double nu_norm, double n, double beta1, double eps) {
    if (nu_norm < 0.0 || !(n >= 1.0) || !(eps > 0.0) || !(eps < 1.0) || beta1 >= 1.0) {
        throw DomainError("lezaud: invalid inputs");
    }
    return std::clamp(3.0 * nu_norm * std::exp(-n * (1.0 - beta1) * eps * eps / 12.0), 0.0, 1.0);
}

namespace {
double param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw DomainError("missing parameter: " + key);
    return it->second;
}
double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}
}  // namespace

double literature_bound(std::string_view kind, const std::map<std::string, double>& params) {
    if (kind == "doeblin") {
        return doeblin_bound(param(params, "M"), param(params, "gamma"), param(params, "n"),
                             param_or(params, "f_inf", 1.0));
    }
    if (kind == "aldous_stationary") {
        return aldous_stationary_bound(param(params, "beta1"), param(params, "n"),
                                       param_or(params, "f_2", 1.0));
    }
    if (kind == "niemiro_poka") {
        return niemiro_pokarowska_bound(param(params, "beta"), param(params, "n"),
                                        static_cast<long long>(param(params, "n0")),
                                        param(params, "nu_norm"), param_or(params, "f_2", 1.0),
                                        param_or(params, "f_inf", 1.0));
    }
    if (kind == "belloni") {
        return belloni_bound(param(params, "phi"), param(params, "R"), param(params, "n"),
                             static_cast<long long>(param(params, "n0")),
                             param_or(params, "f_2", 1.0), param_or(params, "f_inf", 1.0));
    }
    throw DomainError("unknown literature bound kind: " + std::string(kind));
}

double confidence_bound(std::string_view kind, const std::map<std::string, double>& params) {
    if (kind == "markov") {
        return markov_confidence(param(params, "mse"), param(params, "eps"));
    }
    if (kind == "lezaud") {
        return lezaud_confidence(param(params, "nu_norm"), param(params, "n"),
                                 param(params, "beta1"), param(params, "eps"));
    }
    throw DomainError("unknown confidence bound kind: " + std::string(kind));
}

}  // namespace mcerr::bounds
