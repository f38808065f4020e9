#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcerr/bounds.hpp"
#include "mcerr/config.hpp"
#include "mcerr/estimator.hpp"
#include "mcerr/finite_chain.hpp"
#include "mcerr/planner.hpp"
#include "mcerr/tables.hpp"

namespace py = pybind11;
using namespace mcerr;

namespace {

finite::ToySpec toy_spec(const std::string& family, long long t, int d, double theta) {
    if (family == "circle") return finite::ToySpec::circle(t);
    if (family == "hypercube") return finite::ToySpec::hypercube(d);
    if (family == "star") return finite::ToySpec::star(t, theta);
    throw DomainError("unknown toy family '" + family + "'");
}

}  // namespace

PYBIND11_MODULE(_mcerr, m) {
    m.doc() = "Explicit Markov chain Monte Carlo error bounds and certification";

    py::register_exception<Error>(m, "McerrError");

    // ---- scalar bound calculus -------------------------------------------
    m.def("w_factor", &bounds::w_factor, py::arg("n"), py::arg("a"));
    m.def("u_factor", &bounds::u_factor, py::arg("a"), py::arg("n"));
    m.def("v_factor", &bounds::v_factor, py::arg("beta"), py::arg("n"), py::arg("p"));
    m.def("v_cap", &bounds::v_cap, py::arg("beta"), py::arg("p"));
    m.def("lp_norm_decay", &bounds::lp_norm_decay, py::arg("beta"), py::arg("n"), py::arg("p"));
    m.def("est_upper", &bounds::est_upper, py::arg("n"), py::arg("n0"), py::arg("beta"),
          py::arg("c"), py::arg("p"));
    m.def("suggest_burnin_finite", &bounds::suggest_burnin_finite, py::arg("c"),
          py::arg("beta"));
    m.def(
        "suggest_burnin_general",
        [](double density_norm, double p, double beta, std::optional<double> alpha,
           std::optional<double> m_prefactor) {
            bounds::BurninInputs in;
            in.p = p;
            in.density_norm = density_norm;
            bounds::GapParams gap;
            gap.beta = beta;
            gap.lambda_max = beta;
            gap.alpha = alpha;
            gap.m = m_prefactor;
            return bounds::suggest_burnin_general(in, gap);
        },
        py::arg("density_norm"), py::arg("p"), py::arg("beta"), py::arg("alpha") = py::none(),
        py::arg("m") = py::none());
    m.def(
        "minimize_burnin",
        [](long long budget, double beta, double c, double p) {
            auto plan = bounds::minimize_burnin(budget, beta, c, p);
            return py::make_tuple(plan.n0_opt, plan.est_opt, plan.bracket_ok,
                                  plan.suggested_fits_budget);
        },
        py::arg("budget"), py::arg("beta"), py::arg("c"), py::arg("p"),
        "Returns (n0_opt, est_opt, bracket_ok, suggested_fits_budget)");
    m.def("sample_size_for_eps", &bounds::sample_size_for_eps, py::arg("beta"), py::arg("eps"));
    m.def("baxendale_beta_hat", &bounds::baxendale_beta_hat, py::arg("theta"), py::arg("c"));
    m.def(
        "optimize_beta_hat",
        [](double theta) {
            auto opt = bounds::optimize_beta_hat(theta);
            return py::make_tuple(opt.c_star, opt.beta_hat_star);
        },
        py::arg("theta"));
    m.def("gap_from_conductance", &bounds::gap_from_conductance, py::arg("phi"));
    m.def("gap_from_conductance_lazy", &bounds::gap_from_conductance_lazy, py::arg("phi"));
    m.def("metro_gap_lower",
          py::overload_cast<int, double, double>(&bounds::metro_gap_lower), py::arg("d"),
          py::arg("r"), py::arg("lipschitz"));
    m.def("autocorrelation_time", &bounds::autocorrelation_time, py::arg("beta1"));
    m.def("literature_bound", &bounds::literature_bound, py::arg("kind"), py::arg("params"));
    m.def("confidence_bound", &bounds::confidence_bound, py::arg("kind"), py::arg("params"));

    // ---- finite chains -----------------------------------------------------
    py::class_<finite::SpectralData>(m, "SpectralData")
        .def_readonly("eigenvalues", &finite::SpectralData::eigenvalues)
        .def_readonly("eigenvectors", &finite::SpectralData::eigenvectors)
        .def_readonly("pi", &finite::SpectralData::pi)
        .def_readonly("beta1", &finite::SpectralData::beta1)
        .def_readonly("beta", &finite::SpectralData::beta);

    m.def(
        "stationary_distribution",
        [](const Eigen::MatrixXd& p) {
            return finite::stationary_distribution(finite::StochasticMatrix(p));
        },
        py::arg("p"));
    m.def(
        "lazy",
        [](const Eigen::MatrixXd& p) {
            return finite::lazy(finite::StochasticMatrix(p)).entries();
        },
        py::arg("p"));
    m.def(
        "spectral_decompose",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& pi) {
            return finite::spectral_decompose(
                finite::ReversibleChain(finite::StochasticMatrix(p), pi));
        },
        py::arg("p"), py::arg("pi"));
    m.def(
        "chi2_contrast",
        [](const Eigen::VectorXd& nu, const Eigen::VectorXd& pi) {
            return finite::chi2_contrast(finite::InitialDistribution(nu, pi), pi);
        },
        py::arg("nu"), py::arg("pi"));
    m.def(
        "exact_stationary_mse",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& pi, const Eigen::VectorXd& f,
           long long n) {
            auto s = finite::spectral_decompose(
                finite::ReversibleChain(finite::StochasticMatrix(p), pi));
            return finite::exact_stationary_mse(s, f, n);
        },
        py::arg("p"), py::arg("pi"), py::arg("f"), py::arg("n"));
    m.def(
        "exact_mse",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& pi, const Eigen::VectorXd& nu,
           const Eigen::VectorXd& f, long long n, long long n0) {
            finite::ReversibleChain chain(finite::StochasticMatrix(p), pi);
            return finite::exact_mse(chain, finite::InitialDistribution(nu, pi), f, n, n0);
        },
        py::arg("p"), py::arg("pi"), py::arg("nu"), py::arg("f"), py::arg("n"), py::arg("n0"));
    m.def(
        "make_example",
        [](const std::string& family, long long t, int d, double theta) {
            auto toy = finite::make_example(toy_spec(family, t, d, theta));
            return py::make_tuple(toy.chain.p(), toy.chain.pi(), toy.f, toy.beta1, toy.beta,
                                  toy.burnin_constant);
        },
        py::arg("family"), py::arg("t") = 0, py::arg("d") = 0, py::arg("theta") = 0.0,
        "Returns (P, pi, u1, beta1, beta, C)");
    m.def(
        "analytic_example_error",
        [](const std::string& family, long long t, int d, double theta, long long n,
           long long n0) {
            return finite::analytic_example_error(toy_spec(family, t, d, theta), n, n0);
        },
        py::arg("family"), py::arg("t"), py::arg("d"), py::arg("theta"), py::arg("n"),
        py::arg("n0"));
    m.def(
        "toy_scalars",
        [](const std::string& family, long long t, int d, double theta) {
            auto sc = finite::toy_scalars(toy_spec(family, t, d, theta));
            return py::make_tuple(sc.beta1, sc.beta, sc.burnin_constant);
        },
        py::arg("family"), py::arg("t") = 0, py::arg("d") = 0, py::arg("theta") = 0.0,
        "Returns (beta1, beta, C)");
    m.def(
        "bounds_finite",
        [](double beta1, double beta, double c, long long n, long long n0) {
            auto b = finite::bounds_finite(beta1, beta, c, n, n0);
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("beta1"), py::arg("beta"), py::arg("c"), py::arg("n"), py::arg("n0"));
    m.def(
        "bounds_finite_at_suggested",
        [](double beta1, double beta, long long n) {
            auto b = finite::bounds_finite_at_suggested(beta1, beta, n);
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("beta1"), py::arg("beta"), py::arg("n"));
    m.def(
        "conductance_finite",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& pi) {
            return finite::conductance_finite(
                       finite::ReversibleChain(finite::StochasticMatrix(p), pi))
                .phi;
        },
        py::arg("p"), py::arg("pi"));
    m.def(
        "tv_operator_norm",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& pi, long long n) {
            return finite::tv_operator_norm(
                finite::ReversibleChain(finite::StochasticMatrix(p), pi), n);
        },
        py::arg("p"), py::arg("pi"), py::arg("n"));

    // ---- planners ----------------------------------------------------------
    py::class_<planner::Plan>(m, "Plan")
        .def_readonly("walk", &planner::Plan::walk)
        .def_readonly("delta", &planner::Plan::delta)
        .def_readonly("n0", &planner::Plan::n0)
        .def_readonly("n", &planner::Plan::n)
        .def_readonly("gap_lower", &planner::Plan::gap_lower)
        .def_readonly("error_bound", &planner::Plan::error_bound)
        .def_readonly("oracle_budget", &planner::Plan::oracle_budget);

    m.def(
        "plan_logconcave",
        [](int d, double r, double lipschitz, double p, std::optional<double> eps) {
            planner::LogConcaveProblem prob{d, r, lipschitz, p, eps};
            return planner::plan_logconcave(prob);
        },
        py::arg("d"), py::arg("r"), py::arg("lipschitz"), py::arg("p"),
        py::arg("eps") = py::none());
    m.def(
        "plan_convex_body",
        [](int d, double r, double p, std::optional<double> eps) {
            planner::ConvexBodyProblem prob{d, r, p, eps};
            return planner::plan_convex_body(prob);
        },
        py::arg("d"), py::arg("r"), py::arg("p"), py::arg("eps") = py::none());
    m.def(
        "plan_contracting_normals",
        [](double theta, double x0, double delta, double p, double eps) {
            auto np = planner::plan_contracting_normals(theta, x0, delta, p, eps);
            return py::make_tuple(np.c_star, np.beta_hat, np.plan);
        },
        py::arg("theta"), py::arg("x0"), py::arg("delta"), py::arg("p"), py::arg("eps"),
        "Returns (c_star, beta_hat, plan)");
    m.def(
        "plan_worked_example",
        [](const std::string& which, double delta, double x0, double xi, double eps) {
            planner::WorkedExample kind;
            if (which == "example1") {
                kind = planner::WorkedExample::example1;
            } else if (which == "example2") {
                kind = planner::WorkedExample::example2;
            } else if (which == "independence_normal") {
                kind = planner::WorkedExample::independence_normal;
            } else {
                throw DomainError("unknown worked example '" + which + "'");
            }
            auto wp = planner::plan_worked_example(kind, {delta, x0, xi, eps});
            return wp.plan;
        },
        py::arg("which"), py::arg("delta") = 0.1, py::arg("x0") = 0.0, py::arg("xi") = 2.0,
        py::arg("eps") = 0.01);

    // ---- tables ------------------------------------------------------------
    m.def("burnin_table", &tables::burnin_table, py::arg("budgets"), py::arg("betas"),
          py::arg("c"), py::arg("p"));
    m.def("normals_table", &tables::normals_table, py::arg("thetas"), py::arg("x0"),
          py::arg("delta"), py::arg("p"), py::arg("eps"));

    // ---- estimator (toy-chain route) ----------------------------------------
    m.def(
        "toy_empirical_mse",
        [](const std::string& family, long long t, int d, double theta, long long n,
           long long n0, long long replications, std::uint64_t seed, int threads) {
            auto toy = finite::make_example(toy_spec(family, t, d, theta));
            estimator::RunConfig cfg;
            cfg.kernel = sampler::KernelSampler::finite_chain(toy.chain);
            estimator::Point x0(1);
            x0(0) = 0.0;
            cfg.initial = estimator::InitialSpec::point_mass(x0);
            finite::Vector f = toy.f;
            cfg.integrand = [f](const estimator::Point& x) {
                return f(static_cast<Eigen::Index>(std::llround(x(0))));
            };
            cfg.integrand_name = "u1";
            cfg.n = n;
            cfg.n0 = n0;
            cfg.replications = replications;
            cfg.seed = seed;
            auto rep = estimator::empirical_mse(cfg, 0.0, threads);
            return py::make_tuple(rep.empirical_mse, rep.mse_std_error, rep.mean_estimate);
        },
        py::arg("family"), py::arg("t"), py::arg("d"), py::arg("theta"), py::arg("n"),
        py::arg("n0"), py::arg("replications"), py::arg("seed"), py::arg("threads") = 1,
        "Returns (empirical_mse, mse_std_error, mean_estimate) for the canonical toy run");
}
