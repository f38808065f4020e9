// Command line frontend: table and figure-data reproduction, bound
// evaluation, burn-in recipes, and seeded estimator runs.  All output is
// CSV with a "# schema=<name> v1" first line; floats print with 17
// significant digits.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mcerr/bounds.hpp"
#include "mcerr/config.hpp"
#include "mcerr/estimator.hpp"
#include "mcerr/finite_chain.hpp"
#include "mcerr/planner.hpp"
#include "mcerr/tables.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw mcerr::ParseError("cannot open output file '" + path + "'");
    out << text;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> params;
    for (const auto& kv : kvs) {
        auto pos = kv.find('=');
        if (pos == std::string::npos) {
            throw mcerr::SchemaError("parameter '" + kv + "' is not key=value");
        }
        params[kv.substr(0, pos)] = std::stod(kv.substr(pos + 1));
    }
    return params;
}

mcerr::finite::ToySpec load_toy(const std::string& config_path) {
    auto cfg = mcerr::config::parse_config_file(config_path);
    if (cfg.kind != "toy") throw mcerr::SchemaError("expected a toy config");
    return mcerr::config::toy_from_json(cfg.body);
}

// "toy" configs materialize the named family; "matrix" configs point at a
// dense CSV file and derive the stationary law by a direct solve
mcerr::finite::ReversibleChain load_chain(const std::string& config_path) {
    auto cfg = mcerr::config::parse_config_file(config_path);
    if (cfg.kind == "toy") {
        return mcerr::finite::make_example(mcerr::config::toy_from_json(cfg.body)).chain;
    }
    if (cfg.kind == "matrix") {
        mcerr::config::check_keys(cfg.body, {"path"}, "matrix");
        if (!cfg.body.contains("path")) throw mcerr::SchemaError("matrix: missing key 'path'");
        std::ifstream in(cfg.body["path"].get<std::string>());
        if (!in) {
            throw mcerr::ParseError("cannot open matrix file '" +
                                    cfg.body["path"].get<std::string>() + "'");
        }
        auto m = mcerr::finite::load_matrix_csv(in);
        return mcerr::finite::ReversibleChain::with_computed_stationary(std::move(m));
    }
    throw mcerr::SchemaError("expected a toy or matrix config");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov chain Monte Carlo error certification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    app.add_option("--out", out_path, "Output path (default stdout)")->capture_default_str();

    // finite-spectrum -------------------------------------------------------
    auto* spectrum = app.add_subcommand("finite-spectrum", "Eigenvalues of a finite chain");
    spectrum->add_option("--config", config_path, "Toy or matrix config (JSON)")->required();

    // finite-error ----------------------------------------------------------
    auto* ferr = app.add_subcommand("finite-error", "Exact toy-example error curve");
    long long fe_n0 = -1;
    long long fe_nmin = 1, fe_nmax = 1000000;
    int fe_points = 30;
    ferr->add_option("--config", config_path, "Toy config (JSON)")->required();
    ferr->add_option("--n0", fe_n0, "Burn-in (default: suggested)");
    ferr->add_option("--nmin", fe_nmin, "Smallest sample size");
    ferr->add_option("--nmax", fe_nmax, "Largest sample size");
    ferr->add_option("--points", fe_points, "Log-grid size");

    // finite-burnin ---------------------------------------------------------
    auto* fburn = app.add_subcommand("finite-burnin", "Suggested burn-in for a finite chain");
    double fb_c = -1.0, fb_beta = -1.0;
    fburn->add_option("--config", config_path, "Toy config (JSON)");
    fburn->add_option("--C", fb_c, "Aggregate constant C");
    fburn->add_option("--beta", fb_beta, "Second largest absolute eigenvalue");

    // finite-example --------------------------------------------------------
    auto* fex = app.add_subcommand("finite-example", "Materialize a toy chain as matrix CSV");
    bool fex_summary = false;
    fex->add_option("--config", config_path, "Toy config (JSON)")->required();
    fex->add_flag("--summary", fex_summary, "Emit state,pi,u1 instead of the matrix");

    // bound-eval ------------------------------------------------------------
    auto* beval = app.add_subcommand("bound-eval", "Evaluate a named bound or factor");
    std::string be_kind;
    std::vector<std::string> be_params;
    beval->add_option("--kind", be_kind, "Bound name")->required();
    beval->add_option("--param", be_params, "key=value parameters");

    // burnin-table ----------------------------------------------------------
    auto* btab = app.add_subcommand("burnin-table", "Optimal vs suggested burn-in table");
    std::vector<long long> bt_budgets{100000, 1000000};
    std::vector<double> bt_betas{0.9, 0.99, 0.999};
    double bt_c = 1e30, bt_p = 2.1;
    btab->add_option("--budgets", bt_budgets, "Total step budgets N");
    btab->add_option("--betas", bt_betas, "Rates beta");
    btab->add_option("--C", bt_c, "Aggregate constant");
    btab->add_option("--p", bt_p, "Norm index in (2,4)");

    // normals-table ---------------------------------------------------------
    auto* ntab = app.add_subcommand("normals-table", "Contracting-normals plan table");
    std::vector<double> nt_thetas{0.91, 0.92, 0.93, 0.94, 0.95, 0.96};
    double nt_x0 = 0.0, nt_delta = 0.1, nt_p = 2.1, nt_eps = 0.01;
    ntab->add_option("--thetas", nt_thetas, "Autoregression coefficients");
    ntab->add_option("--x0", nt_x0, "Initial interval center");
    ntab->add_option("--delta", nt_delta, "Initial interval half-width");
    ntab->add_option("--p", nt_p, "Norm index");
    ntab->add_option("--eps", nt_eps, "Target precision");

    // plan ------------------------------------------------------------------
    auto* plan = app.add_subcommand("plan", "Certified plan from a JSON config");
    bool plan_csv = false;
    plan->add_option("--config", config_path, "Plan config (JSON)")->required();
    plan->add_flag("--csv", plan_csv, "Emit a CSV row instead of JSON");

    // estimate --------------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "Replicated estimator run with certification");
    long long est_replications = -1;
    int est_threads = 1;
    std::uint64_t est_seed = 0;
    bool est_seed_set = false;
    est->add_option("--config", config_path, "Estimate config (JSON)")->required();
    est->add_option("--replications", est_replications, "Override replication count");
    est->add_option("--threads", est_threads, "Worker threads");
    est->add_option("--seed", est_seed, "Seed override")->each([&](const std::string&) {
        est_seed_set = true;
    });

    // figure-data -----------------------------------------------------------
    auto* fig = app.add_subcommand("figure-data", "Exact error and bound curves");
    std::string fig_which;
    long long fig_nmin = 1, fig_nmax = 1000000;
    int fig_points = 30;
    fig->add_option("--which", fig_which,
                    "fig2_circle|fig3_hypercube|fig4_star|fig5_example2|fig_est_curves")
        ->required();
    fig->add_option("--nmin", fig_nmin, "Smallest sample size past the burn-in");
    fig->add_option("--nmax", fig_nmax, "Largest sample size past the burn-in");
    fig->add_option("--points", fig_points, "Log-grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        using namespace mcerr;

        if (spectrum->parsed()) {
            auto chain = load_chain(config_path);
            auto s = finite::spectral_decompose(chain);
            std::ostringstream out;
            out << "# schema=finite-spectrum v1\n";
            out << "index,eigenvalue\n";
            for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
                out << i << "," << fmt(s.eigenvalues(i)) << "\n";
            }
            write_output(out_path, out.str());
        } else if (ferr->parsed()) {
            auto spec = load_toy(config_path);
            auto sc = finite::toy_scalars(spec);
            long long n0 = fe_n0 >= 0
                               ? fe_n0
                               : bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
            std::ostringstream out;
            out << "# schema=finite-error v1\n";
            out << "n,n0,exact_mse,exact_error\n";
            for (long long n : tables::log_grid(fe_nmin, fe_nmax, fe_points)) {
                double mse = finite::analytic_example_error(spec, n, n0);
                out << n << "," << n0 << "," << fmt(mse) << "," << fmt(std::sqrt(mse)) << "\n";
            }
            write_output(out_path, out.str());
        } else if (fburn->parsed()) {
            double c = fb_c, beta = fb_beta;
            if (!config_path.empty()) {
                auto sc = finite::toy_scalars(load_toy(config_path));
                c = sc.burnin_constant;
                beta = sc.beta;
            }
            if (c < 0.0 || beta < 0.0) {
                throw SchemaError("finite-burnin: need --config or both --C and --beta");
            }
            std::ostringstream out;
            out << "# schema=finite-burnin v1\n";
            out << "C,beta,n0\n";
            out << fmt(c) << "," << fmt(beta) << ","
                << bounds::suggest_burnin_finite(c, beta) << "\n";
            write_output(out_path, out.str());
        } else if (fex->parsed()) {
            auto toy = finite::make_example(load_toy(config_path));
            std::ostringstream out;
            if (fex_summary) {
                out << "# schema=finite-example-summary v1\n";
                out << "state,pi,u1\n";
                for (Eigen::Index i = 0; i < toy.chain.size(); ++i) {
                    out << i << "," << fmt(toy.chain.pi()(i)) << "," << fmt(toy.f(i)) << "\n";
                }
            } else {
                finite::save_matrix_csv(out, toy.chain.matrix());
            }
            write_output(out_path, out.str());
        } else if (beval->parsed()) {
            auto params = parse_params(be_params);
            auto need = [&](const std::string& key) {
                auto it = params.find(key);
                if (it == params.end()) throw SchemaError("missing --param " + key + "=...");
                return it->second;
            };
            double value = 0.0;
            if (be_kind == "w") {
                value = bounds::w_factor(static_cast<long long>(need("n")), need("a"));
            } else if (be_kind == "u") {
                value = bounds::u_factor(need("a"), static_cast<long long>(need("n")));
            } else if (be_kind == "v") {
                value = bounds::v_factor(need("beta"), static_cast<long long>(need("n")),
                                         need("p"));
            } else if (be_kind == "lp_decay") {
                value = bounds::lp_norm_decay(need("beta"), static_cast<long long>(need("n")),
                                              need("p"));
            } else if (be_kind == "est_upper") {
                value = bounds::est_upper(need("n"), static_cast<long long>(need("n0")),
                                          need("beta"), need("C"), need("p"));
            } else if (be_kind == "autocorrelation_time") {
                value = bounds::autocorrelation_time(need("beta1"));
            } else if (be_kind == "gap_from_conductance") {
                value = bounds::gap_from_conductance(need("phi"));
            } else if (be_kind == "metro_gap") {
                value = bounds::metro_gap_lower(static_cast<int>(need("d")), need("r"),
                                                need("L"));
            } else if (be_kind == "markov" || be_kind == "lezaud") {
                value = bounds::confidence_bound(be_kind, params);
            } else {
                value = bounds::literature_bound(be_kind, params);
            }
            std::ostringstream out;
            out << "# schema=bound-eval v1\n";
            out << "kind,value\n";
            out << be_kind << "," << fmt(value) << "\n";
            write_output(out_path, out.str());
        } else if (btab->parsed()) {
            write_output(out_path, tables::burnin_table(bt_budgets, bt_betas, bt_c, bt_p));
        } else if (ntab->parsed()) {
            write_output(out_path,
                         tables::normals_table(nt_thetas, nt_x0, nt_delta, nt_p, nt_eps));
        } else if (plan->parsed()) {
            auto cfg = config::parse_config_file(config_path);
            if (cfg.kind != "plan") throw SchemaError("expected a plan config");
            auto setup = config::plan_from_json(cfg.body);
            if (plan_csv) {
                std::ostringstream out;
                out << "# schema=plan v1\n";
                out << "problem,walk,delta,n0,n,gap_lower,error_bound,oracle_budget\n";
                char size_buf[64];
                std::snprintf(size_buf, sizeof size_buf, "%.0f,%.0f", setup.plan.n0,
                              setup.plan.n);
                out << setup.problem << "," << setup.plan.walk << ","
                    << (setup.plan.delta ? fmt(*setup.plan.delta) : "") << "," << size_buf
                    << "," << fmt(setup.plan.gap_lower) << "," << fmt(setup.plan.error_bound)
                    << "," << fmt(setup.plan.oracle_budget) << "\n";
                write_output(out_path, out.str());
            } else {
                write_output(out_path, config::canonical_dump(setup.detail) + "\n");
            }
        } else if (est->parsed()) {
            auto cfg = config::parse_config_file(config_path);
            if (cfg.kind != "estimate") throw SchemaError("expected an estimate config");
            auto setup = config::estimate_from_json(cfg.body);
            if (est_replications > 0) setup.run.replications = est_replications;
            if (est_seed_set) {
                setup.run.seed = est_seed;
            } else if (!cfg.body.contains("seed")) {
                std::random_device entropy;
                setup.run.seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
                std::fprintf(stderr, "# seed drawn from system entropy: %" PRIu64 "\n",
                             setup.run.seed);
            }
            double true_value = setup.true_value;
            if (!setup.has_true_value) {
                throw SchemaError("estimate: config must supply true_value");
            }
            auto report = estimator::empirical_mse(setup.run, true_value, est_threads);
            auto verdict = estimator::certify(report, setup.bound_lower, setup.bound_upper);
            std::ostringstream out;
            out << "# schema=estimate v1\n";
            out << estimator::Verdict::csv_header() << "\n" << verdict.csv_row() << "\n";
            write_output(out_path, out.str());
        } else if (fig->parsed()) {
            tables::FigureKind kind;
            if (fig_which == "fig2_circle") {
                kind = tables::FigureKind::fig2_circle;
            } else if (fig_which == "fig3_hypercube") {
                kind = tables::FigureKind::fig3_hypercube;
            } else if (fig_which == "fig4_star") {
                kind = tables::FigureKind::fig4_star;
            } else if (fig_which == "fig5_example2") {
                kind = tables::FigureKind::fig5_example2;
            } else if (fig_which == "fig_est_curves") {
                kind = tables::FigureKind::fig_est_curves;
            } else {
                throw SchemaError("figure-data: unknown figure '" + fig_which + "'");
            }
            // budgets are n0 + n with n on a log grid; n0 comes from the figure
            long long n0 = 0;
            switch (kind) {
                case tables::FigureKind::fig2_circle: {
                    auto sc = finite::toy_scalars(finite::ToySpec::circle(999));
                    n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
                    break;
                }
                case tables::FigureKind::fig3_hypercube: {
                    auto sc = finite::toy_scalars(finite::ToySpec::hypercube(50));
                    n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
                    break;
                }
                case tables::FigureKind::fig4_star: {
                    auto sc = finite::toy_scalars(finite::ToySpec::star(100000, 0.1));
                    n0 = bounds::suggest_burnin_finite(sc.burnin_constant, sc.beta);
                    break;
                }
                case tables::FigureKind::fig5_example2:
                    n0 = static_cast<long long>(
                        planner::plan_worked_example(planner::WorkedExample::example2,
                                                     {.delta = 1e-3, .eps = 0.5})
                            .plan.n0);
                    break;
                case tables::FigureKind::fig_est_curves:
                    n0 = 0;
                    break;
            }
            std::vector<long long> budgets;
            for (long long n : tables::log_grid(fig_nmin, fig_nmax, fig_points)) {
                budgets.push_back(n0 + n);
            }
            write_output(out_path, tables::figure_data(kind, budgets));
        }
        return 0;
    } catch (const mcerr::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mcerr::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mcerr::DomainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mcerr::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const mcerr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
