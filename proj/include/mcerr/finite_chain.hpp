#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mcerr/errors.hpp"

namespace mcerr::finite {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kDetailedBalanceTol = 1e-10;
inline constexpr double kEigenResidualTol = 1e-8;

/// Row-stochastic matrix; rejects invalid input rather than repairing it.
class StochasticMatrix {
  public:
    explicit StochasticMatrix(Matrix entries);

    Eigen::Index size() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

  private:
    Matrix entries_;
};

/// (I + P) / 2; shifts the spectrum to (1 + beta_i)/2.
StochasticMatrix lazy(const StochasticMatrix& m);

/// Strong connectivity of the support graph (reachability closure).
bool is_irreducible(const StochasticMatrix& m);

/// Unique stationary distribution of an irreducible matrix, by direct linear
/// solve of (P^T - I) pi = 0 with sum-to-one normalization.
Vector stationary_distribution(const StochasticMatrix& m);

/// Transition matrix paired with a stationary distribution satisfying
/// detailed balance.
class ReversibleChain {
  public:
    ReversibleChain(StochasticMatrix matrix, Vector pi);
    static ReversibleChain with_computed_stationary(StochasticMatrix matrix);

    Eigen::Index size() const { return matrix_.size(); }
    const StochasticMatrix& matrix() const { return matrix_; }
    const Matrix& p() const { return matrix_.entries(); }
    const Vector& pi() const { return pi_; }

  private:
    StochasticMatrix matrix_;
    Vector pi_;
};

/// Full eigendecomposition of a reversible chain.  Eigenvalues sorted
/// descending; eigenvector columns are pi-orthonormal with u0 == 1.
struct SpectralData {
    Vector eigenvalues;
    Matrix eigenvectors;  // column k is u_k
    Vector pi;
    double beta1;  // second largest eigenvalue
    double beta;   // max{beta1, |beta_{last}|}
};

/// Symmetrize with D^{1/2} P D^{-1/2}, solve the symmetric eigenproblem,
/// back-transform, and pi-orthonormalize degenerate blocks by Gram-Schmidt.
SpectralData spectral_decompose(const ReversibleChain& chain);

/// Probability vector nu together with the density nu/pi.
class InitialDistribution {
  public:
    InitialDistribution(Vector nu, const Vector& pi);
    static InitialDistribution point_mass(Eigen::Index state, const Vector& pi);

    const Vector& nu() const { return nu_; }
    const Vector& density() const { return density_; }

  private:
    Vector nu_;
    Vector density_;  // nu/pi
};

/// chi^2(nu, pi) = sum (nu-pi)^2/pi = ||nu/pi - 1||_2^2.
double chi2_contrast(const InitialDistribution& nu, const Vector& pi);

/// Exact stationary-start MSE of S_n:
///   e_pi(S_n, f)^2 = (1/n^2) sum_k a_k^2 W(n, beta_k),  a_k = <f, u_k>_pi.
double exact_stationary_mse(const SpectralData& s, const Vector& f, long long n);

/// Exact MSE of S_{n,n0} for an arbitrary initial distribution, by iterated
/// matrix-vector products (cost O(|D|^2 (n + n0)), O(n|D|) memory).
double exact_mse(const ReversibleChain& chain, const InitialDistribution& nu,
                 const Vector& f, long long n, long long n0);

enum class ToyFamily { circle, hypercube, star };

/// Circle (odd T >= 3), hypercube (d >= 1), star (even T >= 2, theta in (0,1)).
struct ToySpec {
    ToyFamily family;
    long long t = 0;      // circle / star size
    int d = 0;            // hypercube dimension
    double theta = 0.0;   // star holding probability

    static ToySpec circle(long long t);
    static ToySpec hypercube(int d);
    static ToySpec star(long long t, double theta);

    void validate() const;
};

/// Materialized toy example: chain, canonical integrand u1, canonical
/// point-mass initial distribution, and the analytic spectral parameters.
struct ToyExample {
    ReversibleChain chain;
    Vector f;                    // canonical eigenfunction u1
    InitialDistribution nu;      // canonical start (delta at state 0)
    double beta1;
    double beta;
    double burnin_constant;      // C = sqrt(||1/pi||_inf) ||nu/pi - 1||_2
};

ToyExample make_example(const ToySpec& spec, int max_hypercube_dim = 20);

/// Analytic closed form of e_nu(S_{n,n0}, u1)^2 for the family's canonical
/// start; agrees with exact_mse on the materialized chain.
double analytic_example_error(const ToySpec& spec, long long n, long long n0);

/// Analytic beta1, beta and burn-in constant C without materializing the
/// chain (usable for sizes far beyond the materialization cap).
struct ToyScalars {
    double beta1;
    double beta;
    double burnin_constant;
};
ToyScalars toy_scalars(const ToySpec& spec);

struct ErrorBounds {
    double lower;  // squared scale, clamped at 0
    double upper;  // squared scale
};

/// Squared-error bounds for the unit ||f||_2 ball:
///   upper = 2/(n(1-beta1)) + 2 C beta^{n0} / (n^2 (1-beta)^2)
///   lower = (1+beta1)/(n(1-beta1)) - 2/(n^2(1-beta1)^2)
///           - 2 C beta^{n0}/(n^2(1-beta)^2), clamped at 0.
ErrorBounds bounds_finite(const SpectralData& s, double c, long long n, long long n0);
ErrorBounds bounds_finite(double beta1, double beta, double c, long long n, long long n0);

/// Variant with 1/(1-beta) throughout and the worst-case bias C beta^{n0} <= 1
/// folded in, as used at the suggested burn-in:
///   upper = 2/(n(1-beta)) + 2/(n^2(1-beta)^2)
///   lower = (1+beta1)/(n(1-beta1)) - 4/(n^2(1-beta)^2), clamped at 0.
ErrorBounds bounds_finite_at_suggested(double beta1, double beta, long long n);

struct Conductance {
    double phi;
    bool exact;  // false when derived from a caller-supplied candidate family
};

/// Conductance phi = min over 0 < pi(A) <= 1/2 of flow(A)/pi(A).  Exhaustive
/// subset enumeration, capped at |D| <= 25 states.
Conductance conductance_finite(const ReversibleChain& chain);

/// Upper bound on phi from a candidate set family (each candidate given as a
/// list of state indices).
Conductance conductance_finite(const ReversibleChain& chain,
                               std::span<const std::vector<int>> candidates);

/// ||P^n - S||_{Linf->Linf} = 2 max_x ||K^n(x,.) - pi||_tv, computed exactly
/// by matrix powering.
double tv_operator_norm(const ReversibleChain& chain, long long n);

/// Dense CSV layout, header "# stochastic-matrix v1, size=N".
void save_matrix_csv(std::ostream& out, const StochasticMatrix& m);
StochasticMatrix load_matrix_csv(std::istream& in);

}  // namespace mcerr::finite
