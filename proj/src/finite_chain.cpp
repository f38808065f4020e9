#include "mcerr/finite_chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "mcerr/bounds.hpp"

namespace mcerr::finite {

namespace {

constexpr double kPi = 3.14159265358979323846;

double pi_dot(const Vector& a, const Vector& b, const Vector& pi) {
    return (a.array() * b.array() * pi.array()).sum();
}

}  // namespace

StochasticMatrix::StochasticMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw DomainError("StochasticMatrix: matrix must be square and non-empty");
    }
    if ((entries_.array() < 0.0).any()) {
        throw DomainError("StochasticMatrix: negative entry");
    }
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        double s = entries_.row(i).sum();
        if (std::abs(s - 1.0) > kRowSumTol) {
            throw DomainError("StochasticMatrix: row " + std::to_string(i) +
                              " sums to " + std::to_string(s));
        }
    }
}

StochasticMatrix lazy(const StochasticMatrix& m) {
    Matrix p = 0.5 * (Matrix::Identity(m.size(), m.size()) + m.entries());
    return StochasticMatrix(std::move(p));
}

bool is_irreducible(const StochasticMatrix& m) {
    const Eigen::Index n = m.size();
    const Matrix& p = m.entries();
    auto reaches_all = [&](bool transpose) {
        std::vector<char> seen(n, 0);
        std::vector<Eigen::Index> stack{0};
        seen[0] = 1;
        Eigen::Index count = 1;
        while (!stack.empty()) {
            Eigen::Index x = stack.back();
            stack.pop_back();
            for (Eigen::Index y = 0; y < n; ++y) {
                double w = transpose ? p(y, x) : p(x, y);
                if (w > 0.0 && !seen[y]) {
                    seen[y] = 1;
                    ++count;
                    stack.push_back(y);
                }
            }
        }
        return count == n;
    };
    return reaches_all(false) && reaches_all(true);
}

Vector stationary_distribution(const StochasticMatrix& m) {
    if (!is_irreducible(m)) {
        throw ReducibleChain("stationary_distribution: reachability closure incomplete");
    }
    const Eigen::Index n = m.size();
    // (P^T - I) pi = 0 with one row replaced by the normalization sum(pi) = 1.
    Matrix a = m.entries().transpose() - Matrix::Identity(n, n);
    a.row(n - 1).setOnes();
    Vector b = Vector::Zero(n);
    b(n - 1) = 1.0;
    Vector pi = a.fullPivLu().solve(b);
    double resid = ((m.entries().transpose() * pi) - pi).cwiseAbs().maxCoeff();
    if (resid > 1e-10) {
        throw NumericalFailure("stationary_distribution: solve residual " +
                               std::to_string(resid));
    }
    return pi;
}

ReversibleChain::ReversibleChain(StochasticMatrix matrix, Vector pi)
    : matrix_(std::move(matrix)), pi_(std::move(pi)) {
    const Eigen::Index n = matrix_.size();
    if (pi_.size() != n) throw DomainError("ReversibleChain: pi has wrong length");
    if ((pi_.array() <= 0.0).any()) throw DomainError("ReversibleChain: pi must be positive");
    if (std::abs(pi_.sum() - 1.0) > kRowSumTol) {
        throw DomainError("ReversibleChain: pi does not sum to 1");
    }
    const Matrix& p = matrix_.entries();
    for (Eigen::Index x = 0; x < n; ++x) {
        for (Eigen::Index y = x + 1; y < n; ++y) {
            if (std::abs(pi_(x) * p(x, y) - pi_(y) * p(y, x)) > kDetailedBalanceTol) {
                throw DomainError("ReversibleChain: detailed balance fails at (" +
                                  std::to_string(x) + "," + std::to_string(y) + ")");
            }
        }
    }
}

ReversibleChain ReversibleChain::with_computed_stationary(StochasticMatrix matrix) {
    Vector pi = stationary_distribution(matrix);
    return ReversibleChain(std::move(matrix), std::move(pi));
}

SpectralData spectral_decompose(const ReversibleChain& chain) {
    const Eigen::Index n = chain.size();
    const Matrix& p = chain.p();
    const Vector& pi = chain.pi();
    Vector sqrt_pi = pi.array().sqrt();

    Matrix sym(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            sym(i, j) = sqrt_pi(i) * p(i, j) / sqrt_pi(j);
        }
    }
    sym = 0.5 * (sym + sym.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("spectral_decompose: eigensolver failed");
    }

    // descending order; back-transform columns to pi-orthonormal vectors
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return solver.eigenvalues()(a) > solver.eigenvalues()(b);
    });

    SpectralData out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    out.pi = pi;
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = solver.eigenvalues()(order[k]);
        out.eigenvectors.col(k) = solver.eigenvectors().col(order[k]).array() / sqrt_pi.array();
    }

    // Gram-Schmidt in the pi inner product within degenerate blocks.  The
    // solver already returns an orthonormal basis; this pins the convention
    // when eigenvalues tie.
    Eigen::Index k = 0;
    while (k < n) {
        Eigen::Index j = k + 1;
        while (j < n && std::abs(out.eigenvalues(j) - out.eigenvalues(k)) <= 1e-10) ++j;
        for (Eigen::Index a = k; a < j; ++a) {
            Vector v = out.eigenvectors.col(a);
            for (Eigen::Index b = k; b < a; ++b) {
                v -= pi_dot(v, out.eigenvectors.col(b), pi) * out.eigenvectors.col(b);
            }
            double norm = std::sqrt(pi_dot(v, v, pi));
            if (norm < 1e-12) throw NumericalFailure("spectral_decompose: degenerate basis");
            out.eigenvectors.col(a) = v / norm;
        }
        k = j;
    }

    if (out.eigenvectors(0, 0) < 0.0) out.eigenvectors.col(0) *= -1.0;

    for (Eigen::Index c = 0; c < n; ++c) {
        double resid =
            (p * out.eigenvectors.col(c) - out.eigenvalues(c) * out.eigenvectors.col(c))
                .cwiseAbs()
                .maxCoeff();
        if (resid > kEigenResidualTol) {
            throw NumericalFailure("spectral_decompose: residual " + std::to_string(resid) +
                                   " at eigenvalue " + std::to_string(out.eigenvalues(c)));
        }
    }

    out.beta1 = n > 1 ? out.eigenvalues(1) : 0.0;
    out.beta = n > 1 ? std::max(out.beta1, std::abs(out.eigenvalues(n - 1))) : 0.0;
    return out;
}

InitialDistribution::InitialDistribution(Vector nu, const Vector& pi) : nu_(std::move(nu)) {
    if (nu_.size() != pi.size()) throw DomainError("InitialDistribution: length mismatch");
    if ((nu_.array() < 0.0).any()) throw DomainError("InitialDistribution: negative mass");
    if (std::abs(nu_.sum() - 1.0) > kRowSumTol) {
        throw DomainError("InitialDistribution: nu does not sum to 1");
    }
    density_ = nu_.array() / pi.array();
}

InitialDistribution InitialDistribution::point_mass(Eigen::Index state, const Vector& pi) {
    Vector nu = Vector::Zero(pi.size());
    if (state < 0 || state >= pi.size()) throw DomainError("point_mass: state out of range");
    nu(state) = 1.0;
    return InitialDistribution(std::move(nu), pi);
}

double chi2_contrast(const InitialDistribution& nu, const Vector& pi) {
    return ((nu.nu() - pi).array().square() / pi.array()).sum();
}

double exact_stationary_mse(const SpectralData& s, const Vector& f, long long n) {
    if (n < 1) throw DomainError("exact_stationary_mse: n must be >= 1");
    if (s.beta1 >= 1.0) throw GapExhausted("exact_stationary_mse: beta1 >= 1");
    const Eigen::Index m = s.eigenvalues.size();
    double total = 0.0;
    for (Eigen::Index k = 1; k < m; ++k) {
        double a = pi_dot(f, s.eigenvectors.col(k), s.pi);
        total += a * a * bounds::w_factor(n, s.eigenvalues(k));
    }
    return total / (static_cast<double>(n) * static_cast<double>(n));
}

double exact_mse(const ReversibleChain& chain, const InitialDistribution& nu,
                 const Vector& f, long long n, long long n0) {
    if (n < 1 || n0 < 0) throw DomainError("exact_mse: need n >= 1, n0 >= 0");
    const Matrix& p = chain.p();
    const Vector& pi = chain.pi();
    const double nn = static_cast<double>(n);

    double s_f = f.dot(pi);
    Vector g = f.array() - s_f;

    // stationary part: (1/n^2)[ n<g,g> + 2 sum_{k<n} (n-k) <g, P^k g> ]
    double stat = nn * pi_dot(g, g, pi);
    std::vector<Vector> prefix;  // prefix[m] = sum_{j<=m} g .* P^j g
    prefix.reserve(static_cast<std::size_t>(std::max<long long>(n - 1, 0)) + 1);
    prefix.push_back(Vector::Zero(g.size()));
    Vector pg = g;
    for (long long k = 1; k <= n - 1; ++k) {
        pg = p * pg;
        Vector c = g.array() * pg.array();
        stat += 2.0 * static_cast<double>(n - k) * c.dot(pi);
        prefix.push_back(prefix.back() + c);
    }
    stat /= nn * nn;

    // initial-bias part via L_i(h) = <P^i (nu/pi - 1), h>_pi
    Vector d = nu.density().array() - 1.0;
    Vector q = d;
    for (long long i = 0; i < n0; ++i) q = p * q;
    double bias_sq = 0.0, bias_cross = 0.0;
    Vector g2 = g.array().square();
    for (long long j = 1; j <= n; ++j) {
        q = p * q;  // P^{j+n0} d
        bias_sq += pi_dot(q, g2, pi);
        if (j <= n - 1) {
            bias_cross += pi_dot(q, prefix[static_cast<std::size_t>(n - j)], pi);
        }
    }
    return stat + bias_sq / (nn * nn) + 2.0 * bias_cross / (nn * nn);
}

ToySpec ToySpec::circle(long long t) { return {ToyFamily::circle, t, 0, 0.0}; }
ToySpec ToySpec::hypercube(int d) { return {ToyFamily::hypercube, 0, d, 0.0}; }
ToySpec ToySpec::star(long long t, double theta) { return {ToyFamily::star, t, 0, theta}; }

void ToySpec::validate() const {
    switch (family) {
        case ToyFamily::circle:
            if (t < 3 || t % 2 == 0) throw DomainError("circle: T must be odd and >= 3");
            break;
        case ToyFamily::hypercube:
            if (d < 1) throw DomainError("hypercube: d must be >= 1");
            break;
        case ToyFamily::star:
            if (t < 2 || t % 2 != 0) throw DomainError("star: T must be even and >= 2");
            if (!(theta > 0.0) || !(theta < 1.0)) throw DomainError("star: theta in (0,1)");
            break;
    }
}

ToyScalars toy_scalars(const ToySpec& spec) {
    spec.validate();
    switch (spec.family) {
        case ToyFamily::circle: {
            double t = static_cast<double>(spec.t);
            double beta1 = std::cos(2.0 * kPi / t);
            double beta = std::cos(kPi / t);
            double c = std::sqrt(t * t - t);
            return {beta1, beta, c};
        }
        case ToyFamily::hypercube: {
            double d = static_cast<double>(spec.d);
            double beta1 = 1.0 - 1.0 / d;
            // C = sqrt(2^{2d} - 2^d), evaluated in log space for large d
            double c = std::exp(0.5 * (2.0 * d * std::log(2.0) +
                                       std::log1p(-std::pow(2.0, -d))));
            return {beta1, beta1, c};
        }
        case ToyFamily::star: {
            double t = static_cast<double>(spec.t);
            double beta = 1.0 - spec.theta;
            double c = std::sqrt((2.0 - spec.theta) * t);
            return {0.0, beta, c};
        }
    }
    throw DomainError("toy_scalars: unknown family");
}

ToyExample make_example(const ToySpec& spec, int max_hypercube_dim) {
    spec.validate();
    ToyScalars sc = toy_scalars(spec);
    switch (spec.family) {
        case ToyFamily::circle: {
            const long long t = spec.t;
            Matrix p = Matrix::Zero(t, t);
            for (long long x = 0; x < t; ++x) {
                p(x, (x + 1) % t) = 0.5;
                p(x, (x + t - 1) % t) = 0.5;
            }
            Vector pi = Vector::Constant(t, 1.0 / static_cast<double>(t));
            ReversibleChain chain(StochasticMatrix(std::move(p)), pi);
            Vector u1(t);
            for (long long x = 0; x < t; ++x) {
                u1(x) = std::sqrt(2.0) *
                        std::cos(2.0 * kPi * static_cast<double>(x) / static_cast<double>(t));
            }
            auto nu = InitialDistribution::point_mass(0, pi);
            return {std::move(chain), std::move(u1), std::move(nu), sc.beta1, sc.beta,
                    sc.burnin_constant};
        }
        case ToyFamily::hypercube: {
            if (spec.d > max_hypercube_dim) {
                throw SizeOverflow("hypercube: 2^" + std::to_string(spec.d) +
                                   " states exceed the cap (d <= " +
                                   std::to_string(max_hypercube_dim) + ")");
            }
            const long long size = 1LL << spec.d;
            const double dd = static_cast<double>(spec.d);
            Matrix p = Matrix::Zero(size, size);
            for (long long x = 0; x < size; ++x) {
                p(x, x) = 0.5;
                for (int b = 0; b < spec.d; ++b) {
                    p(x, x ^ (1LL << b)) = 0.5 / dd;
                }
            }
            Vector pi = Vector::Constant(size, 1.0 / static_cast<double>(size));
            ReversibleChain chain(StochasticMatrix(std::move(p)), pi);
            Vector u1(size);
            for (long long x = 0; x < size; ++x) u1(x) = (x & 1) ? -1.0 : 1.0;
            auto nu = InitialDistribution::point_mass(0, pi);
            return {std::move(chain), std::move(u1), std::move(nu), sc.beta1, sc.beta,
                    sc.burnin_constant};
        }
        case ToyFamily::star: {
            const long long t = spec.t;
            const long long size = t + 1;
            const double th = spec.theta;
            Matrix p = Matrix::Zero(size, size);
            p(0, 0) = th;
            for (long long y = 1; y < size; ++y) p(0, y) = (1.0 - th) / static_cast<double>(t);
            for (long long x = 1; x < size; ++x) p(x, 0) = 1.0;
            Vector pi(size);
            pi(0) = 1.0 / (2.0 - th);
            for (long long x = 1; x < size; ++x) {
                pi(x) = (1.0 - th) / (static_cast<double>(t) * (2.0 - th));
            }
            ReversibleChain chain(StochasticMatrix(std::move(p)), pi);
            Vector u1 = Vector::Zero(size);
            double amp = std::sqrt((2.0 - th) / (1.0 - th));
            for (long long x = 1; x <= t / 2; ++x) u1(x) = amp;
            for (long long x = t / 2 + 1; x <= t; ++x) u1(x) = -amp;
            auto nu = InitialDistribution::point_mass(0, pi);
            return {std::move(chain), std::move(u1), std::move(nu), sc.beta1, sc.beta,
                    sc.burnin_constant};
        }
    }
    throw DomainError("make_example: unknown family");
}

double analytic_example_error(const ToySpec& spec, long long n, long long n0) {
    spec.validate();
    if (n < 1 || n0 < 0) throw DomainError("analytic_example_error: need n >= 1, n0 >= 0");
    const double nn = static_cast<double>(n);
    switch (spec.family) {
        case ToyFamily::circle: {
            double t = static_cast<double>(spec.t);
            double b1 = std::cos(2.0 * kPi / t);
            double b3 = std::cos(4.0 * kPi / t);
            double stat = (1.0 + b1) / (nn * (1.0 - b1)) -
                          2.0 * b1 * (1.0 - std::pow(b1, nn)) /
                              (nn * nn * (1.0 - b1) * (1.0 - b1));
            double bias = 0.0;
            double b3_pow = std::pow(b3, static_cast<double>(n0 + 1));
            for (long long j = 1; j <= n; ++j) {
                double coef =
                    (1.0 + b1 - 2.0 * std::pow(b1, static_cast<double>(n - j + 1))) / (1.0 - b1);
                bias += coef * b3_pow;
                b3_pow *= b3;
            }
            return stat + bias / (nn * nn);
        }
        case ToyFamily::hypercube: {
            double d = static_cast<double>(spec.d);
            return (2.0 * d - 1.0) / nn -
                   2.0 * (d * d - d) * (1.0 - std::pow(1.0 - 1.0 / d, nn)) / (nn * nn);
        }
        case ToyFamily::star: {
            double th = spec.theta;
            double b = th - 1.0;
            return 1.0 / nn - std::pow(b, static_cast<double>(n0 + 1)) *
                                  (std::pow(b, nn) - 1.0) / ((th - 2.0) * nn * nn);
        }
    }
    throw DomainError("analytic_example_error: unknown family");
}

ErrorBounds bounds_finite(double beta1, double beta, double c, long long n, long long n0) {
    if (n < 1 || n0 < 0) throw DomainError("bounds_finite: need n >= 1, n0 >= 0");
    if (c < 0.0) throw DomainError("bounds_finite: C must be non-negative");
    if (beta >= 1.0 - 1e-12) throw GapExhausted("bounds_finite: beta >= 1");
    const double nn = static_cast<double>(n);
    double gap1 = 1.0 - beta1;
    double gap = 1.0 - beta;
    double bias = 2.0 * c * std::pow(beta, static_cast<double>(n0)) / (nn * nn * gap * gap);
    double upper = 2.0 / (nn * gap1) + bias;
    double lower = (1.0 + beta1) / (nn * gap1) - 2.0 / (nn * nn * gap1 * gap1) - bias;
    return {std::max(lower, 0.0), upper};
}

ErrorBounds bounds_finite(const SpectralData& s, double c, long long n, long long n0) {
    return bounds_finite(s.beta1, s.beta, c, n, n0);
}

ErrorBounds bounds_finite_at_suggested(double beta1, double beta, long long n) {
    if (n < 1) throw DomainError("bounds_finite_at_suggested: n must be >= 1");
    if (beta >= 1.0 - 1e-12) throw GapExhausted("bounds_finite_at_suggested: beta >= 1");
    const double nn = static_cast<double>(n);
    double gap1 = 1.0 - beta1;
    double gap = 1.0 - beta;
    double upper = 2.0 / (nn * gap) + 2.0 / (nn * nn * gap * gap);
    double lower = (1.0 + beta1) / (nn * gap1) - 4.0 / (nn * nn * gap * gap);
    return {std::max(lower, 0.0), upper};
}

namespace {

Conductance conductance_exhaustive(const ReversibleChain& chain) {
    const int n = static_cast<int>(chain.size());
    const Matrix& p = chain.p();
    const Vector& pi = chain.pi();
    // w(x,y) = pi(x) p(x,y) is symmetric; maintain the cut flow and pi(A)
    // incrementally over a Gray-code walk of all subsets.
    Matrix w(n, n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) w(x, y) = pi(x) * p(x, y);
    }
    std::vector<char> in_set(n, 0);
    std::vector<double> to_set(n, 0.0);  // to_set[z] = sum_{x in A} w(x,z)
    double flow = 0.0, mass = 0.0;
    double phi = std::numeric_limits<double>::infinity();
    const std::uint64_t total = 1ULL << n;
    std::uint64_t prev_gray = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        int z = std::countr_zero(gray ^ prev_gray);
        prev_gray = gray;
        double row = pi(z);  // full row sum of w at z
        if (!in_set[z]) {
            flow += (row - to_set[z] - w(z, z)) - to_set[z];
            mass += pi(z);
            in_set[z] = 1;
            for (int y = 0; y < n; ++y) to_set[y] += w(z, y);
        } else {
            for (int y = 0; y < n; ++y) to_set[y] -= w(z, y);
            flow -= (row - to_set[z] - w(z, z)) - to_set[z];
            mass -= pi(z);
            in_set[z] = 0;
        }
        if (mass > 0.0 && mass <= 0.5 + 1e-15) {
            phi = std::min(phi, std::max(flow, 0.0) / mass);
        }
    }
    return {phi, true};
}

}  // namespace

Conductance conductance_finite(const ReversibleChain& chain) {
    if (chain.size() > 25) {
        throw TooLarge("conductance_finite: exhaustive enumeration capped at 25 states; "
                       "supply a candidate list");
    }
    return conductance_exhaustive(chain);
}

Conductance conductance_finite(const ReversibleChain& chain,
                               std::span<const std::vector<int>> candidates) {
    const Matrix& p = chain.p();
    const Vector& pi = chain.pi();
    const int n = static_cast<int>(chain.size());
    double phi = std::numeric_limits<double>::infinity();
    for (const auto& cand : candidates) {
        std::vector<char> in_set(n, 0);
        double mass = 0.0;
        for (int x : cand) {
            if (x < 0 || x >= n) throw DomainError("conductance_finite: candidate out of range");
            if (!in_set[x]) {
                in_set[x] = 1;
                mass += pi(x);
            }
        }
        if (mass <= 0.0 || mass >= 1.0) continue;
        bool complement = mass > 0.5;  // flow is symmetric, use the light side
        double flow = 0.0;
        for (int x = 0; x < n; ++x) {
            if (!in_set[x]) continue;
            for (int y = 0; y < n; ++y) {
                if (!in_set[y]) flow += pi(x) * p(x, y);
            }
        }
        double denom = complement ? 1.0 - mass : mass;
        phi = std::min(phi, flow / denom);
    }
    if (!std::isfinite(phi)) throw DomainError("conductance_finite: no usable candidate");
    return {phi, false};
}

double tv_operator_norm(const ReversibleChain& chain, long long n) {
    if (n < 1) throw DomainError("tv_operator_norm: n must be >= 1");
    // P^n by binary exponentiation
    Matrix result = Matrix::Identity(chain.size(), chain.size());
    Matrix base = chain.p();
    long long e = n;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    double worst = 0.0;
    for (Eigen::Index x = 0; x < chain.size(); ++x) {
        worst = std::max(worst, (result.row(x).transpose() - chain.pi()).cwiseAbs().sum());
    }
    return worst;  // = 2 * max_x ||K^n(x,.) - pi||_tv
}

void save_matrix_csv(std::ostream& out, const StochasticMatrix& m) {
    out << "# stochastic-matrix v1, size=" << m.size() << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        for (Eigen::Index j = 0; j < m.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m.entries()(i, j));
            out << buf << (j + 1 < m.size() ? "," : "");
        }
        out << "\n";
    }
}

StochasticMatrix load_matrix_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("matrix csv: empty stream");
    const std::string prefix = "# stochastic-matrix v1, size=";
    if (header.rfind(prefix, 0) != 0) {
        throw ParseError("matrix csv: bad header '" + header + "'");
    }
    Eigen::Index n = 0;
    try {
        n = static_cast<Eigen::Index>(std::stoll(header.substr(prefix.size())));
    } catch (const std::exception&) {
        throw ParseError("matrix csv: unparsable size");
    }
    if (n < 1) throw ParseError("matrix csv: size must be positive");
    Matrix m(n, n);
    std::string line;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw ParseError("matrix csv: missing row");
        std::stringstream row(line);
        std::string cell;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::getline(row, cell, ',')) throw ParseError("matrix csv: short row");
            m(i, j) = std::stod(cell);
        }
    }
    return StochasticMatrix(std::move(m));
}

}  // namespace mcerr::finite
