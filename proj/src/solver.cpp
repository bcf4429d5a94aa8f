#include <fslp/solver.hpp>

#include <cmath>

#include <fslp/linalg.hpp>

namespace fslp {

namespace {

void validate(const SolveRequest& req) {
    if (req.N < 1) throw std::invalid_argument("solve: N must be positive");
    if (req.k_max < 0 || req.k_max >= req.N)
        throw std::invalid_argument("solve: k_max must satisfy 0 <= k_max < N");
    if (!(req.trust_fraction > 0.0) || req.trust_fraction > 1.0)
        throw std::invalid_argument("solve: trust_fraction must lie in (0,1]");
    if (req.potential && req.potential->alpha != req.alpha.value())
        throw std::invalid_argument("solve: potential was expanded for a different alpha");
}

}  // namespace

EigenSolution solve(const SolveRequest& req) {
    validate(req);
    const Eigen::Index n_max = req.potential ? 2 * req.N + 1 : req.N;
    auto basis = std::make_shared<const SpectralBasis>(make_basis(req.alpha, n_max));
    return solve(req, std::move(basis));
}

EigenSolution solve(const SolveRequest& req, std::shared_ptr<const SpectralBasis> basis) {
    validate(req);
    if (!basis) throw std::invalid_argument("solve: null basis");
    const AssembledSystem sys = assemble(*basis, req.potential ? &*req.potential : nullptr, req.N);

    Eigen::MatrixXd M = sys.Q;
    M.diagonal() += sys.A;
    const EigenPairs pairs = gen_sym_eig(M, sys.B);

    const Eigen::Index count = req.k_max + 1;
    EigenSolution sol;
    sol.lambdas = pairs.values.head(count);
    sol.coeffs = pairs.vectors.leftCols(count);
    sol.alpha = req.alpha.value();
    sol.N = req.N;
    sol.k_max = req.k_max;
    sol.trust_fraction = req.trust_fraction;
    sol.potential = req.potential;
    sol.potential_fingerprint = sys.potential_fingerprint;
    sol.basis = std::move(basis);

    // sign convention: first coefficient above 1e-12 in magnitude is positive
    for (Eigen::Index k = 0; k < count; ++k) {
        for (Eigen::Index n = 0; n < req.N; ++n) {
            if (std::abs(sol.coeffs(n, k)) > 1e-12) {
                if (sol.coeffs(n, k) < 0.0) sol.coeffs.col(k) = -sol.coeffs.col(k);
                break;
            }
        }
    }

    sol.residuals.resize(count);
    for (Eigen::Index k = 0; k < count; ++k)
        sol.residuals[k] =
            (M.selfadjointView<Eigen::Lower>() * sol.coeffs.col(k) -
             sol.lambdas[k] * (sys.B.selfadjointView<Eigen::Lower>() * sol.coeffs.col(k)))
                .cwiseAbs()
                .maxCoeff();

    sol.trusted.resize(count);
    for (Eigen::Index k = 0; k < count; ++k)
        sol.trusted[k] = (static_cast<double>(k) < req.trust_fraction * req.N);
    return sol;
}

double Eigenfunction::operator()(double x) const {
    if (std::abs(x) >= 1.0) return 0.0;
    double acc = 0.0;
    double pm1 = 0.0, p = 1.0;
    for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
        acc += coeffs[n] * p;
        const double pn = basis->zeta1[n] * x * p - basis->zeta0[n] * pm1;
        pm1 = p;
        p = pn;
    }
    return std::pow(1.0 - x * x, alpha / 2.0) * acc;
}

Eigenfunction eigenfunction(const EigenSolution& sol, Eigen::Index k) {
    if (k < 0 || k > sol.k_max) throw std::out_of_range("eigenfunction: index out of range");
    return Eigenfunction{sol.alpha, sol.coeffs.col(k), sol.basis};
}

CoeffAsymptote coefficient_asymptote(const EigenSolution& sol, Eigen::Index k,
                                     const PotentialModel& potential) {
    if (k < 0 || k > sol.k_max) throw std::out_of_range("coefficient_asymptote: index out of range");
    if (!sol.trusted[static_cast<std::size_t>(k)])
        throw std::invalid_argument("coefficient_asymptote: index outside the trust window");

    CoeffAsymptote out;
    out.c = sol.coeffs.col(k);
    const double total = out.c.sum();
    if (std::abs(total) <= 1e-12 * out.c.cwiseAbs().sum()) throw ZeroSum();
    out.c /= total;

    double ye1 = 0.0, yo1 = 0.0;  // even/odd coefficient sums = boundary parts of y-hat
    for (Eigen::Index n = 0; n < out.c.size(); ++n) (n % 2 == 0 ? ye1 : yo1) += out.c[n];

    // q_L(+-1) from the Legendre sum (P_j(1) = 1, P_j(-1) = (-1)^j)
    double qp = 0.0, qm = 0.0;
    for (Eigen::Index j = 0; j < potential.legendre_coeffs.size(); ++j) {
        qp += potential.legendre_coeffs[j];
        qm += (j % 2 == 0 ? 1.0 : -1.0) * potential.legendre_coeffs[j];
    }
    const double qe1 = (qp + qm) / 2.0;
    const double qo1 = (qp - qm) / 2.0;

    const double alpha = sol.alpha;
    const double lambda = sol.lambdas[k];
    out.nu0 = (lambda - qe1) * ye1 - qo1 * yo1 / (3.0 + alpha);
    out.nu1 = (lambda - qe1) * yo1 - qo1 * ye1;
    out.nu2 = qo1 * yo1 * (2.0 + alpha) / (3.0 + alpha);

    const Eigen::Index N = sol.N;
    const Eigen::VectorXd b0 = mass_column(*sol.basis, 0, N);
    const Eigen::VectorXd b1 = mass_column(*sol.basis, 1, N);
    const Eigen::VectorXd b2 = mass_column(*sol.basis, 2, N);
    out.c_hat.resize(N);
    for (Eigen::Index n = 0; n < N; ++n) {
        const double a_n = sol.basis->a[n];
        out.c_hat[n] = (n % 2 == 0) ? (out.nu0 * b0[n] - out.nu2 * b2[n]) / a_n
                                    : out.nu1 * b1[n] / a_n;
    }
    return out;
}

}  // namespace fslp
