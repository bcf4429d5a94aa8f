#include <fslp/potential.hpp>

#include <algorithm>
#include <cmath>

#include <fslp/quadrature.hpp>

namespace fslp {

namespace {

// All Legendre values P_0(x)..P_L(x); the classical normalization already
// has P_j(1) = 1.
Eigen::VectorXd legendre_all(int L, double x) {
    Eigen::VectorXd p(L + 1);
    p[0] = 1.0;
    if (L >= 1) p[1] = x;
    for (int j = 1; j < L; ++j)
        p[j + 1] = ((2.0 * j + 1.0) * x * p[j] - j * p[j - 1]) / (j + 1.0);
    return p;
}

Eigen::VectorXd project_impl(const Expr& q, int L) {
    const int points = std::max(L + 6, 12);
    const QuadratureRule rule = gauss_legendre(points);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(L + 1);
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double wq = rule.weights[i] * q.eval(rule.nodes[i]);
        acc += wq * legendre_all(L, rule.nodes[i]);
    }
    for (int j = 0; j <= L; ++j) acc[j] *= (2.0 * j + 1.0) / 2.0;
    return acc;
}

}  // namespace

Eigen::VectorXd legendre_project(const Expr& q, int L) {
    if (L < 0) throw std::invalid_argument("legendre_project: degree must be non-negative");
    return project_impl(q, L);
}

int choose_L(const Expr& q, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("choose_L: tolerance must be positive");
    constexpr int kMaxL = 128;
    const Eigen::VectorXd coeffs = project_impl(q, kMaxL);
    const double scale = coeffs.cwiseAbs().maxCoeff();
    for (int L = 1; L <= kMaxL; ++L) {
        if (std::max(std::abs(coeffs[L - 1]), std::abs(coeffs[L])) <= tol * scale) return L;
    }
    throw NoDecay();
}

Eigen::VectorXd jacobi_reexpand(const Eigen::VectorXd& legendre_coeffs,
                                const SpectralBasis& basis) {
    const int L = static_cast<int>(legendre_coeffs.size()) - 1;
    if (L < 0) throw std::invalid_argument("jacobi_reexpand: empty coefficient vector");
    if (basis.n_max < L + 1)
        throw std::invalid_argument("jacobi_reexpand: basis does not reach degree L");
    const int points = std::max(L + 6, 12);
    const QuadratureRule rule = gauss_jacobi(basis.alpha / 2.0, basis.alpha / 2.0, points);
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(L + 1);
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double wq = rule.weights[i] * eval_legendre_sum(legendre_coeffs, x);
        double pm1 = 0.0, p = 1.0;
        for (int l = 0; l <= L; ++l) {
            gamma[l] += wq * p;
            const double pn = basis.zeta1[l] * x * p - basis.zeta0[l] * pm1;
            pm1 = p;
            p = pn;
        }
    }
    gamma.array() /= basis.sigma.head(L + 1).array();
    return gamma;
}

double eval_legendre_sum(const Eigen::VectorXd& coeffs, double x) {
    double acc = 0.0;
    double pm1 = 0.0, p = 1.0;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
        acc += coeffs[j] * p;
        const double pn = ((2.0 * j + 1.0) * x * p - j * pm1) / (j + 1.0);
        pm1 = p;
        p = pn;
    }
    return acc;
}

PotentialModel build_potential(const Expr& q, const SpectralBasis& basis, std::optional<int> L,
                               double tol) {
    PotentialModel model;
    model.ast = q;
    model.alpha = basis.alpha;
    model.L = L ? *L : choose_L(q, tol);
    model.legendre_coeffs = legendre_project(q, model.L);
    model.jacobi_coeffs = jacobi_reexpand(model.legendre_coeffs, basis);
    model.mean = model.legendre_coeffs[0];
    // cheap sup-norm estimate of the projection error on a Chebyshev grid
    double sup = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double x = std::cos(M_PI * i / 256.0);
        sup = std::max(sup, std::abs(q.eval(x) - eval_legendre_sum(model.legendre_coeffs, x)));
    }
    model.sup_error_estimate = sup;
    return model;
}

}  // namespace fslp
