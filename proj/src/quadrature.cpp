#include <fslp/quadrature.hpp>

#include <string>

#include <fslp/linalg.hpp>
#include <fslp/special.hpp>

namespace fslp {

NonFiniteSample::NonFiniteSample(double node)
    : std::runtime_error("NonFiniteSample: integrand not finite at node " + std::to_string(node)),
      node_(node) {}

QuadratureRule gauss_jacobi(double a, double b, int n) {
    if (!(a > -1.0) || !(b > -1.0))
        throw std::domain_error("gauss_jacobi: weight exponents must exceed -1");
    if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");

    // Monic-recurrence coefficients for the Jacobi weight. The k = 0 and
    // k = 1 entries use their cancelled forms, which stay finite as
    // a + b approaches -1 and 0.
    SymTridiag T;
    T.diag.resize(n);
    T.offdiag.resize(n - 1);
    const double ab = a + b;
    T.diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        T.diag[k] = (b * b - a * a) / (t * (t + 2.0));
    }
    if (n > 1) T.offdiag[0] = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
        const double t = 2.0 * k + ab;
        T.offdiag[k - 1] =
            std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t * t - 1.0)));
    }

    const double moment0 = std::exp((ab + 1.0) * M_LN2 + ln_beta(a + 1.0, b + 1.0));

    QuadratureRule rule;
    rule.exp_a = a;
    rule.exp_b = b;
    if (n == 1) {
        rule.nodes = T.diag;
        rule.weights = Eigen::VectorXd::Constant(1, moment0);
        return rule;
    }
    const EigenPairs ep = tridiag_eig(T, /*want_vectors=*/true);
    rule.nodes = ep.values;
    rule.weights = moment0 * ep.vectors.row(0).transpose().array().square();
    return rule;
}

}  // namespace fslp
