#include <fslp/jacobi.hpp>

#include <cmath>

#include <fslp/special.hpp>

namespace fslp {

SpectralBasis make_basis(FractionalOrder order, Eigen::Index n_max) {
    if (n_max < 1) throw std::invalid_argument("make_basis: n_max must be >= 1");
    const double alpha = order.value();

    SpectralBasis b;
    b.alpha = alpha;
    b.n_max = n_max;
    b.zeta1.resize(n_max);
    b.zeta0.resize(n_max);
    b.sigma.resize(n_max);
    b.mu.resize(n_max);
    b.a.resize(n_max);

    for (Eigen::Index n = 0; n < n_max; ++n) {
        b.zeta1[n] = (2.0 * n + 1.0 + alpha) / (n + 1.0 + alpha);
        b.zeta0[n] = static_cast<double>(n) / (n + 1.0 + alpha);
    }

    // Ratio recurrences seeded by the n = 0 closed forms; this avoids per-n
    // gamma evaluations and cannot overflow.
    const double lg_half = ln_gamma(alpha / 2.0 + 1.0);
    b.sigma[0] = std::exp((alpha + 1.0) * M_LN2 + 2.0 * lg_half - ln_gamma(alpha + 1.0)) /
                 (alpha + 1.0);
    b.mu[0] = std::exp(ln_gamma(alpha + 1.0));
    b.a[0] = b.mu[0] * b.sigma[0];
    for (Eigen::Index n = 0; n + 1 < n_max; ++n) {
        b.sigma[n + 1] = b.sigma[n] * ((n + 1.0) * (2.0 * n + alpha + 1.0)) /
                         ((2.0 * n + alpha + 3.0) * (n + alpha + 1.0));
        b.mu[n + 1] = b.mu[n] * (n + alpha + 1.0) / (n + 1.0);
        b.a[n + 1] = b.a[n] * (2.0 * n + alpha + 1.0) / (2.0 * n + alpha + 3.0);
    }
    return b;
}

double eval_jacobi(const SpectralBasis& basis, Eigen::Index n, double x) {
    if (n < 0 || n >= basis.n_max) throw std::out_of_range("eval_jacobi: index out of range");
    double pm1 = 0.0;
    double p = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pn = basis.zeta1[i] * x * p - basis.zeta0[i] * pm1;
        pm1 = p;
        p = pn;
    }
    return p;
}

Eigen::VectorXd eval_jacobi_all(const SpectralBasis& basis, double x) {
    Eigen::VectorXd out(basis.n_max);
    double pm1 = 0.0;
    double p = 1.0;
    for (Eigen::Index i = 0; i < basis.n_max; ++i) {
        out[i] = p;
        const double pn = basis.zeta1[i] * x * p - basis.zeta0[i] * pm1;
        pm1 = p;
        p = pn;
    }
    return out;
}

double mu(FractionalOrder order, Eigen::Index n) {
    if (n < 0) throw std::out_of_range("mu: index out of range");
    const double alpha = order.value();
    return std::exp(ln_gamma(n + alpha + 1.0) - ln_gamma(n + 1.0));
}

double stiffness_a(FractionalOrder order, Eigen::Index m) {
    if (m < 0) throw std::out_of_range("stiffness_a: index out of range");
    const double alpha = order.value();
    return std::exp((alpha + 1.0) * M_LN2 + 2.0 * ln_gamma(alpha / 2.0 + 1.0)) /
           (2.0 * m + alpha + 1.0);
}

}  // namespace fslp
