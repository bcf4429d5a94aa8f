#pragma once

#include <Eigen/Dense>
#include <stdexcept>

// Symmetric-weight Jacobi polynomial kernel: the family orthogonal under
// (1-x^2)^(alpha/2), normalized so that P_n(1) = 1, together with the
// per-basis scalars used by matrix assembly (squared norms sigma_n,
// spectral multipliers mu_n, stiffness diagonal a_n).

namespace fslp {

/// Exponent of the fractional Laplacian; valid range (0, 2].
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || !(alpha <= 2.0))
            throw std::domain_error("alpha must lie in (0,2]");
    }
    double value() const { return alpha_; }

private:
    double alpha_;
};

/// Immutable per-(alpha, n_max) tables. Build once with make_basis; every
/// operation reads them concurrently without synchronization.
struct SpectralBasis {
    double alpha = 0.0;
    Eigen::Index n_max = 0;  ///< indices 0 .. n_max-1 are tabulated
    Eigen::VectorXd zeta1;   ///< (2n+1+alpha)/(n+1+alpha)
    Eigen::VectorXd zeta0;   ///< n/(n+1+alpha)
    Eigen::VectorXd sigma;   ///< squared norms under (1-x^2)^(alpha/2)
    Eigen::VectorXd mu;      ///< Gamma(n+alpha+1)/Gamma(n+1)
    Eigen::VectorXd a;       ///< stiffness diagonal mu_n * sigma_n
};

SpectralBasis make_basis(FractionalOrder alpha, Eigen::Index n_max);

/// P_n(x) by the forward three-term recurrence. Throws std::out_of_range
/// unless 0 <= n < basis.n_max.
double eval_jacobi(const SpectralBasis& basis, Eigen::Index n, double x);

/// All of P_0(x) .. P_{n_max-1}(x) in one sweep.
Eigen::VectorXd eval_jacobi_all(const SpectralBasis& basis, double x);

/// Spectral multiplier Gamma(n+alpha+1)/Gamma(n+1), evaluated in log space.
double mu(FractionalOrder alpha, Eigen::Index n);

/// Stiffness diagonal entry 2^(alpha+1) Gamma^2(alpha/2+1) / (2m+alpha+1).
double stiffness_a(FractionalOrder alpha, Eigen::Index m);

}  // namespace fslp
