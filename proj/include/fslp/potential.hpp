#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

#include <fslp/expr.hpp>
#include <fslp/jacobi.hpp>

// The solver never works with a raw potential q: it projects q onto the
// degree-L Fourier-Legendre partial sum q_L (which preserves the mean value
// exactly) and re-expands q_L in the P^(alpha/2) basis, after which matrix
// assembly is exact finite arithmetic.

namespace fslp {

class NoDecay : public std::runtime_error {
public:
    NoDecay() : std::runtime_error("NoDecay: Legendre coefficients do not reach the tolerance by degree 128") {}
};

struct PotentialModel {
    Expr ast;
    double alpha = 0.0;                  ///< basis exponent the gamma coefficients refer to
    int L = 0;                           ///< truncation degree
    Eigen::VectorXd legendre_coeffs;     ///< q-tilde, size L+1
    Eigen::VectorXd jacobi_coeffs;       ///< gamma, size L+1
    double mean = 0.0;                   ///< q-bar == legendre_coeffs[0]
    double sup_error_estimate = 0.0;     ///< max |q - q_L| over a Chebyshev grid
};

/// Legendre partial-sum coefficients q_j = (2j+1)/2 <q, P_j>, j = 0..L,
/// by Gauss-Legendre quadrature with degree of precision >= max(2L+1, 11).
Eigen::VectorXd legendre_project(const Expr& q, int L);

/// Smallest L <= 128 with max(|q_{L-1}|, |q_L|) <= tol * max_j |q_j|.
int choose_L(const Expr& q, double tol);

/// Re-expand the Legendre sum in the P^(alpha/2) basis:
/// gamma_l = <q_L, P_l>_{alpha/2} / sigma_l. Exact for polynomials.
Eigen::VectorXd jacobi_reexpand(const Eigen::VectorXd& legendre_coeffs, const SpectralBasis& basis);

/// Evaluate sum_j coeffs[j] P_j^(0)(x).
double eval_legendre_sum(const Eigen::VectorXd& coeffs, double x);

/// Project q and re-expand against `basis`; L is chosen by choose_L(q, tol)
/// unless given.
PotentialModel build_potential(const Expr& q, const SpectralBasis& basis,
                               std::optional<int> L = std::nullopt, double tol = 1e-15);

}  // namespace fslp
