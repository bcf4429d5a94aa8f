#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

#include <fslp/expr.hpp>
#include <fslp/jacobi.hpp>
#include <fslp/potential.hpp>

// Assembly of the generalized eigenproblem (A + Q) xi = lambda B xi:
// the diagonal stiffness A, the mass matrix B (Gram matrix of the basis
// under (1-x^2)^alpha) and the potential matrix Q.
//
// B entries are products of gamma ratios, filled by ratio recurrences for
// alpha in (0,2). At alpha = 2 that product degenerates (0 * inf) and B
// becomes banded, so a pole-safe closed form evaluated in log space is used
// instead; the same closed form doubles as a cross-check route at any alpha.

namespace fslp {

class BasisTooSmall : public std::runtime_error {
public:
    BasisTooSmall() : std::runtime_error("BasisTooSmall: basis tables must extend to index 2N") {}
};

struct AssembledSystem {
    double alpha = 0.0;
    Eigen::Index N = 0;
    Eigen::VectorXd A;  ///< stiffness diagonal
    Eigen::MatrixXd B;  ///< mass matrix, s.p.d.
    Eigen::MatrixXd Q;  ///< potential matrix (zero for the zero potential)
    std::uint64_t potential_fingerprint = 0;  ///< hash of the gamma coefficients
    double q_symmetry_defect = 0.0;  ///< pre-symmetrization defect of Q, relative to max|Q|
};

Eigen::VectorXd assemble_A(const SpectralBasis& basis, Eigen::Index N);

/// Mass matrix by the production route (ratio recurrences for alpha < 2,
/// pole-safe closed form at alpha = 2).
Eigen::MatrixXd assemble_B(const SpectralBasis& basis, Eigen::Index N);

/// Mass matrix by the gamma-function closed form at any alpha (log-space,
/// pole-safe). Cross-check route for assemble_B.
Eigen::MatrixXd assemble_B_gamma_form(const SpectralBasis& basis, Eigen::Index N);

/// One column of the (possibly rectangular) mass matrix: b_{m,col} for
/// m = 0..rows-1.
Eigen::VectorXd mass_column(const SpectralBasis& basis, Eigen::Index col, Eigen::Index rows);

/// Potential matrix from the Jacobi coefficients of q_L: column 0 is the
/// exact finite sum over mass columns, the remaining columns follow from the
/// vector recurrence driven by the tridiagonal multiplication-by-x operator,
/// losing one valid row per column. Requires basis.n_max >= 2N+1 and
/// gamma.size()-1 < 2N. If `symmetry_defect` is given it receives the
/// pre-symmetrization asymmetry relative to max|Q|.
Eigen::MatrixXd assemble_Q(const Eigen::VectorXd& gamma, const SpectralBasis& basis,
                           Eigen::Index N, double* symmetry_defect = nullptr);

/// Direct Gauss-Jacobi quadrature of <P_m, q P_n> with weight (1-x^2)^alpha;
/// independent oracle for assemble_Q.
Eigen::MatrixXd assemble_Q_quadrature_oracle(const Expr& q, const SpectralBasis& basis,
                                             Eigen::Index N, int n_quad);

/// Assemble the full system; pass potential = nullptr for the zero potential.
AssembledSystem assemble(const SpectralBasis& basis, const PotentialModel* potential,
                         Eigen::Index N);

}  // namespace fslp
