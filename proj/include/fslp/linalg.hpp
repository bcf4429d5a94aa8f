#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

// Dense symmetric linear algebra for the generalized eigenproblem and for
// Golub-Welsch quadrature. Matrices are logically symmetric; only the lower
// triangle of an input is read. All operations leave their inputs untouched,
// so independent solves may run concurrently.

namespace fslp {

struct SymTridiag {
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag;  ///< one entry shorter than diag
};

/// Eigenvalues ascending; column k of `vectors` pairs with values[k].
/// Vectors are orthonormal for the standard problem and B-orthonormal
/// (x^T B x = 1) for the generalized one.
struct EigenPairs {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  ///< empty when vectors were not requested
};

class NotPositiveDefinite : public std::runtime_error {
public:
    explicit NotPositiveDefinite(Eigen::Index index);
    Eigen::Index index() const { return index_; }

private:
    Eigen::Index index_;
};

class NoConvergence : public std::runtime_error {
public:
    NoConvergence() : std::runtime_error("NoConvergence: eigeniteration did not converge") {}
};

/// Lower-triangular L with L L^T = B. Throws NotPositiveDefinite with the
/// index of the first non-positive pivot.
Eigen::MatrixXd cholesky(const Eigen::MatrixXd& B);

/// Householder reduction Q^T S Q = T with Q orthogonal, T tridiagonal.
std::pair<SymTridiag, Eigen::MatrixXd> tridiagonalize(const Eigen::MatrixXd& S);

/// Full spectrum of a symmetric tridiagonal matrix.
EigenPairs tridiag_eig(const SymTridiag& T, bool want_vectors);

/// Solve M x = lambda B x for symmetric M and s.p.d. B via B = L L^T,
/// a standard solve of L^-1 M L^-T and the back-transform x = L^-T z.
EigenPairs gen_sym_eig(const Eigen::MatrixXd& M, const Eigen::MatrixXd& B);

}  // namespace fslp
