#include <fslp/linalg.hpp>

#include <cmath>
#include <string>

namespace fslp {

NotPositiveDefinite::NotPositiveDefinite(Eigen::Index index)
    : std::runtime_error("NotPositiveDefinite: non-positive pivot at index " +
                         std::to_string(index)),
      index_(index) {}

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& B) {
    if (B.rows() != B.cols()) throw std::invalid_argument("cholesky: matrix must be square");
    const Eigen::Index n = B.rows();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double d = B(j, j) - L.row(j).head(j).squaredNorm();
        if (!(d > 0.0)) throw NotPositiveDefinite(j);
        L(j, j) = std::sqrt(d);
        const Eigen::Index m = n - j - 1;
        if (m > 0)
            L.col(j).tail(m) =
                (B.col(j).tail(m) - L.bottomLeftCorner(m, j) * L.row(j).head(j).transpose()) /
                L(j, j);
    }
    return L;
}

std::pair<SymTridiag, Eigen::MatrixXd> tridiagonalize(const Eigen::MatrixXd& S) {
    if (S.rows() != S.cols()) throw std::invalid_argument("tridiagonalize: matrix must be square");
    Eigen::MatrixXd full = S.selfadjointView<Eigen::Lower>();
    Eigen::Tridiagonalization<Eigen::MatrixXd> td(full);
    SymTridiag T{td.diagonal(), td.subDiagonal()};
    return {std::move(T), td.matrixQ()};
}

EigenPairs tridiag_eig(const SymTridiag& T, bool want_vectors) {
    if (T.diag.size() < 1) throw std::invalid_argument("tridiag_eig: empty matrix");
    if (T.offdiag.size() != T.diag.size() - 1)
        throw std::invalid_argument("tridiag_eig: offdiag must have size n-1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(
        T.diag, T.offdiag,
        want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NoConvergence();
    EigenPairs out;
    out.values = es.eigenvalues();
    if (want_vectors) out.vectors = es.eigenvectors();
    return out;
}

EigenPairs gen_sym_eig(const Eigen::MatrixXd& M, const Eigen::MatrixXd& B) {
    if (M.rows() != M.cols() || B.rows() != B.cols() || M.rows() != B.rows())
        throw std::invalid_argument("gen_sym_eig: operands must be square and of equal order");
    const Eigen::MatrixXd L = cholesky(B);
    const Eigen::MatrixXd Mfull = M.selfadjointView<Eigen::Lower>();
    // C = L^-1 M L^-T, kept symmetric by construction of the two solves
    Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(Mfull);
    C = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd(C.transpose()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success) throw NoConvergence();
    EigenPairs out;
    out.values = es.eigenvalues();
    out.vectors = L.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());
    return out;
}

}  // namespace fslp
