#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include <fslp/assembly.hpp>
#include <fslp/jacobi.hpp>
#include <fslp/potential.hpp>

// Orchestrates basis construction, assembly and the generalized eigensolve;
// reconstructs eigenfunctions and exposes the closed-form coefficient
// asymptotes used by the decay diagnostics.

namespace fslp {

class ZeroSum : public std::runtime_error {
public:
    ZeroSum() : std::runtime_error("ZeroSum: coefficients sum to zero, normalization impossible") {}
};

struct SolveRequest {
    FractionalOrder alpha;
    std::optional<PotentialModel> potential;  ///< empty = zero potential (Q = 0)
    Eigen::Index N = 0;
    Eigen::Index k_max = 0;  ///< highest requested eigenvalue index, < N
    double trust_fraction = 1.0 / 3.0;
};

struct EigenSolution {
    Eigen::VectorXd lambdas;    ///< k_max+1 values, ascending
    Eigen::MatrixXd coeffs;     ///< N x (k_max+1), B-normalized, sign-fixed
    Eigen::VectorXd residuals;  ///< max-norm of (A+Q) xi - lambda B xi per pair
    std::vector<bool> trusted;  ///< k < trust_fraction * N
    double alpha = 0.0;
    Eigen::Index N = 0;
    Eigen::Index k_max = 0;
    double trust_fraction = 0.0;
    std::optional<PotentialModel> potential;
    std::uint64_t potential_fingerprint = 0;
    std::shared_ptr<const SpectralBasis> basis;
};

/// Truncated eigenfunction y(x) = (1-x^2)^(alpha/2) sum_n xi_n P_n(x);
/// exactly zero for |x| >= 1.
struct Eigenfunction {
    double alpha = 0.0;
    Eigen::VectorXd coeffs;
    std::shared_ptr<const SpectralBasis> basis;
    double operator()(double x) const;
};

/// Diagnostics from the closed-form coefficient estimates: the boundary
/// amplitudes nu and the estimated coefficients c_hat alongside the
/// normalized computed ones (sum c_n = 1).
struct CoeffAsymptote {
    double nu0 = 0.0, nu1 = 0.0, nu2 = 0.0;
    Eigen::VectorXd c;      ///< normalized coefficients of eigenfunction k
    Eigen::VectorXd c_hat;  ///< closed-form estimates, same length
};

EigenSolution solve(const SolveRequest& req);
EigenSolution solve(const SolveRequest& req, std::shared_ptr<const SpectralBasis> basis);

Eigenfunction eigenfunction(const EigenSolution& sol, Eigen::Index k);

CoeffAsymptote coefficient_asymptote(const EigenSolution& sol, Eigen::Index k,
                                     const PotentialModel& potential);

}  // namespace fslp
