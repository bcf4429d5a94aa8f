#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

// Gauss rules on (-1,1) for the Jacobi weight (1-x)^a (1+x)^b, built by
// Golub-Welsch from the analytic three-term recurrence. Rules are immutable
// after construction and integrate() is pure.

namespace fslp {

struct QuadratureRule {
    Eigen::VectorXd nodes;    ///< strictly increasing, inside (-1,1)
    Eigen::VectorXd weights;  ///< all positive
    double exp_a = 0.0;       ///< exponent of (1-x)
    double exp_b = 0.0;       ///< exponent of (1+x)
};

class NonFiniteSample : public std::runtime_error {
public:
    explicit NonFiniteSample(double node);
    double node() const { return node_; }

private:
    double node_;
};

/// n-point rule exact for polynomials of degree <= 2n-1 against
/// (1-x)^a (1+x)^b; requires a > -1, b > -1, n >= 1.
QuadratureRule gauss_jacobi(double a, double b, int n);

inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(0.0, 0.0, n); }

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double v = f(rule.nodes[i]);
        if (!std::isfinite(v)) throw NonFiniteSample(rule.nodes[i]);
        acc += rule.weights[i] * v;
    }
    return acc;
}

}  // namespace fslp
