#include <fslp/assembly.hpp>

#include <cmath>
#include <iostream>

#include <fslp/quadrature.hpp>
#include <fslp/special.hpp>

namespace fslp {

namespace {

// b_{mn} = <P_m, P_n>_alpha by the gamma-function closed form, accumulated
// in log space. Exactly zero when m+n is odd or when a reciprocal gamma
// sits on a pole (which at alpha = 2 produces the banded structure).
double mass_entry_gamma(double alpha, Eigen::Index m, Eigen::Index n) {
    if ((m + n) % 2 != 0) return 0.0;
    const double u = (alpha - m + n) / 2.0 + 1.0;
    const double v = (alpha + m - n) / 2.0 + 1.0;
    const auto ru = detail::log_rgamma(u);
    const auto rv = detail::log_rgamma(v);
    if (ru.sign == 0 || rv.sign == 0) return 0.0;
    const double log_abs = ln_gamma(alpha + 1.0) + ln_gamma((m + n + 1) / 2.0) +
                           2.0 * ln_gamma(alpha / 2.0 + 1.0) + ru.log_abs + rv.log_abs -
                           ln_gamma((m + n + 3) / 2.0 + alpha);
    const int parity = (((m - n) / 2) % 2 == 0) ? 1 : -1;
    return parity * ru.sign * rv.sign * std::exp(log_abs);
}

// Hadamard factorization b_{mn} = theta * h_{m+n} * t_{|m-n|}; h and t are
// tabulated for even indices up to max_sum by their ratio recurrences,
// which sidesteps gamma overflow. Valid for alpha in (0,2); at alpha = 2
// entries fall back to the closed form above.
struct MassKernel {
    double alpha = 0.0;
    bool gamma_form = false;
    double theta = 0.0;
    Eigen::VectorXd h;  // index m+n (even entries filled)
    Eigen::VectorXd t;  // index |m-n| (even entries filled)

    double entry(Eigen::Index m, Eigen::Index n) const {
        if ((m + n) % 2 != 0) return 0.0;
        if (gamma_form) return mass_entry_gamma(alpha, m, n);
        return theta * h[m + n] * t[std::abs(m - n)];
    }
};

MassKernel make_mass_kernel(const SpectralBasis& basis, Eigen::Index max_sum) {
    MassKernel k;
    k.alpha = basis.alpha;
    if (basis.alpha == 2.0) {
        k.gamma_form = true;
        return k;
    }
    const double alpha = basis.alpha;
    k.theta = -std::sin(M_PI * alpha / 2.0) *
              std::exp(ln_gamma(alpha + 1.0) + 2.0 * ln_gamma(alpha / 2.0 + 1.0)) / M_PI;
    k.h = Eigen::VectorXd::Zero(max_sum + 1);
    k.t = Eigen::VectorXd::Zero(max_sum + 1);
    k.h[0] = std::exp(ln_gamma(0.5) - ln_gamma(1.5 + alpha));
    // Gamma(-alpha/2) via Gamma(1-alpha/2)/(-alpha/2), finite for alpha in (0,2)
    k.t[0] = std::exp(ln_gamma(1.0 - alpha / 2.0) - ln_gamma(alpha / 2.0 + 1.0)) / (-alpha / 2.0);
    for (Eigen::Index s = 2; s <= max_sum; s += 2) {
        k.h[s] = k.h[s - 2] * (s - 1.0) / (s + 1.0 + 2.0 * alpha);
        k.t[s] = k.t[s - 2] * (s - alpha - 2.0) / (s + alpha);
    }
    return k;
}

std::uint64_t fnv1a64(const Eigen::VectorXd& v) {
    std::uint64_t hash = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(v.data());
    for (Eigen::Index i = 0; i < v.size() * static_cast<Eigen::Index>(sizeof(double)); ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace

Eigen::VectorXd assemble_A(const SpectralBasis& basis, Eigen::Index N) {
    if (N < 1 || N > basis.n_max) throw BasisTooSmall();
    return basis.a.head(N);
}

Eigen::MatrixXd assemble_B(const SpectralBasis& basis, Eigen::Index N) {
    if (N < 1 || N > basis.n_max) throw BasisTooSmall();
    const MassKernel kernel = make_mass_kernel(basis, 2 * (N - 1));
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index m = 0; m < N; ++m)
        for (Eigen::Index n = m; n < N; ++n) {
            const double v = kernel.entry(m, n);
            B(m, n) = v;
            B(n, m) = v;
        }
    return B;
}

Eigen::MatrixXd assemble_B_gamma_form(const SpectralBasis& basis, Eigen::Index N) {
    if (N < 1 || N > basis.n_max) throw BasisTooSmall();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index m = 0; m < N; ++m)
        for (Eigen::Index n = m; n < N; ++n) {
            const double v = mass_entry_gamma(basis.alpha, m, n);
            B(m, n) = v;
            B(n, m) = v;
        }
    return B;
}

Eigen::VectorXd mass_column(const SpectralBasis& basis, Eigen::Index col, Eigen::Index rows) {
    const MassKernel kernel = make_mass_kernel(basis, rows - 1 + col);
    Eigen::VectorXd out(rows);
    for (Eigen::Index m = 0; m < rows; ++m) out[m] = kernel.entry(m, col);
    return out;
}

Eigen::MatrixXd assemble_Q(const Eigen::VectorXd& gamma, const SpectralBasis& basis,
                           Eigen::Index N, double* symmetry_defect) {
    if (N < 1) throw std::invalid_argument("assemble_Q: order must be positive");
    if (basis.n_max < 2 * N + 1) throw BasisTooSmall();
    const Eigen::Index L = gamma.size() - 1;
    if (L >= 2 * N) throw std::invalid_argument("assemble_Q: gamma degree must stay below 2N");
    if (symmetry_defect) *symmetry_defect = 0.0;
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
    if (gamma.size() == 0 || gamma.cwiseAbs().maxCoeff() == 0.0) return Q;

    const Eigen::Index S = 2 * N;  // column 0 rows 0..S
    const MassKernel kernel = make_mass_kernel(basis, S + std::max<Eigen::Index>(L, 0));

    Eigen::VectorXd prev = Eigen::VectorXd::Zero(S + 1);  // q_{n-1}
    Eigen::VectorXd cur(S + 1);                           // q_n
    for (Eigen::Index m = 0; m <= S; ++m) {
        double acc = 0.0;
        for (Eigen::Index l = ((m % 2 == 0) ? 0 : 1); l <= L; l += 2)
            acc += gamma[l] * kernel.entry(m, l);
        cur[m] = acc;
    }

    Eigen::VectorXd next(S + 1);
    Eigen::Index valid = S + 1;  // rows 0..valid-1 of `cur` hold exact values
    for (Eigen::Index n = 0; n < N; ++n) {
        Q.col(n) = cur.head(N);
        if (n + 1 == N) break;
        // q_{n+1} = zeta1_n * H q_n - zeta0_n * q_{n-1}; row m of H q_n needs
        // q_n[m+1], so one trailing row drops out per column.
        const double z1 = basis.zeta1[n];
        const double z0 = basis.zeta0[n];
        for (Eigen::Index m = 0; m + 1 < valid; ++m) {
            const double below = (m > 0) ? basis.zeta0[m] / basis.zeta1[m] * cur[m - 1] : 0.0;
            const double above = cur[m + 1] / basis.zeta1[m];
            next[m] = z1 * (below + above) - z0 * prev[m];
        }
        --valid;
        next[valid] = 0.0;
        std::swap(prev, cur);
        std::swap(cur, next);
    }

    const double scale = Q.cwiseAbs().maxCoeff();
    double defect = 0.0;
    if (scale > 0.0) defect = (Q - Q.transpose()).cwiseAbs().maxCoeff() / scale;
    if (symmetry_defect) *symmetry_defect = defect;
    Q = ((Q + Q.transpose()) / 2.0).eval();
    return Q;
}

Eigen::MatrixXd assemble_Q_quadrature_oracle(const Expr& q, const SpectralBasis& basis,
                                             Eigen::Index N, int n_quad) {
    if (N < 1 || N > basis.n_max) throw BasisTooSmall();
    const QuadratureRule rule = gauss_jacobi(basis.alpha, basis.alpha, n_quad);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double wq = rule.weights[i] * q.eval(x);
        Eigen::VectorXd p(N);
        double pm1 = 0.0, pv = 1.0;
        for (Eigen::Index l = 0; l < N; ++l) {
            p[l] = pv;
            const double pn = basis.zeta1[l] * x * pv - basis.zeta0[l] * pm1;
            pm1 = pv;
            pv = pn;
        }
        Q.selfadjointView<Eigen::Lower>().rankUpdate(p, wq);
    }
    return Q.selfadjointView<Eigen::Lower>();
}

AssembledSystem assemble(const SpectralBasis& basis, const PotentialModel* potential,
                         Eigen::Index N) {
    AssembledSystem sys;
    sys.alpha = basis.alpha;
    sys.N = N;
    sys.A = assemble_A(basis, N);
    sys.B = assemble_B(basis, N);
    if (potential != nullptr) {
        sys.Q = assemble_Q(potential->jacobi_coeffs, basis, N, &sys.q_symmetry_defect);
        sys.potential_fingerprint = fnv1a64(potential->jacobi_coeffs);
        if (sys.q_symmetry_defect > 1e-8)
            std::cerr << "warning: potential matrix symmetry defect "
                      << sys.q_symmetry_defect << " exceeds 1e-8\n";
    } else {
        sys.Q = Eigen::MatrixXd::Zero(N, N);
    }
    return sys;
}

}  // namespace fslp
