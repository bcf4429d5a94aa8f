#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <fslp/solver.hpp>

// Desk-scale experiment harness: convergence-order estimation against a
// high-N reference, error growth versus the eigenvalue index, the
// mean-value and infinite-well asymptotic laws, and coefficient-decay
// diagnostics. Everything is deterministic: identical configurations give
// bitwise-identical reports regardless of the job count.

namespace fslp {

class DegenerateFit : public std::runtime_error {
public:
    DegenerateFit() : std::runtime_error("DegenerateFit: abscissae are all equal") {}
};

struct PowerFit {
    double slope = 0.0;      ///< of log10 y against log10 x
    double intercept = 0.0;
    double residual = 0.0;   ///< root-mean-square misfit in log10 units
    int points = 0;
};

/// Least-squares line through (log10 x, log10 y); needs >= 3 positive points.
PowerFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

struct StudyConfig {
    std::vector<double> alphas;
    std::string potential;  ///< expression text; empty or "zero" = zero potential
    std::vector<int> ks;
    std::vector<int> Ns;    ///< ascending; studies at fixed order expect one entry
    int N_true = 0;         ///< 0 = 2 * max(Ns)
    std::optional<int> L;   ///< projection degree; unset = choose_L(tol)
    double tol = 1e-15;
    double trust_fraction = 1.0 / 3.0;
    int jobs = 1;           ///< parallel fan-out of independent solves
};

struct ErrorSample {
    double alpha = 0.0;
    int k = 0;
    int N = 0;
    double lambda_N = 0.0;    ///< eigenvalue under study
    double lambda_ref = 0.0;  ///< reference (high-N value, asymptote, ...)
    double error = 0.0;
    bool below_floor = false;  ///< under 1e-13 * |lambda_ref|, excluded from fits
};

struct FitResult {
    double alpha = 0.0;
    int k = -1;  ///< -1 when the fit runs across k
    double exponent = 0.0;
    double residual = 0.0;
    int points = 0;
    bool reliable = false;       ///< residual <= 0.5
    bool floor_detected = false; ///< too few points above the rounding floor
};

struct CoeffSample {
    double alpha = 0.0;
    int k = 0;
    int n = 0;
    double c_abs = 0.0;
    double c_hat_abs = 0.0;
};

struct StudyReport {
    std::string study;
    std::vector<ErrorSample> samples;
    std::vector<FitResult> fits;
    std::vector<CoeffSample> coeff_samples;  ///< coeff-decay study only
    // configuration echo / metadata
    std::vector<double> alphas;
    std::vector<int> ks, Ns;
    int N_true = 0;
    int L_used = -1;       ///< -1 for the zero potential
    double q_mean = 0.0;
    std::string potential;
    std::string generated_at;  ///< wall-clock stamp, never serialized
};

/// Shared store of reference solutions keyed by (alpha, N, potential, L);
/// safe for concurrent use.
class ReferenceCache {
public:
    std::shared_ptr<const EigenSolution> get(const std::string& key) const;
    void put(const std::string& key, std::shared_ptr<const EigenSolution> sol);

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const EigenSolution>> map_;
};

/// Error against the N_true reference for each (alpha, k) over the N sweep;
/// `exponent` is the convergence order p (sign-flipped slope). Only sizes
/// with N >= 4k enter a fit, and fits are made for k >= 5.
StudyReport convergence_study(const StudyConfig& cfg, ReferenceCache* cache = nullptr);

/// Error growth versus index at fixed N; `exponent` is r (the raw slope).
StudyReport index_growth_study(const StudyConfig& cfg, ReferenceCache* cache = nullptr);

/// Decay of |lambda_k(q) - lambda_k(0) - q_mean| versus k at fixed N;
/// `exponent` is eta (sign-flipped slope).
StudyReport mean_asymptote_study(const StudyConfig& cfg, ReferenceCache* cache = nullptr);

/// Residual against the closed-form eigenvalue law for the zero potential;
/// `exponent` is the raw slope (negative when the remainder decays).
StudyReport well_asymptote_study(const StudyConfig& cfg);

/// Computed |c_n| against the closed-form estimates |c_hat_n|; one decay
/// fit per (alpha, k) over the even-index tail, `exponent` is the raw slope.
StudyReport coeff_decay_study(const StudyConfig& cfg);

}  // namespace fslp
