#include <fslp/harness.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <limits>
#include <thread>

namespace fslp {

namespace {

constexpr double kErrorFloor = 1e-13;  // errors below kErrorFloor*|reference| are rounding noise

bool is_zero_potential(const std::string& text) { return text.empty() || text == "zero"; }

std::string now_string() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string make_key(double alpha, int N, const std::string& potential, int L, double trust) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "|a=%.17g|N=%d|L=%d|t=%.17g|", alpha, N, L, trust);
    return potential + buf;
}

void run_tasks(int jobs, std::vector<std::function<void()>>& tasks) {
    if (jobs <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    const int workers = static_cast<int>(std::min<std::size_t>(jobs, tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    tasks[i]();
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::optional<PotentialModel> make_model(const StudyConfig& cfg, double alpha, int needed_degree) {
    if (is_zero_potential(cfg.potential)) return std::nullopt;
    const Expr q = parse_expr(cfg.potential);
    const int L = cfg.L ? *cfg.L : choose_L(q, cfg.tol);
    const SpectralBasis small = make_basis(FractionalOrder(alpha),
                                           std::max(L + 1, needed_degree));
    return build_potential(q, small, L, cfg.tol);
}

std::shared_ptr<const EigenSolution> solve_shared(double alpha,
                                                  const std::optional<PotentialModel>& model,
                                                  int N, int k_max, double trust) {
    SolveRequest req{FractionalOrder(alpha), model, N, k_max, trust};
    return std::make_shared<const EigenSolution>(solve(req));
}

std::shared_ptr<const EigenSolution> reference_solution(ReferenceCache* cache, double alpha,
                                                        const std::optional<PotentialModel>& model,
                                                        const StudyConfig& cfg, int N_true,
                                                        int k_max) {
    const int L = model ? model->L : -1;
    const std::string key =
        make_key(alpha, N_true, is_zero_potential(cfg.potential) ? "zero" : cfg.potential, L,
                 cfg.trust_fraction);
    if (cache) {
        auto hit = cache->get(key);
        if (hit && hit->k_max >= k_max) return hit;
    }
    auto sol = solve_shared(alpha, model, N_true, k_max, cfg.trust_fraction);
    if (cache) cache->put(key, sol);
    return sol;
}

struct FitAccumulator {
    std::vector<double> xs, ys;
    bool dropped_floor = false;

    void add(double x, double y, bool below_floor) {
        if (below_floor || y <= 0.0) {
            dropped_floor = true;
            return;
        }
        xs.push_back(x);
        ys.push_back(y);
    }

    FitResult finish(double alpha, int k, double sign) const {
        FitResult fr;
        fr.alpha = alpha;
        fr.k = k;
        fr.points = static_cast<int>(xs.size());
        if (xs.size() < 3) {
            fr.exponent = std::numeric_limits<double>::quiet_NaN();
            fr.residual = std::numeric_limits<double>::quiet_NaN();
            fr.reliable = false;
            fr.floor_detected = dropped_floor;
            return fr;
        }
        const PowerFit fit = fit_power_law(xs, ys);
        fr.exponent = sign * fit.slope;
        fr.residual = fit.residual;
        fr.reliable = fit.residual <= 0.5;
        fr.floor_detected = dropped_floor;
        return fr;
    }
};

void validate_common(const StudyConfig& cfg) {
    if (cfg.alphas.empty()) throw std::invalid_argument("study: no alpha values given");
    for (const double a : cfg.alphas) FractionalOrder check(a);
    if (cfg.ks.empty()) throw std::invalid_argument("study: no eigenvalue indices given");
    for (const int k : cfg.ks)
        if (k < 0) throw std::invalid_argument("study: eigenvalue indices must be non-negative");
    if (cfg.Ns.empty()) throw std::invalid_argument("study: no matrix sizes given");
    if (!std::is_sorted(cfg.Ns.begin(), cfg.Ns.end()))
        throw std::invalid_argument("study: matrix sizes must be ascending");
}

int max_k(const StudyConfig& cfg) { return *std::max_element(cfg.ks.begin(), cfg.ks.end()); }

}  // namespace

PowerFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_power_law: length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_power_law: points must be positive");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log10(xs[i]);
        const double ly = std::log10(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = n * sxx - sx * sx;
    if (det <= 0.0 || !(det > 1e-30 * n * sxx)) throw DegenerateFit();
    PowerFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::log10(ys[i]) - (fit.slope * std::log10(xs[i]) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.points = static_cast<int>(xs.size());
    return fit;
}

std::shared_ptr<const EigenSolution> ReferenceCache::get(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
}

void ReferenceCache::put(const std::string& key, std::shared_ptr<const EigenSolution> sol) {
    std::lock_guard lock(mu_);
    map_[key] = std::move(sol);
}

StudyReport convergence_study(const StudyConfig& cfg, ReferenceCache* cache) {
    validate_common(cfg);
    const int kmax = max_k(cfg);
    if (kmax >= cfg.Ns.front())
        throw std::invalid_argument("convergence_study: max k must stay below the smallest N");
    const int N_true = cfg.N_true > 0 ? cfg.N_true : 2 * cfg.Ns.back();
    if (N_true < 2 * cfg.Ns.back())
        throw std::invalid_argument("convergence_study: N_true must be at least 2*max(N)");
    if (3 * kmax >= N_true)
        throw std::invalid_argument("convergence_study: max k outside the reference trust window");

    StudyReport rep;
    rep.study = "convergence";
    rep.alphas = cfg.alphas;
    rep.ks = cfg.ks;
    rep.Ns = cfg.Ns;
    rep.N_true = N_true;
    rep.potential = is_zero_potential(cfg.potential) ? "zero" : cfg.potential;
    rep.generated_at = now_string();

    const std::size_t na = cfg.alphas.size();
    const std::size_t nn = cfg.Ns.size();
    std::vector<std::optional<PotentialModel>> models(na);
    for (std::size_t ia = 0; ia < na; ++ia) models[ia] = make_model(cfg, cfg.alphas[ia], 0);
    if (models[0]) {
        rep.L_used = models[0]->L;
        rep.q_mean = models[0]->mean;
    }

    std::vector<std::shared_ptr<const EigenSolution>> sweep(na * nn);
    std::vector<std::shared_ptr<const EigenSolution>> refs(na);
    std::vector<std::function<void()>> tasks;
    for (std::size_t ia = 0; ia < na; ++ia) {
        tasks.push_back([&, ia] {
            refs[ia] = reference_solution(cache, cfg.alphas[ia], models[ia], cfg, N_true, kmax);
        });
        for (std::size_t in = 0; in < nn; ++in)
            tasks.push_back([&, ia, in] {
                sweep[ia * nn + in] = solve_shared(cfg.alphas[ia], models[ia], cfg.Ns[in], kmax,
                                                   cfg.trust_fraction);
            });
    }
    run_tasks(cfg.jobs, tasks);

    for (std::size_t ia = 0; ia < na; ++ia) {
        for (const int k : cfg.ks) {
            const double lref = refs[ia]->lambdas[k];
            FitAccumulator acc;
            for (std::size_t in = 0; in < nn; ++in) {
                const int N = cfg.Ns[in];
                const double lnum = sweep[ia * nn + in]->lambdas[k];
                ErrorSample s;
                s.alpha = cfg.alphas[ia];
                s.k = k;
                s.N = N;
                s.lambda_N = lnum;
                s.lambda_ref = lref;
                s.error = std::abs(lref - lnum);
                s.below_floor = s.error < kErrorFloor * std::abs(lref);
                rep.samples.push_back(s);
                if (N >= 4 * k) acc.add(N, s.error, s.below_floor);
            }
            if (k >= 5) rep.fits.push_back(acc.finish(cfg.alphas[ia], k, -1.0));
        }
    }
    return rep;
}

StudyReport index_growth_study(const StudyConfig& cfg, ReferenceCache* cache) {
    validate_common(cfg);
    if (cfg.Ns.size() != 1)
        throw std::invalid_argument("index_growth_study: expects a single matrix size");
    const int N = cfg.Ns.front();
    const int kmax = max_k(cfg);
    if (4 * kmax > N)
        throw std::invalid_argument("index_growth_study: max k must not exceed N/4");
    const int N_true = cfg.N_true > 0 ? cfg.N_true : 2 * N;
    if (N_true < 2 * N)
        throw std::invalid_argument("index_growth_study: N_true must be at least 2N");

    StudyReport rep;
    rep.study = "index-growth";
    rep.alphas = cfg.alphas;
    rep.ks = cfg.ks;
    rep.Ns = cfg.Ns;
    rep.N_true = N_true;
    rep.potential = is_zero_potential(cfg.potential) ? "zero" : cfg.potential;
    rep.generated_at = now_string();

    const std::size_t na = cfg.alphas.size();
    std::vector<std::optional<PotentialModel>> models(na);
    for (std::size_t ia = 0; ia < na; ++ia) models[ia] = make_model(cfg, cfg.alphas[ia], 0);
    if (models[0]) {
        rep.L_used = models[0]->L;
        rep.q_mean = models[0]->mean;
    }

    std::vector<std::shared_ptr<const EigenSolution>> sols(na), refs(na);
    std::vector<std::function<void()>> tasks;
    for (std::size_t ia = 0; ia < na; ++ia) {
        tasks.push_back([&, ia] {
            sols[ia] = solve_shared(cfg.alphas[ia], models[ia], N, kmax, cfg.trust_fraction);
        });
        tasks.push_back([&, ia] {
            refs[ia] = reference_solution(cache, cfg.alphas[ia], models[ia], cfg, N_true, kmax);
        });
    }
    run_tasks(cfg.jobs, tasks);

    for (std::size_t ia = 0; ia < na; ++ia) {
        FitAccumulator acc;
        for (const int k : cfg.ks) {
            const double lref = refs[ia]->lambdas[k];
            ErrorSample s;
            s.alpha = cfg.alphas[ia];
            s.k = k;
            s.N = N;
            s.lambda_N = sols[ia]->lambdas[k];
            s.lambda_ref = lref;
            s.error = std::abs(lref - s.lambda_N);
            s.below_floor = s.error < kErrorFloor * std::abs(lref);
            rep.samples.push_back(s);
            if (k >= 5) acc.add(k, s.error, s.below_floor);
        }
        rep.fits.push_back(acc.finish(cfg.alphas[ia], -1, +1.0));
    }
    return rep;
}

StudyReport mean_asymptote_study(const StudyConfig& cfg, ReferenceCache* cache) {
    validate_common(cfg);
    if (cfg.Ns.size() != 1)
        throw std::invalid_argument("mean_asymptote_study: expects a single matrix size");
    if (is_zero_potential(cfg.potential))
        throw std::invalid_argument("mean_asymptote_study: needs a non-zero potential");
    const int N = cfg.Ns.front();
    const int kmax = max_k(cfg);
    if (static_cast<double>(kmax) >= cfg.trust_fraction * N)
        throw std::invalid_argument("mean_asymptote_study: max k outside the trust window");

    StudyReport rep;
    rep.study = "mean-asymptote";
    rep.alphas = cfg.alphas;
    rep.ks = cfg.ks;
    rep.Ns = cfg.Ns;
    rep.N_true = N;
    rep.potential = cfg.potential;
    rep.generated_at = now_string();

    const std::size_t na = cfg.alphas.size();
    std::vector<std::optional<PotentialModel>> models(na);
    for (std::size_t ia = 0; ia < na; ++ia) models[ia] = make_model(cfg, cfg.alphas[ia], 0);
    rep.L_used = models[0]->L;
    rep.q_mean = models[0]->mean;
    const double qbar = rep.q_mean;

    std::vector<std::shared_ptr<const EigenSolution>> with_q(na), free_q(na);
    const std::optional<PotentialModel> none;
    StudyConfig zero_cfg = cfg;
    zero_cfg.potential = "zero";
    std::vector<std::function<void()>> tasks;
    for (std::size_t ia = 0; ia < na; ++ia) {
        tasks.push_back([&, ia] {
            with_q[ia] = solve_shared(cfg.alphas[ia], models[ia], N, kmax, cfg.trust_fraction);
        });
        tasks.push_back([&, ia] {
            free_q[ia] = reference_solution(cache, cfg.alphas[ia], none, zero_cfg, N, kmax);
        });
    }
    run_tasks(cfg.jobs, tasks);

    for (std::size_t ia = 0; ia < na; ++ia) {
        FitAccumulator acc;
        for (const int k : cfg.ks) {
            const double lzero = free_q[ia]->lambdas[k];
            ErrorSample s;
            s.alpha = cfg.alphas[ia];
            s.k = k;
            s.N = N;
            s.lambda_N = with_q[ia]->lambdas[k];
            s.lambda_ref = lzero + qbar;
            s.error = std::abs(s.lambda_N - s.lambda_ref);
            s.below_floor = s.error < kErrorFloor * std::abs(s.lambda_ref);
            rep.samples.push_back(s);
            if (k >= 5) acc.add(k, s.error, s.below_floor);
        }
        rep.fits.push_back(acc.finish(cfg.alphas[ia], -1, -1.0));
    }
    return rep;
}

StudyReport well_asymptote_study(const StudyConfig& cfg) {
    validate_common(cfg);
    if (!is_zero_potential(cfg.potential))
        throw std::invalid_argument("well_asymptote_study: the potential must be zero");
    if (cfg.Ns.size() != 1)
        throw std::invalid_argument("well_asymptote_study: expects a single matrix size");
    const int N = cfg.Ns.front();
    const int kmax = max_k(cfg);
    if (static_cast<double>(kmax) >= cfg.trust_fraction * N)
        throw std::invalid_argument("well_asymptote_study: max k outside the trust window");

    StudyReport rep;
    rep.study = "well-asymptote";
    rep.alphas = cfg.alphas;
    rep.ks = cfg.ks;
    rep.Ns = cfg.Ns;
    rep.N_true = N;
    rep.potential = "zero";
    rep.generated_at = now_string();

    const std::size_t na = cfg.alphas.size();
    std::vector<std::shared_ptr<const EigenSolution>> sols(na);
    const std::optional<PotentialModel> none;
    std::vector<std::function<void()>> tasks;
    for (std::size_t ia = 0; ia < na; ++ia)
        tasks.push_back([&, ia] {
            sols[ia] = solve_shared(cfg.alphas[ia], none, N, kmax, cfg.trust_fraction);
        });
    run_tasks(cfg.jobs, tasks);

    for (std::size_t ia = 0; ia < na; ++ia) {
        const double alpha = cfg.alphas[ia];
        FitAccumulator acc;
        for (const int k : cfg.ks) {
            const double asym =
                std::pow((k + 1) * M_PI / 2.0 - (2.0 - alpha) * M_PI / 8.0, alpha);
            ErrorSample s;
            s.alpha = alpha;
            s.k = k;
            s.N = N;
            s.lambda_N = sols[ia]->lambdas[k];
            s.lambda_ref = asym;
            s.error = std::abs(s.lambda_N - asym);
            s.below_floor = s.error < kErrorFloor * std::abs(asym);
            rep.samples.push_back(s);
            if (k >= 5) acc.add(k, s.error, s.below_floor);
        }
        rep.fits.push_back(acc.finish(alpha, -1, +1.0));
    }
    return rep;
}

StudyReport coeff_decay_study(const StudyConfig& cfg) {
    validate_common(cfg);
    if (cfg.Ns.size() != 1)
        throw std::invalid_argument("coeff_decay_study: expects a single matrix size");
    if (is_zero_potential(cfg.potential))
        throw std::invalid_argument("coeff_decay_study: needs a non-zero potential");
    const int N = cfg.Ns.front();
    const int kmax = max_k(cfg);
    if (static_cast<double>(kmax) >= cfg.trust_fraction * N)
        throw std::invalid_argument("coeff_decay_study: max k outside the trust window");

    StudyReport rep;
    rep.study = "coeff-decay";
    rep.alphas = cfg.alphas;
    rep.ks = cfg.ks;
    rep.Ns = cfg.Ns;
    rep.N_true = N;
    rep.potential = cfg.potential;
    rep.generated_at = now_string();

    const std::size_t na = cfg.alphas.size();
    std::vector<std::optional<PotentialModel>> models(na);
    for (std::size_t ia = 0; ia < na; ++ia) models[ia] = make_model(cfg, cfg.alphas[ia], 0);
    rep.L_used = models[0]->L;
    rep.q_mean = models[0]->mean;

    std::vector<std::shared_ptr<const EigenSolution>> sols(na);
    std::vector<std::function<void()>> tasks;
    for (std::size_t ia = 0; ia < na; ++ia)
        tasks.push_back([&, ia] {
            sols[ia] = solve_shared(cfg.alphas[ia], models[ia], N, kmax, cfg.trust_fraction);
        });
    run_tasks(cfg.jobs, tasks);

    for (std::size_t ia = 0; ia < na; ++ia) {
        for (const int k : cfg.ks) {
            const CoeffAsymptote asy = coefficient_asymptote(*sols[ia], k, *models[ia]);
            const double scale = asy.c.cwiseAbs().maxCoeff();
            FitAccumulator acc;
            for (int n = 0; n < N; ++n) {
                CoeffSample s;
                s.alpha = cfg.alphas[ia];
                s.k = k;
                s.n = n;
                s.c_abs = std::abs(asy.c[n]);
                s.c_hat_abs = std::abs(asy.c_hat[n]);
                rep.coeff_samples.push_back(s);
                // decay fit over the even-index tail
                if (n % 2 == 0 && n >= std::max(4 * k, 6) && n <= N / 2)
                    acc.add(n, s.c_abs, s.c_abs < kErrorFloor * scale);
            }
            rep.fits.push_back(acc.finish(cfg.alphas[ia], k, +1.0));
        }
    }
    return rep;
}

}  // namespace fslp
