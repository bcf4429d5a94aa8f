#include <fslp/report.hpp>

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace fslp {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;  // NaN/inf are not representable in JSON
}

ordered_json solve_meta(const EigenSolution& sol) {
    ordered_json meta;
    meta["alpha"] = sol.alpha;
    meta["N"] = sol.N;
    meta["L"] = sol.potential ? ordered_json(sol.potential->L) : ordered_json(nullptr);
    meta["N_true"] = nullptr;
    meta["q_bar"] = sol.potential ? ordered_json(sol.potential->mean) : ordered_json(0.0);
    meta["version"] = std::string(kVersion);
    return meta;
}

ordered_json study_meta(const StudyReport& rep) {
    ordered_json meta;
    meta["alpha"] = rep.alphas;
    meta["N"] = rep.Ns;
    meta["L"] = rep.L_used >= 0 ? ordered_json(rep.L_used) : ordered_json(nullptr);
    meta["N_true"] = rep.N_true;
    meta["q_bar"] = rep.q_mean;
    meta["version"] = std::string(kVersion);
    meta["study"] = rep.study;
    meta["potential"] = rep.potential;
    meta["k"] = rep.ks;
    return meta;
}

}  // namespace

void write_solve_csv(std::ostream& os, const EigenSolution& sol) {
    os << "k,lambda,residual,trusted\n";
    for (Eigen::Index k = 0; k <= sol.k_max; ++k)
        os << k << ',' << format_double(sol.lambdas[k]) << ','
           << format_double(sol.residuals[k]) << ',' << (sol.trusted[k] ? 1 : 0) << '\n';
}

void write_solve_json(std::ostream& os, const EigenSolution& sol) {
    ordered_json doc;
    doc["meta"] = solve_meta(sol);
    ordered_json rows = ordered_json::array();
    for (Eigen::Index k = 0; k <= sol.k_max; ++k) {
        ordered_json row;
        row["k"] = k;
        row["lambda"] = sol.lambdas[k];
        row["residual"] = sol.residuals[k];
        row["trusted"] = static_cast<bool>(sol.trusted[k]);
        rows.push_back(std::move(row));
    }
    doc["eigenvalues"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

void write_study_csv(std::ostream& os, const StudyReport& rep) {
    os << "alpha,k,N,error\n";
    for (const ErrorSample& s : rep.samples)
        os << format_double(s.alpha) << ',' << s.k << ',' << s.N << ','
           << format_double(s.error) << '\n';
    for (const CoeffSample& s : rep.coeff_samples)
        os << format_double(s.alpha) << ',' << s.k << ',' << s.n << ','
           << format_double(s.c_abs) << '\n';
    for (const FitResult& f : rep.fits) {
        os << "# fit alpha=" << format_double(f.alpha);
        if (f.k >= 0) os << " k=" << f.k;
        os << " exponent=" << format_double(f.exponent)
           << " residual=" << format_double(f.residual);
        if (!f.reliable) os << " unreliable=1";
        if (f.floor_detected) os << " floor=1";
        os << '\n';
    }
    for (const CoeffSample& s : rep.coeff_samples)
        os << "# coeff alpha=" << format_double(s.alpha) << " k=" << s.k << " n=" << s.n
           << " c=" << format_double(s.c_abs) << " c_hat=" << format_double(s.c_hat_abs)
           << '\n';
}

void write_study_json(std::ostream& os, const StudyReport& rep) {
    ordered_json doc;
    doc["meta"] = study_meta(rep);
    ordered_json rows = ordered_json::array();
    for (const ErrorSample& s : rep.samples) {
        ordered_json row;
        row["k"] = s.k;
        row["lambda"] = s.lambda_N;
        row["residual"] = s.error;
        row["trusted"] = !s.below_floor;
        row["alpha"] = s.alpha;
        row["N"] = s.N;
        row["lambda_ref"] = s.lambda_ref;
        rows.push_back(std::move(row));
    }
    doc["eigenvalues"] = std::move(rows);
    ordered_json fits = ordered_json::array();
    for (const FitResult& f : rep.fits) {
        ordered_json row;
        row["alpha"] = f.alpha;
        row["k"] = f.k;
        row["exponent"] = json_number(f.exponent);
        row["residual"] = json_number(f.residual);
        row["points"] = f.points;
        row["reliable"] = f.reliable;
        row["floor_detected"] = f.floor_detected;
        fits.push_back(std::move(row));
    }
    doc["fits"] = std::move(fits);
    if (!rep.coeff_samples.empty()) {
        ordered_json cs = ordered_json::array();
        for (const CoeffSample& s : rep.coeff_samples) {
            ordered_json row;
            row["alpha"] = s.alpha;
            row["k"] = s.k;
            row["n"] = s.n;
            row["c"] = s.c_abs;
            row["c_hat"] = s.c_hat_abs;
            cs.push_back(std::move(row));
        }
        doc["coefficients"] = std::move(cs);
    }
    os << doc.dump(2) << '\n';
}

}  // namespace fslp
