#include "gravitas/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gravitas::econ {

namespace {

constexpr double kRankTolerance = 1e-10;  // relative to the largest singular value

Eigen::MatrixXd pooled_design(const PanelDataset& panel) {
    const auto n = static_cast<Eigen::Index>(panel.size());
    Eigen::MatrixXd X(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& obs = panel.observations[static_cast<std::size_t>(i)];
        X(i, 0) = 1.0;
        X(i, 1) = obs.ln_lambda_exporter;
        X(i, 2) = obs.ln_mass;
    }
    return X;
}

Eigen::VectorXd response(const PanelDataset& panel) {
    const auto n = static_cast<Eigen::Index>(panel.size());
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i)
        y(i) = panel.observations[static_cast<std::size_t>(i)].ln_trade;
    return y;
}

std::vector<std::string> pooled_names(const PanelDataset& panel) {
    std::vector<std::string> names{"const"};
    names.insert(names.end(), panel.regressor_names.begin(), panel.regressor_names.end());
    return names;
}

/// Core solver shared by every estimator: QR solve plus (X'X)^-1 via the
/// R factor. `df` overrides n - k when the caller spends extra degrees of
/// freedom (the within estimator's absorbed group means).
struct LeastSquares {
    Eigen::VectorXd beta;
    Eigen::MatrixXd xtx_inverse;
    Eigen::VectorXd residuals;
    double ssr = 0.0;
};

LeastSquares solve_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 ErrorCode rank_error) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (n <= k)
        raise(ErrorCode::InconsistentInputs,
              "need more observations than parameters: n=" + std::to_string(n) +
                  ", k=" + std::to_string(k));

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < k) {
        // The permutation moves dependent columns last; report the first one.
        const Eigen::Index offending = qr.colsPermutation().indices()(qr.rank());
        const char* what = rank_error == ErrorCode::CollinearWithinGroups
                               ? "no within-group variation in regressor column "
                               : "design matrix is rank deficient at column ";
        raise(rank_error, std::string(what) + std::to_string(offending));
    }

    LeastSquares out;
    out.beta = qr.solve(y);
    out.residuals = y - X * out.beta;
    out.ssr = out.residuals.squaredNorm();

    // (X'X)^-1 = P R^-1 R^-T P' from the pivoted factorization.
    const Eigen::MatrixXd R =
        qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd unpermuted = r_inv * r_inv.transpose();
    const auto perm = qr.colsPermutation();
    out.xtx_inverse = perm * unpermuted * perm.transpose();
    return out;
}

/// CR1 cluster sandwich: c * (X'X)^-1 (sum_g X_g' u_g u_g' X_g) (X'X)^-1.
Eigen::MatrixXd clustered_covariance(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                                     const std::vector<int>& group_of, int n_groups,
                                     const Eigen::MatrixXd& xtx_inverse, long df_model) {
    const Eigen::Index k = X.cols();
    const Eigen::Index n = X.rows();
    Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n_groups, k);
    for (Eigen::Index i = 0; i < n; ++i)
        scores.row(group_of[static_cast<std::size_t>(i)]) += residuals(i) * X.row(i);
    const Eigen::MatrixXd meat = scores.transpose() * scores;
    const double g = static_cast<double>(n_groups);
    const double nn = static_cast<double>(n);
    const double c = g / (g - 1.0) * (nn - 1.0) / (nn - static_cast<double>(df_model));
    return c * xtx_inverse * meat * xtx_inverse;
}

void finalize_std_errors(EstimationResult& result) {
    const Eigen::Index k = result.covariance.rows();
    result.std_errors.resize(k);
    for (Eigen::Index i = 0; i < k; ++i)
        result.std_errors(i) = std::sqrt(std::max(0.0, result.covariance(i, i)));
}

void require_same_slopes(const EstimationResult& a, const EstimationResult& b, ErrorCode code) {
    if (a.slope_count() != b.slope_count())
        raise(code, "results have different slope counts");
    for (long i = 0; i < a.slope_count(); ++i) {
        const auto ia = static_cast<std::size_t>(i + a.slope_offset());
        const auto ib = static_cast<std::size_t>(i + b.slope_offset());
        if (ia < a.coef_names.size() && ib < b.coef_names.size() &&
            a.coef_names[ia] != b.coef_names[ib])
            raise(code, "results cover different regressors: " + a.coef_names[ia] + " vs " +
                            b.coef_names[ib]);
    }
}

}  // namespace

const char* method_name(Method method) noexcept {
    switch (method) {
        case Method::Pooled: return "pooled";
        case Method::FixedEffects: return "fixed_effects";
        case Method::RandomEffects: return "random_effects";
    }
    return "unknown";
}

EstimationResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool intercept_included,
                     std::vector<std::string> coef_names) {
    if (X.rows() != y.size())
        raise(ErrorCode::InconsistentInputs, "design and response lengths differ");
    auto ls = solve_least_squares(X, y, ErrorCode::SingularDesign);

    EstimationResult result;
    result.method = Method::Pooled;
    result.has_intercept = intercept_included;
    result.coefficients = ls.beta;
    result.n_obs = static_cast<std::size_t>(X.rows());
    result.n_groups = 0;
    result.ssr = ls.ssr;
    result.df_resid = X.rows() - X.cols();
    const double s2 = ls.ssr / static_cast<double>(result.df_resid);
    result.covariance = s2 * ls.xtx_inverse;
    finalize_std_errors(result);
    if (coef_names.empty()) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) coef_names.push_back("x" + std::to_string(j));
        if (intercept_included) coef_names[0] = "const";
    }
    result.coef_names = std::move(coef_names);
    return result;
}

WithinTransformed within_transform(const PanelDataset& panel) {
    const auto n = static_cast<Eigen::Index>(panel.size());
    const int g = panel.group_count;
    const Eigen::Index k = 2;
    WithinTransformed wt;
    wt.slope_names = panel.regressor_names;
    wt.X.resize(n, k);
    wt.y.resize(n);
    wt.group_of.resize(static_cast<std::size_t>(n));
    wt.group_sizes.assign(static_cast<std::size_t>(g), 0);
    wt.group_means_X = Eigen::MatrixXd::Zero(g, k);
    wt.group_means_y = Eigen::VectorXd::Zero(g);

    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& obs = panel.observations[static_cast<std::size_t>(i)];
        wt.group_of[static_cast<std::size_t>(i)] = obs.pair_id;
        ++wt.group_sizes[static_cast<std::size_t>(obs.pair_id)];
        wt.group_means_X(obs.pair_id, 0) += obs.ln_lambda_exporter;
        wt.group_means_X(obs.pair_id, 1) += obs.ln_mass;
        wt.group_means_y(obs.pair_id) += obs.ln_trade;
        wt.X(i, 0) = obs.ln_lambda_exporter;
        wt.X(i, 1) = obs.ln_mass;
        wt.y(i) = obs.ln_trade;
    }
    for (int j = 0; j < g; ++j) {
        const double size = static_cast<double>(wt.group_sizes[static_cast<std::size_t>(j)]);
        if (size == 0.0) raise(ErrorCode::InconsistentInputs, "empty group in panel");
        wt.group_means_X.row(j) /= size;
        wt.group_means_y(j) /= size;
    }
    wt.grand_mean_X = wt.X.colwise().mean();
    wt.grand_mean_y = wt.y.mean();
    for (Eigen::Index i = 0; i < n; ++i) {
        const int group = wt.group_of[static_cast<std::size_t>(i)];
        wt.X.row(i) -= wt.group_means_X.row(group);
        wt.y(i) -= wt.group_means_y(group);
    }
    return wt;
}

EstimationResult pooled(const PanelDataset& panel, const EstimOptions& options) {
    auto result = ols(pooled_design(panel), response(panel), true, pooled_names(panel));
    result.method = Method::Pooled;
    result.n_groups = static_cast<std::size_t>(panel.group_count);
    if (options.cluster_robust) {
        const Eigen::MatrixXd X = pooled_design(panel);
        const Eigen::VectorXd y = response(panel);
        const Eigen::VectorXd u = y - X * result.coefficients;
        std::vector<int> group_of(panel.size());
        for (std::size_t i = 0; i < panel.size(); ++i) group_of[i] = panel.observations[i].pair_id;
        const Eigen::MatrixXd xtx_inv = result.covariance * (static_cast<double>(result.df_resid) / result.ssr);
        result.covariance = clustered_covariance(X, u, group_of, panel.group_count, xtx_inv,
                                                 X.cols());
        finalize_std_errors(result);
        result.warnings.push_back("cluster_robust");
    }
    return result;
}

EstimationResult fixed_effects(const PanelDataset& panel, const EstimOptions& options) {
    auto wt = within_transform(panel);
    const Eigen::Index n = wt.X.rows();
    const Eigen::Index k = wt.X.cols();
    const long g = panel.group_count;
    const long df = static_cast<long>(n) - g - static_cast<long>(k);
    if (df < 1)
        raise(ErrorCode::CollinearWithinGroups,
              "not enough within-group observations: n=" + std::to_string(n) +
                  ", groups=" + std::to_string(g));

    // A regressor may lose all variation under demeaning; catch it before the
    // decomposition so the error names the column rather than a pivot.
    for (Eigen::Index j = 0; j < k; ++j) {
        const double within_norm = wt.X.col(j).norm();
        const double scale = wt.group_means_X.col(j).cwiseAbs().maxCoeff() + 1.0;
        if (within_norm <= 1e-12 * scale * std::sqrt(static_cast<double>(n)))
            raise(ErrorCode::CollinearWithinGroups,
                  "no within-group variation in regressor '" +
                      wt.slope_names[static_cast<std::size_t>(j)] + "'");
    }

    auto ls = solve_least_squares(wt.X, wt.y, ErrorCode::CollinearWithinGroups);

    EstimationResult result;
    result.method = Method::FixedEffects;
    result.has_intercept = true;
    result.n_obs = static_cast<std::size_t>(n);
    result.n_groups = static_cast<std::size_t>(g);
    result.ssr = ls.ssr;
    result.df_resid = df;

    const double s2 = ls.ssr / static_cast<double>(df);
    Eigen::MatrixXd slope_cov = s2 * ls.xtx_inverse;
    if (options.cluster_robust) {
        slope_cov = clustered_covariance(wt.X, ls.residuals, wt.group_of, panel.group_count,
                                         ls.xtx_inverse, k);
        result.warnings.push_back("cluster_robust");
    }

    // Constant recovered from the grand means; reported with the covariance
    // block implied by beta0 = ybar - xbar * b.
    const double beta0 = wt.grand_mean_y - wt.grand_mean_X * ls.beta;
    result.coefficients.resize(k + 1);
    result.coefficients(0) = beta0;
    result.coefficients.tail(k) = ls.beta;

    result.covariance = Eigen::MatrixXd::Zero(k + 1, k + 1);
    result.covariance.bottomRightCorner(k, k) = slope_cov;
    const Eigen::RowVectorXd cross = -wt.grand_mean_X * slope_cov;
    result.covariance.block(0, 1, 1, k) = cross;
    result.covariance.block(1, 0, k, 1) = cross.transpose();
    result.covariance(0, 0) =
        s2 / static_cast<double>(n) + wt.grand_mean_X * slope_cov * wt.grand_mean_X.transpose();
    finalize_std_errors(result);

    result.coef_names = pooled_names(panel);
    return result;
}

EstimationResult random_effects_with_components(const PanelDataset& panel, double sigma_e2,
                                                double sigma_u2, const EstimOptions& options) {
    if (sigma_e2 < 0.0 || sigma_u2 < 0.0)
        raise(ErrorCode::InconsistentInputs, "variance components must be nonnegative");
    auto wt = within_transform(panel);
    const Eigen::Index n = wt.X.rows();
    const Eigen::Index k = wt.X.cols();
    const int g = panel.group_count;

    // Re-demeaning undoes the within transform: rebuild levels, then apply the
    // per-group quasi-demeaning weight theta_g.
    Eigen::MatrixXd xs(n, k + 1);
    Eigen::VectorXd ys(n);
    std::vector<double> theta(static_cast<std::size_t>(g), 0.0);
    double theta_sum = 0.0;
    for (int j = 0; j < g; ++j) {
        const double t_g = static_cast<double>(wt.group_sizes[static_cast<std::size_t>(j)]);
        const double denom = sigma_e2 + t_g * sigma_u2;
        theta[static_cast<std::size_t>(j)] =
            denom > 0.0 ? 1.0 - std::sqrt(sigma_e2 / denom) : 0.0;
        theta_sum += theta[static_cast<std::size_t>(j)];
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const int group = wt.group_of[static_cast<std::size_t>(i)];
        const double th = theta[static_cast<std::size_t>(group)];
        const Eigen::RowVectorXd level_x = wt.X.row(i) + wt.group_means_X.row(group);
        const double level_y = wt.y(i) + wt.group_means_y(group);
        xs(i, 0) = 1.0 - th;
        xs.row(i).tail(k) = level_x - th * wt.group_means_X.row(group);
        ys(i) = level_y - th * wt.group_means_y(group);
    }

    auto ls = solve_least_squares(xs, ys, ErrorCode::SingularDesign);

    EstimationResult result;
    result.method = Method::RandomEffects;
    result.has_intercept = true;
    result.coefficients = ls.beta;
    result.n_obs = static_cast<std::size_t>(n);
    result.n_groups = static_cast<std::size_t>(g);
    result.ssr = ls.ssr;
    result.df_resid = static_cast<long>(n) - static_cast<long>(k) - 1;
    result.theta = theta_sum / static_cast<double>(g);
    const double s2 = ls.ssr / static_cast<double>(result.df_resid);
    result.covariance = s2 * ls.xtx_inverse;
    if (options.cluster_robust) {
        result.covariance = clustered_covariance(xs, ls.residuals, wt.group_of, g,
                                                 ls.xtx_inverse, k + 1);
        result.warnings.push_back("cluster_robust");
    }
    finalize_std_errors(result);
    result.coef_names = pooled_names(panel);
    return result;
}

EstimationResult random_effects(const PanelDataset& panel, const EstimOptions& options) {
    const int g = panel.group_count;
    const Eigen::Index k = 2;
    if (g < static_cast<int>(k) + 2)
        raise(ErrorCode::TooFewGroups,
              "between regression needs at least k+2 groups, got " + std::to_string(g));

    auto wt = within_transform(panel);
    const Eigen::Index n = wt.X.rows();
    const long df_within = static_cast<long>(n) - g - static_cast<long>(k);
    if (df_within < 1)
        raise(ErrorCode::CollinearWithinGroups, "no residual degrees of freedom for sigma_e");

    auto within_ls = solve_least_squares(wt.X, wt.y, ErrorCode::CollinearWithinGroups);
    const double sigma_e2 = within_ls.ssr / static_cast<double>(df_within);

    // Between regression on group means; its excess variance over sigma_e2/T
    // identifies sigma_u2 (Swamy-Arora, harmonic-mean correction when
    // unbalanced).
    Eigen::MatrixXd xb(g, k + 1);
    xb.col(0).setOnes();
    xb.rightCols(k) = wt.group_means_X;
    auto between_ls = solve_least_squares(xb, wt.group_means_y, ErrorCode::SingularDesign);
    const double df_between = static_cast<double>(g) - static_cast<double>(k) - 1.0;
    double inv_t_mean = 0.0;
    for (int j = 0; j < g; ++j)
        inv_t_mean += 1.0 / static_cast<double>(wt.group_sizes[static_cast<std::size_t>(j)]);
    inv_t_mean /= static_cast<double>(g);
    double sigma_u2 = between_ls.ssr / df_between - sigma_e2 * inv_t_mean;

    bool clamped = false;
    if (sigma_u2 < 0.0) {
        sigma_u2 = 0.0;
        clamped = true;
    }

    auto result = random_effects_with_components(panel, sigma_e2, sigma_u2, options);
    if (clamped) result.warnings.push_back("sigma_u_clamped_to_zero");
    return result;
}

TestResult hausman(const EstimationResult& fe, const EstimationResult& re) {
    require_same_slopes(fe, re, ErrorCode::IncompatibleResults);
    const long k = fe.slope_count();
    if (k < 1) raise(ErrorCode::IncompatibleResults, "no slope coefficients to compare");

    // Evaluate both covariances at the within error variance before
    // differencing. With each model's own scale the difference loses positive
    // definiteness exactly when the random-effects model is misspecified,
    // which collapses the test's power; the common scale keeps the
    // contrast PSD up to rounding.
    const double s2_fe = fe.df_resid > 0 ? fe.ssr / static_cast<double>(fe.df_resid) : 0.0;
    const double s2_re = re.df_resid > 0 ? re.ssr / static_cast<double>(re.df_resid) : 0.0;
    const double rescale =
        (s2_fe > 0.0 && s2_re > 0.0 && std::isfinite(s2_fe / s2_re)) ? s2_fe / s2_re : 1.0;

    const Eigen::VectorXd d = fe.coefficients.tail(k) - re.coefficients.tail(k);
    const Eigen::MatrixXd diff = fe.covariance.bottomRightCorner(k, k) -
                                 rescale * re.covariance.bottomRightCorner(k, k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolver(diff);
    const Eigen::VectorXd eigenvalues = eigensolver.eigenvalues();
    const double max_abs = eigenvalues.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * std::max(1.0, max_abs);

    TestResult out;
    out.name = "hausman";
    out.df = {static_cast<int>(k)};
    const bool psd = eigenvalues.minCoeff() >= -tol;
    if (!psd) out.warnings.push_back("covariance_difference_not_psd_pseudo_inverse");

    // Moore-Penrose inverse on the eigenbasis covers both the regular and the
    // degenerate branch; strictly positive spectra reduce to the plain solve.
    Eigen::VectorXd inv_eigen = Eigen::VectorXd::Zero(k);
    long rank = 0;
    for (long i = 0; i < k; ++i) {
        if (std::abs(eigenvalues(i)) > tol) {
            inv_eigen(i) = 1.0 / eigenvalues(i);
            ++rank;
        }
    }
    if (rank < k && psd) out.warnings.push_back("covariance_difference_rank_deficient");
    const Eigen::VectorXd z = eigensolver.eigenvectors().transpose() * d;
    out.statistic = z.dot(inv_eigen.asDiagonal() * z);
    if (out.statistic < 0.0 && psd) out.statistic = 0.0;
    out.p_value = out.statistic >= 0.0
                      ? tail_probability(ChiSquared{static_cast<double>(k)}, out.statistic)
                      : 1.0;
    return out;
}

TestResult f_test_panel_effects(const EstimationResult& pooled_result,
                                const EstimationResult& fe_result) {
    if (pooled_result.n_obs != fe_result.n_obs)
        raise(ErrorCode::InconsistentInputs, "pooled and fixed-effects results differ in n_obs");
    require_same_slopes(pooled_result, fe_result, ErrorCode::InconsistentInputs);
    const long g = static_cast<long>(fe_result.n_groups);
    if (g <= 1)
        raise(ErrorCode::InconsistentInputs, "panel-effects test needs at least two groups");
    const double scale = std::max(1.0, pooled_result.ssr);
    if (pooled_result.ssr < fe_result.ssr - 1e-9 * scale)
        raise(ErrorCode::InconsistentInputs, "pooled SSR is below fixed-effects SSR");

    const double num = std::max(0.0, pooled_result.ssr - fe_result.ssr) /
                       static_cast<double>(g - 1);
    const double den = fe_result.ssr / static_cast<double>(fe_result.df_resid);

    TestResult out;
    out.name = "f_panel_effects";
    out.df = {static_cast<int>(g - 1), static_cast<int>(fe_result.df_resid)};
    if (den <= 0.0) {
        out.statistic = std::numeric_limits<double>::max();
        out.p_value = 0.0;
        out.warnings.push_back("saturated");
        return out;
    }
    out.statistic = num / den;
    out.p_value = tail_probability(
        FisherF{static_cast<double>(g - 1), static_cast<double>(fe_result.df_resid)},
        out.statistic);
    return out;
}

namespace {

/// Quadratic form b' V^-1 b for the joint slope tests; saturates instead of
/// failing when an exact fit zeroes the covariance.
double joint_quadratic_form(const EstimationResult& result, bool allow_saturation,
                            std::vector<std::string>& warnings) {
    const long k = result.slope_count();
    const Eigen::VectorXd b = result.coefficients.tail(k);
    const Eigen::MatrixXd v = result.covariance.bottomRightCorner(k, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolver(v);
    const Eigen::VectorXd eigenvalues = eigensolver.eigenvalues();
    const double max_eig = eigenvalues.cwiseAbs().maxCoeff();
    const bool singular = !(eigenvalues.minCoeff() > 1e-12 * std::max(max_eig, 1e-300));
    if (singular) {
        if (!allow_saturation)
            raise(ErrorCode::SingularCovariance, "slope covariance is singular");
        if (b.norm() == 0.0) return 0.0;
        warnings.push_back("saturated");
        return std::numeric_limits<double>::max();
    }
    const Eigen::VectorXd z = eigensolver.eigenvectors().transpose() * b;
    double stat = 0.0;
    for (long i = 0; i < k; ++i) stat += z(i) * z(i) / eigenvalues(i);
    if (!std::isfinite(stat)) {
        if (!allow_saturation)
            raise(ErrorCode::SingularCovariance, "slope covariance is ill conditioned");
        warnings.push_back("saturated");
        return std::numeric_limits<double>::max();
    }
    return stat;
}

}  // namespace

TestResult regression_f_test(const EstimationResult& result) {
    const long k = result.slope_count();
    if (k < 1) raise(ErrorCode::InconsistentInputs, "no slopes to test");
    TestResult out;
    out.name = "regression_f";
    out.df = {static_cast<int>(k), static_cast<int>(result.df_resid)};
    const double q = joint_quadratic_form(result, true, out.warnings);
    if (q == std::numeric_limits<double>::max()) {
        out.statistic = q;
        out.p_value = 0.0;
        return out;
    }
    out.statistic = q / static_cast<double>(k);
    out.p_value = tail_probability(
        FisherF{static_cast<double>(k), static_cast<double>(result.df_resid)}, out.statistic);
    return out;
}

TestResult wald_joint_test(const EstimationResult& result) {
    const long k = result.slope_count();
    if (k < 1) raise(ErrorCode::InconsistentInputs, "no slopes to test");
    TestResult out;
    out.name = "wald_joint";
    out.df = {static_cast<int>(k)};
    out.statistic = joint_quadratic_form(result, false, out.warnings);
    out.p_value = tail_probability(ChiSquared{static_cast<double>(k)}, out.statistic);
    return out;
}

TestResult t_test_equals(const EstimationResult& result, std::size_t index, double hypothesized) {
    if (index >= static_cast<std::size_t>(result.coefficients.size()))
        raise(ErrorCode::InconsistentInputs, "coefficient index out of range");
    const double se = result.std_errors(static_cast<Eigen::Index>(index));
    TestResult out;
    out.name = "t_" +
               (index < result.coef_names.size() ? result.coef_names[index]
                                                 : "coef" + std::to_string(index));
    out.df = {static_cast<int>(result.df_resid)};
    if (se <= 0.0) {
        const double dev =
            result.coefficients(static_cast<Eigen::Index>(index)) - hypothesized;
        out.statistic = dev == 0.0 ? 0.0 : std::numeric_limits<double>::max();
        out.p_value = dev == 0.0 ? 1.0 : 0.0;
        out.warnings.push_back("saturated");
        return out;
    }
    out.statistic =
        (result.coefficients(static_cast<Eigen::Index>(index)) - hypothesized) / se;
    const double upper = tail_probability(StudentT{static_cast<double>(result.df_resid)},
                                          std::fabs(out.statistic));
    out.p_value = std::min(1.0, 2.0 * upper);
    return out;
}

}  // namespace gravitas::econ
