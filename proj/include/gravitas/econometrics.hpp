#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gravitas/distributions.hpp"
#include "gravitas/error.hpp"
#include "gravitas/types.hpp"

namespace gravitas::econ {

enum class Method { Pooled, FixedEffects, RandomEffects };

const char* method_name(Method method) noexcept;

struct EstimationResult {
    Method method = Method::Pooled;
    bool has_intercept = true;  // coefficient 0 is the constant when true
    std::vector<std::string> coef_names;
    Eigen::VectorXd coefficients;
    Eigen::MatrixXd covariance;
    Eigen::VectorXd std_errors;
    std::size_t n_obs = 0;
    std::size_t n_groups = 0;
    double ssr = 0.0;
    long df_resid = 0;
    double theta = 0.0;  // random effects only: average quasi-demeaning weight
    std::vector<std::string> warnings;

    long slope_count() const noexcept {
        return coefficients.size() - (has_intercept ? 1 : 0);
    }
    long slope_offset() const noexcept { return has_intercept ? 1 : 0; }
};

struct TestResult {
    std::string name;
    double statistic = 0.0;
    std::vector<int> df;  // one or two entries
    double p_value = 1.0;
    std::vector<std::string> warnings;
};

struct EstimOptions {
    bool cluster_robust = false;  // cluster-by-pair sandwich standard errors
};

/// Least squares via Householder QR with column pivoting; the inverse
/// cross-product needed for the covariance comes from the R factor, the
/// solve itself never forms X'X. Rank deficiency (singular values below
/// 1e-10 of the largest) raises SingularDesign naming the offending column.
EstimationResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool intercept_included,
                     std::vector<std::string> coef_names = {});

/// Group-demeaned data plus the group layout needed by the panel estimators.
struct WithinTransformed {
    Eigen::MatrixXd X;  // n x k slope regressors, demeaned per group
    Eigen::VectorXd y;
    std::vector<int> group_of;          // row -> group id
    std::vector<int> group_sizes;       // length G
    Eigen::MatrixXd group_means_X;      // G x k
    Eigen::VectorXd group_means_y;      // G
    Eigen::RowVectorXd grand_mean_X;    // 1 x k
    double grand_mean_y = 0.0;
    std::vector<std::string> slope_names;
};

WithinTransformed within_transform(const PanelDataset& panel);

EstimationResult pooled(const PanelDataset& panel, const EstimOptions& options = {});
EstimationResult fixed_effects(const PanelDataset& panel, const EstimOptions& options = {});
EstimationResult random_effects(const PanelDataset& panel, const EstimOptions& options = {});

/// Random-effects GLS with the variance components supplied instead of
/// estimated; the feasible estimator above reduces to this after Swamy-Arora.
EstimationResult random_effects_with_components(const PanelDataset& panel, double sigma_e2,
                                                double sigma_u2,
                                                const EstimOptions& options = {});

TestResult hausman(const EstimationResult& fe, const EstimationResult& re);
TestResult f_test_panel_effects(const EstimationResult& pooled_result,
                                const EstimationResult& fe_result);
TestResult regression_f_test(const EstimationResult& result);
TestResult wald_joint_test(const EstimationResult& result);
TestResult t_test_equals(const EstimationResult& result, std::size_t index, double hypothesized);

}  // namespace gravitas::econ
