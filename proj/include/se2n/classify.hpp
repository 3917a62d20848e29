#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace se2n {

/// Feature matrix (one row per sample) with integer labels.
struct Dataset {
    Eigen::MatrixXd X;
    std::vector<int> y;

    Dataset subset(const std::vector<int>& rows) const;
    std::size_t size() const { return y.size(); }
};

struct Split {
    double train_ratio = 0.75;
    std::uint64_t seed = 1;
    bool stratified = true;
    int trials = 5;
};

struct SplitIndices {
    std::vector<int> train, test;  // ascending row indices
};

/// Random split, per class when stratified (round(ratio * n_c) training
/// samples per class, at least one on each side). Deterministic in
/// (seed, trial).
SplitIndices split_dataset(const std::vector<int>& labels, const Split& split, int trial);

/// Per-dimension zero mean / unit variance. Constant dimensions get scale 0
/// and map to 0.
struct Standardizer {
    Eigen::VectorXd mean, scale;

    static Standardizer fit(const Eigen::MatrixXd& X);
    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
};

/// Pairwise squared Euclidean distances between the rows of A and B.
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// exp(-d2 / (2 sigma^2)) elementwise.
Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& d2, double sigma);

struct SvmParams {
    double sigma = 1.0;
    double C = 10.0;
    double tol = 1e-3;
    long max_iter = 1000000;
};

/// Dual solution of one binary problem, labels +1 / -1.
struct BinarySolution {
    Eigen::VectorXd alpha;
    double rho = 0.0;  // decision = sum alpha_i y_i K(x_i, x) - rho
    long iterations = 0;
};

/// SMO with maximal-violating-pair selection on a precomputed kernel.
BinarySolution smo_solve(const Eigen::MatrixXd& K, const std::vector<int>& y, double C, double tol, long max_iter);

struct PairClassifier {
    int a = 0, b = 0;             // class ids, a < b; positive decision votes a
    std::vector<int> sv;          // rows of SvmModel::vectors
    std::vector<double> coef;     // alpha_i y_i
    double bias = 0.0;            // decision = sum coef K + bias
    std::optional<int> constant;  // degenerate pair: always votes this class
};

struct SvmModel {
    SvmParams params;
    Standardizer standardizer;
    std::vector<int> classes;     // ascending
    Eigen::MatrixXd vectors;      // standardized support vectors shared by all pairs
    std::vector<PairClassifier> pairs;

    int dim() const { return static_cast<int>(standardizer.mean.size()); }
};

/// One-against-one Gaussian-kernel SVM. Exact duplicate rows (same features
/// and label) are dropped before standardization and training.
SvmModel train_svm(const Dataset& train, const SvmParams& params);

/// Pairwise decision values, ordered like model.pairs.
Eigen::MatrixXd decision_values(const SvmModel& model, const Eigen::MatrixXd& X);
/// Majority vote; ties go to the lowest class id.
std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& X);
int predict(const SvmModel& model, const Eigen::VectorXd& x);

/// k nearest neighbors on features standardized with the training set;
/// distance ties go to the lower row index, vote ties to the lowest class.
int knn_predict(const Dataset& train, const Eigen::VectorXd& x, int k);

/// sigma in `grid` maximizing validation accuracy; ties go to the smallest.
double sigma_search(const Dataset& train, const Dataset& validation, const std::vector<double>& grid, double C);

/// sqrt(dim) * 2^e for e = -3..2.
std::vector<double> default_sigma_grid(int dim);

struct EvalReport {
    double accuracy = 0.0;  // percent
    std::vector<int> classes;
    Eigen::MatrixXi confusion;  // row = true class, column = predicted
    std::size_t total = 0;
};

EvalReport evaluate(const SvmModel& model, const Dataset& test);
EvalReport make_report(const std::vector<int>& truth, const std::vector<int>& predicted);

void save_model(const SvmModel& model, const std::filesystem::path& path, const std::string& header);
SvmModel load_model(const std::filesystem::path& path);

}  // namespace se2n
