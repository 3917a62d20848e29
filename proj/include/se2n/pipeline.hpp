#pragma once

#include "se2n/classify.hpp"
#include "se2n/descriptors.hpp"
#include "se2n/raster.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace se2n {

// Feature files: a '#' comment line, then `label,kind,manifest_hash,f0,...`.

struct FeatureTable {
    std::string comment;  // without the leading '#'
    std::vector<FeatureVector> rows;
};

void write_features(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_features(const std::filesystem::path& path);
/// Rows must be labeled and share one length.
Dataset to_dataset(const std::vector<FeatureVector>& rows);

/// Parallel per image, output in input order.
std::vector<FeatureVector> extract_batch(const std::vector<LabeledSample>& samples, const HexGrid& grid,
                                         const DescriptorConfig& config, Kind kind);

struct EvalOptions {
    Split split;
    std::optional<double> sigma;    // fixed bandwidth; otherwise searched
    std::vector<double> sigma_grid; // empty: default_sigma_grid(dim)
    double C = 10.0;
    double noise_sd = 0.0;          // applied to test images
    bool train_clean_test_noisy = false;
    int noisy_views_per_class = 15;
};

struct EvalSummary {
    std::vector<double> accuracies;  // per trial, percent
    std::vector<double> sigmas;      // per trial
    double mean = 0.0;
    Eigen::MatrixXi confusion;       // summed over trials
    std::vector<int> classes;
};

/// Bandwidth for one training set: opts.sigma, or the grid value that wins
/// on a stratified 75/25 split of the training set itself.
double choose_sigma(const Dataset& train, const EvalOptions& opts, int trial);

/// Split protocol on precomputed features.
EvalSummary evaluate_features(const Dataset& data, const EvalOptions& opts);

/// Image-level protocol. Without train_clean_test_noisy: split per trial,
/// test images get N(0, noise_sd^2) noise. With it: train on every clean
/// image, test on noisy_views_per_class random views per class.
EvalSummary evaluate_images(const std::vector<LabeledSample>& samples, const HexGrid& grid,
                            const DescriptorConfig& config, Kind kind, const EvalOptions& opts);

/// Relative L2 distance ||a - b|| / ||a||.
double rel_l2(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Property suites shared by the `check` command and the tests.

struct CheckRow {
    std::string identity;
    Frequency lambda = Frequency::Zero();
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual <= tolerance; }
};

struct CheckReport {
    std::vector<CheckRow> rows;
    bool pass() const;
    double worst(const std::string& identity) const;  // max residual for one identity
    void write_csv(std::ostream& out, const std::string& comment) const;
    void write_csv(const std::filesystem::path& path, const std::string& comment) const;
};

/// Representation, Kronecker induction lemma, induction-reduction and
/// rank-1 lift identities on `functions` random analytic inputs.
CheckReport run_identity_suite(std::uint64_t seed, int functions = 20);
/// Rotation / translation invariance and h = 0 reductions on synthetic shapes.
CheckReport run_invariance_suite(std::uint64_t seed, int images = 3);
/// Fast invariants against matrix definitions, `tuples` random tuples per kind.
CheckReport run_oracle_suite(std::uint64_t seed, int tuples = 100);
/// Circulant genericity over the default grid; report-only rows plus a
/// fraction row gated at >= 0.95 for random smooth images.
CheckReport run_genericity_suite(std::uint64_t seed, int images = 3);

}  // namespace se2n
