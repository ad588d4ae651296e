#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdep/ccp.hpp"
#include "rdep/dataset.hpp"
#include "rdep/model_io.hpp"

namespace rdep {

struct TrainParams {
    double box_c = 1.0;
    CcpConfig ccp{};
    int bag_estimators = 10;
    std::uint64_t seed = 0;  // bagging resample stream
};

/// Trains one classifier of the named kind (dep, rdep-ensemble, rdep-bagging,
/// svc-linear, svc-rbf, svc-poly, svc-vote, svc-bag) on the given rows.
/// Gaussian widths are resolved on the data each estimator actually sees.
ModelFile train_model_kind(const std::string& kind, const Matrix& x,
                           const std::vector<std::string>& labels,
                           const TrainParams& params);

struct ClassifierSpec {
    std::string name;
    std::string kind;
    TrainParams params;
};

/// The eight benchmark entries: three kernel SVCs, their hard-voting
/// ensemble, a bagging of RBF SVCs, the plain DEP, and the two reduced DEPs.
std::vector<ClassifierSpec> default_classifier_suite();

struct BenchmarkReport {
    std::vector<std::string> dataset_names;
    std::vector<std::string> classifier_names;
    // [dataset][classifier][fold]
    std::vector<std::vector<std::vector<double>>> fold_scores;
    std::vector<std::vector<double>> mean_score;   // [dataset][classifier]
    std::vector<std::vector<double>> std_score;    // [dataset][classifier]
    std::vector<std::vector<char>> beats;          // [a][b] pairwise decisions
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    double confidence = 0.99;

    std::string table_text() const;  // aligned mean +/- std table
    std::string scores_csv() const;  // classifier,dataset,fold,score
    std::string dot_text() const;    // transitively reduced dominance graph
};

/// The cross-validation protocol: per dataset, mean-impute, split with
/// stratified k folds (one split shared by every classifier), standardize
/// train and test on the training statistics, fit every classifier on the
/// identical split and score balanced accuracy on the test fold. Pairwise
/// one-sided t-tests pool the per-dataset mean scores. jobs > 1 spreads folds
/// across worker threads.
BenchmarkReport run_benchmark(const std::vector<Dataset>& datasets,
                              const std::vector<ClassifierSpec>& specs,
                              std::size_t k, std::uint64_t seed,
                              double confidence, int jobs = 1);

}  // namespace rdep
