#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdep/matrix.hpp"

namespace rdep {

/// Tabular dataset: numeric feature matrix plus one class tag per row.
/// Missing feature cells are carried as NaN until imputation.
struct Dataset {
    std::string name;
    std::vector<std::string> feature_names;
    Matrix x;
    std::vector<std::string> labels;

    std::size_t rows() const { return x.rows; }
    std::size_t cols() const { return x.cols; }
};

/// Reads a comma-separated file with a header row. The named label column is
/// extracted verbatim; every other cell must parse as a number unless it
/// equals missing_token, in which case it is recorded as missing. Throws
/// LoadError on unreadable files, unknown label columns and non-numeric cells.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& missing_token = "?");

/// Replaces every missing cell by its column mean over the non-missing
/// entries. A column with no observed value is an error.
Dataset impute_mean(const Dataset& d);

/// Per-feature affine map fitted on a training split: subtract the mean,
/// divide by the population standard deviation (degenerate columns divide
/// by 1 instead).
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    std::size_t dim() const { return mean.size(); }
};

Standardizer fit_standardizer(const Matrix& train);
Matrix apply_standardizer(const Standardizer& s, const Matrix& data);
std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> row);

/// Two interleaving half circles: a unit-radius arc over [0, pi] and a second
/// arc shifted by (1, -0.5), with ceil(n/2) points on the first and
/// floor(n/2) on the second, plus independent per-coordinate Gaussian noise
/// of the given standard deviation. The unshifted arc carries label "1", the
/// shifted arc label "0". Deterministic for a fixed seed.
Dataset make_moons(std::size_t n, double noise_sigma, std::uint64_t seed);

/// Stratified k-fold split over the label sequence. Returns k disjoint
/// (train, test) index pairs covering every row; per-fold class counts differ
/// from proportional allocation by at most one. Deterministic per seed.
struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

std::vector<FoldSplit> stratified_kfold(const std::vector<std::string>& labels,
                                        std::size_t k, std::uint64_t seed);

}  // namespace rdep
