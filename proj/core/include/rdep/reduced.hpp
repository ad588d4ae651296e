#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rdep/ccp.hpp"
#include "rdep/dataset.hpp"
#include "rdep/lattice.hpp"
#include "rdep/svm.hpp"

namespace rdep {

/// Bijection between the two original class tags and {-1, +1}. The first tag
/// in sorted order becomes the negative class.
struct ClassMap {
    std::string negative_label;
    std::string positive_label;

    int to_sign(const std::string& label) const;
    const std::string& from_sign(int sign) const;
};

/// Builds the map from the distinct tags of a label sequence; exactly two
/// distinct tags are required.
ClassMap make_class_map(const std::vector<std::string>& labels);

enum class RhoConstruction { Ensemble, Bagging };

/// Supervised reduced ordering: each coordinate is the intercept-free
/// decision function of one trained support vector classifier.
struct RhoMap {
    std::vector<SvcModel> estimators;
    RhoConstruction construction = RhoConstruction::Ensemble;

    std::size_t output_dim() const { return estimators.size(); }
    std::size_t input_dim() const {
        return estimators.empty() ? 0 : estimators.front().dim();
    }
};

/// A Gaussian spec with gaussian_sigma2 == 0 asks for the width heuristic to
/// be resolved on the data the estimator is fitted on.
KernelSpec resolve_kernel(KernelSpec spec, const Matrix& fit_data);

/// One classifier per kernel, each trained on the full set; estimator order
/// follows the kernel list.
RhoMap build_rho_ensemble(const TrainingSet& t, const std::vector<KernelSpec>& kernels,
                          double box_c);

/// n_estimators classifiers with a common base kernel, each trained on a
/// bootstrap resample of size |T| drawn from a stream seeded by
/// (seed, estimator index). Single-class resamples are redrawn, at most 100
/// times each.
RhoMap build_rho_bagging(const TrainingSet& t, const KernelSpec& base,
                         int n_estimators, std::uint64_t seed, double box_c);

/// Coordinate k is svc_decision(estimators[k], x, include_intercept=false).
std::vector<double> apply_rho(const RhoMap& map, std::span<const double> x);

/// Reduced dilation-erosion perceptron: rho, a standardizer fitted on the
/// transformed training data, a DEP on the standardized transformed space and
/// the class bijection.
struct RDepModel {
    RhoMap rho;
    Standardizer rho_standardizer;
    DepModel dep;
    ClassMap classes;
};

struct RdepStrategy {
    RhoConstruction construction = RhoConstruction::Ensemble;
    std::vector<KernelSpec> ensemble_kernels;  // ensemble only
    KernelSpec bagging_base;                   // bagging only
    int bagging_estimators = 10;
    std::uint64_t bagging_seed = 0;

    static RdepStrategy ensemble(std::vector<KernelSpec> kernels);
    static RdepStrategy bagging(KernelSpec base, int n_estimators, std::uint64_t seed);
};

/// Fits rho on the original-label training data, standardizes the transformed
/// set, and trains the DEP there with the mapped {-1,+1} labels.
RDepModel train_rdep(const Matrix& x, const std::vector<std::string>& labels,
                     const RdepStrategy& strategy, const CcpConfig& cfg, double box_c);

/// Decision value of the composite classifier on an original-space point.
double rdep_decision(const RDepModel& model, std::span<const double> x);

/// Original class tag of sgn(decision), with sgn(0) mapping to the positive
/// class.
std::string rdep_classify(const RDepModel& model, std::span<const double> x);

}  // namespace rdep
