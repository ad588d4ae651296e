#pragma once

#include <vector>

#include "rdep/lattice.hpp"
#include "rdep/matrix.hpp"

namespace rdep {

/// Labelled samples with labels in {-1, +1}.
struct TrainingSet {
    Matrix x;
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
    std::size_t dim() const { return x.cols; }
};

/// Validates shapes, label values and finiteness.
TrainingSet make_training_set(Matrix x, std::vector<int> labels);

struct CcpConfig {
    double regularization_c = 1e-2;
    int max_outer_iters = 50;
    double objective_tol = 1e-6;
};

/// Per-sample hinge penalty weights in (0, 1], scaled so each class has
/// maximum weight exactly 1. Weights follow sample order within each class.
struct SlackWeights {
    std::vector<double> nu_neg;
    std::vector<double> nu_pos;
};

/// Reciprocal distance to the class mean, scaled per class to (0, 1].
/// Samples closer to their class mean get larger hinge penalties.
SlackWeights slack_weights(const TrainingSet& t);

/// Regularization anchor: minus the component-wise supremum of the negative
/// class for a dilation, minus the infimum of the positive class for an
/// erosion.
std::vector<double> reference_vector(MorphKind kind, const TrainingSet& t);

/// Objective the trainer minimizes for a candidate weight vector: weighted
/// average hinge losses of both classes plus the L1 pull towards the
/// reference. Exposed for tests.
double morph_training_objective(MorphKind kind, std::span<const double> weights,
                                const TrainingSet& t, const SlackWeights& nu,
                                double regularization_c,
                                std::span<const double> reference);

/// Per-outer-iteration record of the training loop, for diagnostics.
struct CcpTrace {
    std::vector<double> objectives;  // true objective after every iteration
};

/// Trains one morphological unit by the convex-concave procedure: the
/// constraint side that is a union (the min side of the negatives for an
/// erosion, the max side of the positives for a dilation) is replaced by its
/// active affine piece at the current iterate and the resulting linear
/// program is solved exactly. Stops when the true objective improves by less
/// than objective_tol or after max_outer_iters; returns the best iterate.
MorphUnit train_morph_unit(MorphKind kind, const TrainingSet& t,
                           const CcpConfig& cfg, CcpTrace* trace = nullptr);

/// Exact minimizer over [0, 1] of the total hinge loss of the convex mix
/// beta * dilation + (1 - beta) * erosion. The loss is piecewise linear in
/// beta, so candidate breakpoints are enumerated; the smallest minimizer is
/// returned.
double fit_beta(const MorphUnit& erosion_unit, const MorphUnit& dilation_unit,
                const TrainingSet& t);

/// Greedy assembly: trains the erosion and dilation units independently, then
/// fits beta.
DepModel train_dep(const TrainingSet& t, const CcpConfig& cfg);

}  // namespace rdep
