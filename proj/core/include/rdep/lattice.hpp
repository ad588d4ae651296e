#pragma once

#include <span>
#include <vector>

namespace rdep {

/// A morphological unit computes either the min-plus form
///   min_j (weights[j] + x[j])        (erosion)
/// or the max-plus form
///   max_j (weights[j] + x[j])        (dilation)
/// over real vectors. Weights are finite; the extended reals only appear as
/// fold identities inside the reductions.
enum class MorphKind { Erosion, Dilation };

struct MorphUnit {
    MorphKind kind = MorphKind::Erosion;
    std::vector<double> weights;

    std::size_t dim() const { return weights.size(); }
};

/// Builds a unit after checking the weights are finite and non-empty.
MorphUnit make_morph_unit(MorphKind kind, std::vector<double> weights);

/// min_j (m_j + x_j). Throws std::invalid_argument on kind or size mismatch.
double erode(const MorphUnit& unit, std::span<const double> x);

/// max_j (w_j + x_j). Throws std::invalid_argument on kind or size mismatch.
double dilate(const MorphUnit& unit, std::span<const double> x);

/// Dilation-erosion perceptron: a convex combination of one erosion-based and
/// one dilation-based unit sharing the input dimension.
struct DepModel {
    MorphUnit erosion_unit;
    MorphUnit dilation_unit;
    double beta = 0.0;  // in [0, 1]; 0 selects the erosion, 1 the dilation

    std::size_t dim() const { return erosion_unit.dim(); }
};

/// Validates invariants (unit kinds, matching dimensions, beta in [0,1]).
DepModel make_dep_model(MorphUnit erosion_unit, MorphUnit dilation_unit, double beta);

/// Decision value beta * dilate(w, x) + (1 - beta) * erode(m, x).
double dep_decision(const DepModel& model, std::span<const double> x);

/// Hard-limited decision: sign of dep_decision with sgn(0) = +1.
/// Always returns exactly -1 or +1.
int dep_classify(const DepModel& model, std::span<const double> x);

/// Decision-region membership. For an erosion unit, tests x_j >= -m_j for all
/// j (the region classified +1); for a dilation unit, tests x_j < -w_j for all
/// j (the region classified -1).
bool in_region(const MorphUnit& unit, std::span<const double> x);

}  // namespace rdep
