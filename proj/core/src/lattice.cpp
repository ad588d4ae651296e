#include "rdep/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdep {

namespace {

void check_dims(const MorphUnit& unit, std::span<const double> x) {
    if (unit.weights.empty())
        throw std::invalid_argument("morph unit has no weights");
    if (unit.weights.size() != x.size())
        throw std::invalid_argument("morph unit / input dimension mismatch");
}

}  // namespace

MorphUnit make_morph_unit(MorphKind kind, std::vector<double> weights) {
    if (weights.empty())
        throw std::invalid_argument("morph unit needs at least one weight");
    for (double w : weights)
        if (!std::isfinite(w))
            throw std::invalid_argument("morph unit weights must be finite");
    return MorphUnit{kind, std::move(weights)};
}

double erode(const MorphUnit& unit, std::span<const double> x) {
    if (unit.kind != MorphKind::Erosion)
        throw std::invalid_argument("erode: unit is not an erosion");
    check_dims(unit, x);
    double acc = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j)
        acc = std::min(acc, unit.weights[j] + x[j]);
    return acc;
}

double dilate(const MorphUnit& unit, std::span<const double> x) {
    if (unit.kind != MorphKind::Dilation)
        throw std::invalid_argument("dilate: unit is not a dilation");
    check_dims(unit, x);
    double acc = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j)
        acc = std::max(acc, unit.weights[j] + x[j]);
    return acc;
}

DepModel make_dep_model(MorphUnit erosion_unit, MorphUnit dilation_unit, double beta) {
    if (erosion_unit.kind != MorphKind::Erosion ||
        dilation_unit.kind != MorphKind::Dilation)
        throw std::invalid_argument("dep model units have wrong kinds");
    if (erosion_unit.dim() != dilation_unit.dim())
        throw std::invalid_argument("dep model units disagree on dimension");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("dep model beta must lie in [0, 1]");
    return DepModel{std::move(erosion_unit), std::move(dilation_unit), beta};
}

double dep_decision(const DepModel& model, std::span<const double> x) {
    return model.beta * dilate(model.dilation_unit, x) +
           (1.0 - model.beta) * erode(model.erosion_unit, x);
}

int dep_classify(const DepModel& model, std::span<const double> x) {
    return dep_decision(model, x) >= 0.0 ? +1 : -1;
}

bool in_region(const MorphUnit& unit, std::span<const double> x) {
    check_dims(unit, x);
    if (unit.kind == MorphKind::Erosion) {
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!(x[j] >= -unit.weights[j])) return false;
        return true;
    }
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(x[j] < -unit.weights[j])) return false;
    return true;
}

}  // namespace rdep
