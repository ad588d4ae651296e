#include "rdep/reduced.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "rdep/errors.hpp"

namespace rdep {

int ClassMap::to_sign(const std::string& label) const {
    if (label == negative_label) return -1;
    if (label == positive_label) return +1;
    throw std::invalid_argument("class map: unknown label '" + label + "'");
}

const std::string& ClassMap::from_sign(int sign) const {
    return sign >= 0 ? positive_label : negative_label;
}

ClassMap make_class_map(const std::vector<std::string>& labels) {
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != 2)
        throw std::invalid_argument("class map: expected exactly two distinct labels, got " +
                                    std::to_string(uniq.size()));
    auto it = uniq.begin();
    ClassMap out;
    out.negative_label = *it++;
    out.positive_label = *it;
    return out;
}

KernelSpec resolve_kernel(KernelSpec spec, const Matrix& fit_data) {
    if (spec.kind == KernelKind::Gaussian && spec.gaussian_sigma2 <= 0.0)
        spec.gaussian_sigma2 = scaled_gaussian_sigma2(fit_data);
    return spec;
}

RhoMap build_rho_ensemble(const TrainingSet& t, const std::vector<KernelSpec>& kernels,
                          double box_c) {
    if (kernels.empty())
        throw std::invalid_argument("build_rho_ensemble: at least one kernel required");
    RhoMap map;
    map.construction = RhoConstruction::Ensemble;
    for (const auto& k : kernels)
        map.estimators.push_back(train_svc(t, resolve_kernel(k, t.x), box_c));
    return map;
}

RhoMap build_rho_bagging(const TrainingSet& t, const KernelSpec& base,
                         int n_estimators, std::uint64_t seed, double box_c) {
    if (n_estimators < 1)
        throw std::invalid_argument("build_rho_bagging: need at least one estimator");
    const std::size_t m = t.size();
    RhoMap map;
    map.construction = RhoConstruction::Bagging;
    for (int e = 0; e < n_estimators; ++e) {
        // Independent substream per estimator, so the map does not depend on
        // the order estimators are fitted in.
        std::seed_seq seq{static_cast<std::uint64_t>(seed),
                          static_cast<std::uint64_t>(e)};
        std::mt19937_64 rng(seq);
        TrainingSet resample;
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            Matrix rx(0, t.dim());
            std::vector<int> ry;
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t pick = static_cast<std::size_t>(rng() % m);
                rx.push_row(t.x.row(pick));
                ry.push_back(t.labels[pick]);
            }
            bool has_neg = false, has_pos = false;
            for (int d : ry) (d < 0 ? has_neg : has_pos) = true;
            if (has_neg && has_pos) {
                resample = make_training_set(std::move(rx), std::move(ry));
                ok = true;
            }
        }
        if (!ok)
            throw TrainingError("build_rho_bagging: resampling kept producing a single class");
        map.estimators.push_back(
            train_svc(resample, resolve_kernel(base, resample.x), box_c));
    }
    return map;
}

std::vector<double> apply_rho(const RhoMap& map, std::span<const double> x) {
    if (map.estimators.empty())
        throw std::invalid_argument("apply_rho: empty map");
    std::vector<double> out(map.estimators.size());
    for (std::size_t k = 0; k < map.estimators.size(); ++k)
        out[k] = svc_decision(map.estimators[k], x, /*include_intercept=*/false);
    return out;
}

RdepStrategy RdepStrategy::ensemble(std::vector<KernelSpec> kernels) {
    RdepStrategy s;
    s.construction = RhoConstruction::Ensemble;
    s.ensemble_kernels = std::move(kernels);
    return s;
}

RdepStrategy RdepStrategy::bagging(KernelSpec base, int n_estimators, std::uint64_t seed) {
    RdepStrategy s;
    s.construction = RhoConstruction::Bagging;
    s.bagging_base = base;
    s.bagging_estimators = n_estimators;
    s.bagging_seed = seed;
    return s;
}

RDepModel train_rdep(const Matrix& x, const std::vector<std::string>& labels,
                     const RdepStrategy& strategy, const CcpConfig& cfg, double box_c) {
    if (x.rows != labels.size())
        throw std::invalid_argument("train_rdep: row/label count mismatch");
    RDepModel model;
    model.classes = make_class_map(labels);

    std::vector<int> signs(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        signs[i] = model.classes.to_sign(labels[i]);
    TrainingSet ts = make_training_set(x, signs);

    model.rho = strategy.construction == RhoConstruction::Ensemble
                    ? build_rho_ensemble(ts, strategy.ensemble_kernels, box_c)
                    : build_rho_bagging(ts, strategy.bagging_base,
                                        strategy.bagging_estimators,
                                        strategy.bagging_seed, box_c);

    Matrix transformed(0, model.rho.output_dim());
    for (std::size_t i = 0; i < ts.size(); ++i)
        transformed.push_row(apply_rho(model.rho, ts.x.row(i)));

    model.rho_standardizer = fit_standardizer(transformed);
    Matrix standardized = apply_standardizer(model.rho_standardizer, transformed);
    model.dep = train_dep(make_training_set(std::move(standardized), signs), cfg);
    return model;
}

double rdep_decision(const RDepModel& model, std::span<const double> x) {
    auto z = apply_standardizer(model.rho_standardizer, apply_rho(model.rho, x));
    return dep_decision(model.dep, z);
}

std::string rdep_classify(const RDepModel& model, std::span<const double> x) {
    auto z = apply_standardizer(model.rho_standardizer, apply_rho(model.rho, x));
    return model.classes.from_sign(dep_classify(model.dep, z));
}

}  // namespace rdep
