#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdep/dataset.hpp"
#include "rdep/reduced.hpp"

namespace rdep {

/// On-disk model document: one trained classifier of any supported kind plus
/// the preprocessing needed to replay its decisions exactly.
struct ModelFile {
    // one of: dep, rdep-ensemble, rdep-bagging, svc-linear, svc-rbf,
    // svc-poly, svc-vote, svc-bag
    std::string kind;
    std::optional<Standardizer> feature_standardizer;
    ClassMap classes;

    std::optional<DepModel> dep;    // kind == dep
    std::optional<RDepModel> rdep;  // kind == rdep-*
    std::vector<SvcModel> svcs;     // kind == svc-*
};

/// Applies the stored preprocessing and classifier to one raw feature row.
/// Ties in even voting committees go to the negative class.
std::string predict_label(const ModelFile& model, std::span<const double> row);

/// Versioned self-describing JSON text. Numeric fields round-trip exactly,
/// so save -> load -> predict reproduces decisions bit for bit.
void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

std::string model_to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);

}  // namespace rdep
