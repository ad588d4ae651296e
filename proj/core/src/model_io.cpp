#include "rdep/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "rdep/errors.hpp"

namespace rdep {

namespace {

using json = nlohmann::json;

json standardizer_to_json(const Standardizer& s) {
    return json{{"mean", s.mean}, {"stddev", s.stddev}};
}

Standardizer standardizer_from_json(const json& j) {
    Standardizer s;
    s.mean = j.at("mean").get<std::vector<double>>();
    s.stddev = j.at("stddev").get<std::vector<double>>();
    if (s.mean.size() != s.stddev.size())
        throw LoadError("model: standardizer mean/stddev size mismatch");
    return s;
}

json svc_to_json(const SvcModel& m) {
    json kernel;
    switch (m.kernel.kind) {
        case KernelKind::Linear: kernel["kind"] = "linear"; break;
        case KernelKind::Gaussian:
            kernel["kind"] = "gaussian";
            kernel["sigma2"] = m.kernel.gaussian_sigma2;
            break;
        case KernelKind::Polynomial:
            kernel["kind"] = "polynomial";
            kernel["degree"] = m.kernel.poly_degree;
            break;
    }
    json sv = json::array();
    for (std::size_t i = 0; i < m.support_vectors.rows; ++i) {
        auto row = m.support_vectors.row(i);
        sv.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return json{{"kernel", kernel},
                {"box_c", m.box_c},
                {"intercept", m.intercept},
                {"dim", m.support_vectors.cols},
                {"dual_coeffs", m.dual_coeffs},
                {"support_vectors", sv}};
}

SvcModel svc_from_json(const json& j) {
    SvcModel m;
    const auto& kernel = j.at("kernel");
    std::string kind = kernel.at("kind").get<std::string>();
    if (kind == "linear") {
        m.kernel = KernelSpec::linear();
    } else if (kind == "gaussian") {
        m.kernel = KernelSpec::gaussian(kernel.at("sigma2").get<double>());
    } else if (kind == "polynomial") {
        m.kernel = KernelSpec::polynomial(kernel.at("degree").get<int>());
    } else {
        throw LoadError("model: unknown kernel kind '" + kind + "'");
    }
    m.box_c = j.at("box_c").get<double>();
    m.intercept = j.at("intercept").get<double>();
    m.support_vectors = Matrix(0, j.at("dim").get<std::size_t>());
    for (const auto& row : j.at("support_vectors")) {
        auto vals = row.get<std::vector<double>>();
        m.support_vectors.push_row(vals);
    }
    m.dual_coeffs = j.at("dual_coeffs").get<std::vector<double>>();
    if (m.dual_coeffs.size() != m.support_vectors.rows)
        throw LoadError("model: dual coefficient count mismatch");
    return m;
}

json dep_to_json(const DepModel& m) {
    return json{{"erosion", m.erosion_unit.weights},
                {"dilation", m.dilation_unit.weights},
                {"beta", m.beta}};
}

DepModel dep_from_json(const json& j) {
    return make_dep_model(
        make_morph_unit(MorphKind::Erosion, j.at("erosion").get<std::vector<double>>()),
        make_morph_unit(MorphKind::Dilation, j.at("dilation").get<std::vector<double>>()),
        j.at("beta").get<double>());
}

json rdep_to_json(const RDepModel& m) {
    json ests = json::array();
    for (const auto& e : m.rho.estimators) ests.push_back(svc_to_json(e));
    return json{{"construction",
                 m.rho.construction == RhoConstruction::Ensemble ? "ensemble" : "bagging"},
                {"estimators", ests},
                {"rho_standardizer", standardizer_to_json(m.rho_standardizer)},
                {"dep", dep_to_json(m.dep)}};
}

RDepModel rdep_from_json(const json& j, const ClassMap& classes) {
    RDepModel m;
    m.classes = classes;
    std::string c = j.at("construction").get<std::string>();
    if (c != "ensemble" && c != "bagging")
        throw LoadError("model: unknown rho construction '" + c + "'");
    m.rho.construction =
        c == "ensemble" ? RhoConstruction::Ensemble : RhoConstruction::Bagging;
    for (const auto& e : j.at("estimators")) m.rho.estimators.push_back(svc_from_json(e));
    if (m.rho.estimators.empty()) throw LoadError("model: rho has no estimators");
    m.rho_standardizer = standardizer_from_json(j.at("rho_standardizer"));
    m.dep = dep_from_json(j.at("dep"));
    if (m.dep.dim() != m.rho.output_dim())
        throw LoadError("model: dep dimension disagrees with rho length");
    return m;
}

}  // namespace

std::string model_to_json(const ModelFile& model) {
    json j;
    j["format"] = "rdep-model";
    j["version"] = 1;
    j["kind"] = model.kind;
    j["feature_standardizer"] = model.feature_standardizer
                                    ? standardizer_to_json(*model.feature_standardizer)
                                    : json(nullptr);
    j["classes"] = json{{"negative", model.classes.negative_label},
                        {"positive", model.classes.positive_label}};
    if (model.dep) j["dep"] = dep_to_json(*model.dep);
    if (model.rdep) j["rdep"] = rdep_to_json(*model.rdep);
    if (!model.svcs.empty()) {
        json svcs = json::array();
        for (const auto& s : model.svcs) svcs.push_back(svc_to_json(s));
        j["svcs"] = svcs;
    }
    return j.dump(2);
}

ModelFile model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(std::string("model: invalid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "rdep-model")
            throw LoadError("model: unrecognized format tag");
        if (j.at("version").get<int>() != 1)
            throw LoadError("model: unsupported version");
        ModelFile m;
        m.kind = j.at("kind").get<std::string>();
        if (!j.at("feature_standardizer").is_null())
            m.feature_standardizer = standardizer_from_json(j.at("feature_standardizer"));
        m.classes.negative_label = j.at("classes").at("negative").get<std::string>();
        m.classes.positive_label = j.at("classes").at("positive").get<std::string>();
        if (j.contains("dep")) m.dep = dep_from_json(j.at("dep"));
        if (j.contains("rdep")) m.rdep = rdep_from_json(j.at("rdep"), m.classes);
        if (j.contains("svcs"))
            for (const auto& e : j.at("svcs")) m.svcs.push_back(svc_from_json(e));
        return m;
    } catch (const json::exception& e) {
        throw LoadError(std::string("model: missing or mistyped field: ") + e.what());
    }
}

void save_model(const ModelFile& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write '" + path + "'");
    out << model_to_json(model) << '\n';
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return model_from_json(text);
}

std::string predict_label(const ModelFile& model, std::span<const double> row) {
    std::vector<double> z(row.begin(), row.end());
    if (model.feature_standardizer)
        z = apply_standardizer(*model.feature_standardizer, z);

    if (model.kind == "dep") {
        if (!model.dep) throw LoadError("model: dep payload missing");
        return model.classes.from_sign(dep_classify(*model.dep, z));
    }
    if (model.kind.rfind("rdep-", 0) == 0) {
        if (!model.rdep) throw LoadError("model: rdep payload missing");
        return rdep_classify(*model.rdep, z);
    }
    if (model.svcs.empty()) throw LoadError("model: svc payload missing");
    if (model.svcs.size() == 1) {
        double dec = svc_decision(model.svcs.front(), z, /*include_intercept=*/true);
        return model.classes.from_sign(dec >= 0.0 ? +1 : -1);
    }
    int votes = 0;
    for (const auto& svc : model.svcs)
        votes += svc_decision(svc, z, true) >= 0.0 ? +1 : -1;
    return model.classes.from_sign(votes > 0 ? +1 : -1);
}

}  // namespace rdep
