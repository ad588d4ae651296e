#include "rdep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rdep/errors.hpp"
#include "rdep/metrics.hpp"

namespace rdep {

namespace {

std::vector<KernelSpec> ensemble_kernels() {
    return {KernelSpec::gaussian(0.0),  // width resolved at fit time
            KernelSpec::linear(), KernelSpec::polynomial(3)};
}

}  // namespace

ModelFile train_model_kind(const std::string& kind, const Matrix& x,
                           const std::vector<std::string>& labels,
                           const TrainParams& params) {
    ModelFile out;
    out.kind = kind;
    out.classes = make_class_map(labels);

    std::vector<int> signs(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        signs[i] = out.classes.to_sign(labels[i]);

    if (kind == "dep") {
        TrainingSet ts = make_training_set(x, signs);
        out.dep = train_dep(ts, params.ccp);
        return out;
    }
    if (kind == "rdep-ensemble") {
        out.rdep = train_rdep(x, labels, RdepStrategy::ensemble(ensemble_kernels()),
                              params.ccp, params.box_c);
        return out;
    }
    if (kind == "rdep-bagging") {
        out.rdep = train_rdep(
            x, labels,
            RdepStrategy::bagging(KernelSpec::gaussian(0.0), params.bag_estimators,
                                  params.seed),
            params.ccp, params.box_c);
        return out;
    }

    TrainingSet ts = make_training_set(x, signs);
    if (kind == "svc-linear") {
        out.svcs.push_back(train_svc(ts, KernelSpec::linear(), params.box_c));
    } else if (kind == "svc-rbf") {
        out.svcs.push_back(
            train_svc(ts, resolve_kernel(KernelSpec::gaussian(0.0), ts.x), params.box_c));
    } else if (kind == "svc-poly") {
        out.svcs.push_back(train_svc(ts, KernelSpec::polynomial(3), params.box_c));
    } else if (kind == "svc-vote") {
        for (const auto& k : ensemble_kernels())
            out.svcs.push_back(train_svc(ts, resolve_kernel(k, ts.x), params.box_c));
    } else if (kind == "svc-bag") {
        RhoMap bag = build_rho_bagging(ts, KernelSpec::gaussian(0.0),
                                       params.bag_estimators, params.seed, params.box_c);
        out.svcs = std::move(bag.estimators);
    } else {
        throw std::invalid_argument("unknown model kind '" + kind + "'");
    }
    return out;
}

std::vector<ClassifierSpec> default_classifier_suite() {
    TrainParams p;
    return {
        {"Linear SVC", "svc-linear", p},   {"RBF SVC", "svc-rbf", p},
        {"Poly SVC", "svc-poly", p},       {"SVC Ensemble", "svc-vote", p},
        {"Bagging SVC", "svc-bag", p},     {"DEP", "dep", p},
        {"Ensemble r-DEP", "rdep-ensemble", p}, {"Bagging r-DEP", "rdep-bagging", p},
    };
}

BenchmarkReport run_benchmark(const std::vector<Dataset>& datasets,
                              const std::vector<ClassifierSpec>& specs,
                              std::size_t k, std::uint64_t seed,
                              double confidence, int jobs) {
    if (datasets.empty()) throw std::invalid_argument("run_benchmark: no datasets");
    if (specs.empty()) throw std::invalid_argument("run_benchmark: no classifiers");
    if (jobs < 1) jobs = 1;

    BenchmarkReport rep;
    rep.folds = k;
    rep.seed = seed;
    rep.confidence = confidence;
    for (const auto& d : datasets) rep.dataset_names.push_back(d.name);
    for (const auto& s : specs) rep.classifier_names.push_back(s.name);
    rep.fold_scores.assign(datasets.size(),
                           std::vector<std::vector<double>>(
                               specs.size(), std::vector<double>(k, 0.0)));

    struct Task {
        std::size_t dataset;
        std::size_t fold;
    };
    std::vector<Task> tasks;
    std::vector<Dataset> prepared;
    std::vector<std::vector<FoldSplit>> splits;
    std::vector<ClassMap> class_maps;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        prepared.push_back(impute_mean(datasets[d]));
        splits.push_back(stratified_kfold(prepared[d].labels, k, seed));
        class_maps.push_back(make_class_map(prepared[d].labels));
        for (std::size_t f = 0; f < k; ++f) tasks.push_back({d, f});
    }

    auto run_task = [&](const Task& task) {
        const Dataset& data = prepared[task.dataset];
        const FoldSplit& split = splits[task.dataset][task.fold];
        const ClassMap& cmap = class_maps[task.dataset];

        Matrix xtr = data.x.select_rows(split.train);
        Matrix xte = data.x.select_rows(split.test);
        std::vector<std::string> ytr;
        for (auto i : split.train) ytr.push_back(data.labels[i]);
        std::vector<int> yte;
        for (auto i : split.test) yte.push_back(cmap.to_sign(data.labels[i]));

        Standardizer scaler = fit_standardizer(xtr);
        Matrix xtr_s = apply_standardizer(scaler, xtr);
        Matrix xte_s = apply_standardizer(scaler, xte);

        for (std::size_t c = 0; c < specs.size(); ++c) {
            ModelFile model = train_model_kind(specs[c].kind, xtr_s, ytr, specs[c].params);
            std::vector<int> pred(xte_s.rows);
            for (std::size_t i = 0; i < xte_s.rows; ++i)
                pred[i] = cmap.to_sign(predict_label(model, xte_s.row(i)));
            rep.fold_scores[task.dataset][c][task.fold] = balanced_accuracy(yte, pred);
        }
    };

    if (jobs == 1 || tasks.size() <= 1) {
        for (const auto& t : tasks) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                run_task(tasks[i]);
            }
        };
        std::vector<std::thread> pool;
        int count = std::min<int>(jobs, static_cast<int>(tasks.size()));
        for (int w = 0; w < count; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    rep.mean_score.assign(datasets.size(), std::vector<double>(specs.size(), 0.0));
    rep.std_score.assign(datasets.size(), std::vector<double>(specs.size(), 0.0));
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (std::size_t c = 0; c < specs.size(); ++c) {
            const auto& s = rep.fold_scores[d][c];
            double m = 0.0;
            for (double v : s) m += v;
            m /= static_cast<double>(s.size());
            double var = 0.0;
            for (double v : s) var += (v - m) * (v - m);
            var /= static_cast<double>(s.size());
            rep.mean_score[d][c] = m;
            rep.std_score[d][c] = std::sqrt(var);
        }
    }

    // Pairwise one-sided tests over the pooled per-dataset means. With a
    // single dataset there is nothing to pair.
    const std::size_t nc = specs.size();
    rep.beats.assign(nc, std::vector<char>(nc, 0));
    if (datasets.size() >= 2) {
        for (std::size_t a = 0; a < nc; ++a) {
            std::vector<double> va;
            for (std::size_t d = 0; d < datasets.size(); ++d)
                va.push_back(rep.mean_score[d][a]);
            for (std::size_t b = 0; b < nc; ++b) {
                if (a == b) continue;
                std::vector<double> vb;
                for (std::size_t d = 0; d < datasets.size(); ++d)
                    vb.push_back(rep.mean_score[d][b]);
                rep.beats[a][b] = paired_t_test(va, vb, confidence).a_beats_b ? 1 : 0;
            }
        }
    }
    return rep;
}

std::string BenchmarkReport::table_text() const {
    std::ostringstream os;
    std::size_t name_w = 12;
    for (const auto& d : dataset_names) name_w = std::max(name_w, d.size() + 2);
    os << std::left << std::setw(static_cast<int>(name_w)) << "dataset";
    for (const auto& c : classifier_names)
        os << std::setw(18) << c.substr(0, 17);
    os << '\n';
    for (std::size_t d = 0; d < dataset_names.size(); ++d) {
        os << std::setw(static_cast<int>(name_w)) << dataset_names[d];
        for (std::size_t c = 0; c < classifier_names.size(); ++c) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(3) << mean_score[d][c] << " +- "
                 << std::setprecision(3) << std_score[d][c];
            os << std::setw(18) << cell.str();
        }
        os << '\n';
    }
    os << "\nfolds=" << folds << " seed=" << seed << " confidence=" << confidence
       << "; pairwise tests pool per-dataset mean scores\n";
    return os.str();
}

std::string BenchmarkReport::scores_csv() const {
    std::ostringstream os;
    os << "classifier,dataset,fold,score\n";
    os << std::setprecision(17);
    for (std::size_t c = 0; c < classifier_names.size(); ++c)
        for (std::size_t d = 0; d < dataset_names.size(); ++d)
            for (std::size_t f = 0; f < fold_scores[d][c].size(); ++f)
                os << classifier_names[c] << ',' << dataset_names[d] << ',' << f
                   << ',' << fold_scores[d][c][f] << '\n';
    return os.str();
}

std::string BenchmarkReport::dot_text() const {
    const std::size_t n = classifier_names.size();
    // Drop edges implied by longer dominance paths so the graph reads as a
    // Hasse diagram. The relation is acyclic: differences around any cycle
    // would have to sum to zero while each stays positive.
    std::vector<std::vector<char>> keep = beats;
    auto reachable = [&](std::size_t from, std::size_t to,
                         std::size_t skip_a, std::size_t skip_b) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (!beats[v][w] || (v == skip_a && w == skip_b) || seen[w]) continue;
                if (w == to) return true;
                seen[w] = 1;
                stack.push_back(w);
            }
        }
        return false;
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (beats[a][b] && reachable(a, b, a, b)) keep[a][b] = 0;

    std::ostringstream os;
    os << "digraph dominance {\n";
    for (std::size_t c = 0; c < n; ++c)
        os << "  n" << c << " [label=\"" << classifier_names[c] << "\"];\n";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (keep[a][b]) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace rdep
