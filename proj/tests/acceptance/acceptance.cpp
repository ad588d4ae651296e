// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values and tolerances are pinned in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <vector>

#include "rdep/harness.hpp"
#include "rdep/metrics.hpp"
#include "rdep/model_io.hpp"
#include "support/fixtures.hpp"
#include "support/lp_oracle.hpp"
#include "support/qp_oracle.hpp"
#include "support/random_gen.hpp"

using namespace rdep;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// The double-moon experiments mirror the reference protocol: the generated
// arcs are reflected through the origin and the unshifted arc plays the
// negative class, so the positive moon sits componentwise high.
struct MoonSplit {
    TrainingSet train;
    TrainingSet test;
};

MoonSplit moon_experiment(std::uint64_t train_seed, std::uint64_t test_seed,
                          bool swap_labels) {
    auto build = [&](std::size_t n, std::uint64_t seed) {
        Dataset d = make_moons(n, 0.1, seed);
        Matrix x = d.x;
        for (auto& v : x.data) v = -v;
        std::vector<int> y(d.labels.size());
        for (std::size_t i = 0; i < d.labels.size(); ++i) {
            int sign = d.labels[i] == "1" ? -1 : +1;
            y[i] = swap_labels ? -sign : sign;
        }
        return make_training_set(std::move(x), std::move(y));
    };
    return {build(1000, train_seed), build(2000, test_seed)};
}

double dep_accuracy(const DepModel& model, const TrainingSet& t) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        hit += dep_classify(model, t.x.row(i)) == t.labels[i];
    return static_cast<double>(hit) / static_cast<double>(t.size());
}

std::vector<std::string> sign_tags(const TrainingSet& t) {
    std::vector<std::string> labs(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        labs[i] = t.labels[i] < 0 ? "a" : "b";  // sorted map keeps the signs
    return labs;
}

double model_accuracy(const ModelFile& model, const TrainingSet& t) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        int sign = model.classes.to_sign(predict_label(model, t.x.row(i)));
        hit += sign == t.labels[i];
    }
    return static_cast<double>(hit) / static_cast<double>(t.size());
}

constexpr std::uint64_t kMoonTrainSeed = 22;
constexpr std::uint64_t kMoonTestSeed = 1022;

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    MoonSplit split = moon_experiment(kMoonTrainSeed, kMoonTestSeed, false);
    DepModel model = train_dep(split.train, CcpConfig{});
    double acc = dep_accuracy(model, split.test);
    double secs = elapsed_s(t0);

    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "test acc %.4f in [0.80,0.86], beta %.4f within 0.05 of 1, %.0fs < 180s",
                  acc, model.beta, secs);
    bool pass = acc >= 0.80 && acc <= 0.86 && std::abs(model.beta - 1.0) <= 0.05 &&
                secs < 180.0;
    report(1, "double-moon DEP", pass, detail);

    // Companion check from the trainer contract: the dilation weights stay
    // near the reported pair for this protocol.
    bool w_ok = std::abs(model.dilation_unit.weights[0] - (-1.20)) <= 0.2 &&
                std::abs(model.dilation_unit.weights[1] - 0.25) <= 0.2;
    std::snprintf(detail, sizeof detail, "w = (%.3f, %.3f) within 0.2 of (-1.20, 0.25)",
                  model.dilation_unit.weights[0], model.dilation_unit.weights[1]);
    report(1, "double-moon dilation weights", w_ok, detail);
}

void criterion_2() {
    MoonSplit split = moon_experiment(kMoonTrainSeed, kMoonTestSeed, true);
    DepModel dep = train_dep(split.train, CcpConfig{});
    double dep_acc = dep_accuracy(dep, split.test);

    auto tags = sign_tags(split.train);
    std::vector<int> yte = split.test.labels;

    TrainParams params;
    ModelFile ens = train_model_kind("rdep-ensemble", split.train.x, tags, params);
    ModelFile bag = train_model_kind("rdep-bagging", split.train.x, tags, params);
    double ens_acc = model_accuracy(ens, split.test);
    double bag_acc = model_accuracy(bag, split.test);

    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "swapped DEP %.4f <= 0.70; ensemble %.4f and bagging %.4f >= 0.98",
                  dep_acc, ens_acc, bag_acc);
    report(2, "double-moon label inversion", dep_acc <= 0.70 && ens_acc >= 0.98 &&
                                                 bag_acc >= 0.98, detail);
}

void criterion_3() {
    Dataset train = load_csv(testsupport::data_file("ripley_train.csv"), "class");
    Dataset test = load_csv(testsupport::data_file("ripley_test.csv"), "class");
    TrainingSet ttr = testsupport::to_training_set(train);
    TrainingSet tte = testsupport::to_training_set(test);

    DepModel dep = train_dep(ttr, CcpConfig{});
    double acc = dep_accuracy(dep, tte);
    bool weights_ok = std::abs(dep.erosion_unit.weights[0] - 0.53) <= 0.15 &&
                      std::abs(dep.erosion_unit.weights[1] + 0.35) <= 0.15 &&
                      std::abs(dep.dilation_unit.weights[0] + 0.57) <= 0.15 &&
                      std::abs(dep.dilation_unit.weights[1] + 0.64) <= 0.15;
    char detail[512];
    std::snprintf(detail, sizeof detail,
                  "test acc %.4f in 0.90+-0.03; m=(%.3f,%.3f) ~ (0.53,-0.35), "
                  "w=(%.3f,%.3f) ~ (-0.57,-0.64) within 0.15",
                  acc, dep.erosion_unit.weights[0], dep.erosion_unit.weights[1],
                  dep.dilation_unit.weights[0], dep.dilation_unit.weights[1]);
    report(3, "ripley DEP", std::abs(acc - 0.90) <= 0.03 && weights_ok, detail);

    RDepModel rdep = train_rdep(
        train.x, train.labels,
        RdepStrategy::ensemble({KernelSpec::gaussian(0.0), KernelSpec::linear()}),
        CcpConfig{}, 1.0);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < tte.size(); ++i)
        hit += rdep.classes.to_sign(rdep_classify(rdep, tte.x.row(i))) == tte.labels[i];
    double racc = static_cast<double>(hit) / static_cast<double>(tte.size());
    std::snprintf(detail, sizeof detail, "test acc %.4f in 0.91+-0.03", racc);
    report(3, "ripley ensemble r-DEP", std::abs(racc - 0.91) <= 0.03, detail);
}

void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    struct Target {
        const char* file;
        const char* classifier;
        double value;
    };
    const std::vector<Target> targets = {
        {"banknote.csv", "Ensemble r-DEP", 1.00},
        {"diabetes.csv", "Ensemble r-DEP", 0.74},
        {"sonar.csv", "Bagging r-DEP", 0.87},
        {"blood_transfusion.csv", "Ensemble r-DEP", 0.66},
        {"haberman.csv", "Ensemble r-DEP", 0.60},
    };

    std::vector<Dataset> datasets;
    for (const auto& t : targets) {
        Dataset d = load_csv(testsupport::data_file(t.file), "class");
        d.name = t.file;
        datasets.push_back(impute_mean(d));
    }
    BenchmarkReport rep =
        run_benchmark(datasets, default_classifier_suite(), 10, 1, 0.99, 1);

    bool all = true;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        std::size_t c = 0;
        while (rep.classifier_names[c] != targets[i].classifier) ++c;
        double got = rep.mean_score[i][c];
        bool ok = std::abs(got - targets[i].value) <= 0.05;
        all = all && ok;
        char detail[256];
        std::snprintf(detail, sizeof detail, "%s %s: %.4f vs %.2f +- 0.05",
                      targets[i].file, targets[i].classifier, got, targets[i].value);
        report(4, "benchmark target", ok, detail);
    }
    double secs = elapsed_s(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "suite wall time %.0fs < 1800s", secs);
    report(4, "benchmark runtime", secs < 1800.0, detail);
    (void)all;
}

// ---- criterion 5: property batteries ----

bool lattice_properties() {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t n = 1 + rng() % 6;
        auto mw = testsupport::uniform_vector(rng, n, -5, 5);
        auto x = testsupport::uniform_vector(rng, n, -5, 5);
        auto y = testsupport::uniform_vector(rng, n, -5, 5);
        MorphUnit e = make_morph_unit(MorphKind::Erosion, mw);
        MorphUnit d = make_morph_unit(MorphKind::Dilation, mw);
        std::vector<double> lo(n), hi(n), above(n);
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = std::min(x[j], y[j]);
            hi[j] = std::max(x[j], y[j]);
            above[j] = x[j] + std::abs(y[j]);
        }
        if (std::abs(erode(e, lo) - std::min(erode(e, x), erode(e, y))) > 1e-12)
            return false;
        if (std::abs(dilate(d, hi) - std::max(dilate(d, x), dilate(d, y))) > 1e-12)
            return false;
        if (erode(e, x) > erode(e, above) + 1e-12) return false;
        if (dilate(d, x) > dilate(d, above) + 1e-12) return false;
    }
    return true;
}

bool ccp_monotone() {
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t per = 3 + rng() % 8, dim = 1 + rng() % 3;
        Matrix x(0, dim);
        std::vector<int> y;
        for (std::size_t i = 0; i < per; ++i) {
            x.push_row(testsupport::uniform_vector(rng, dim, -1.5, 0.4));
            y.push_back(-1);
        }
        for (std::size_t i = 0; i < per; ++i) {
            x.push_row(testsupport::uniform_vector(rng, dim, -0.4, 1.5));
            y.push_back(+1);
        }
        TrainingSet t = make_training_set(std::move(x), std::move(y));
        for (MorphKind kind : {MorphKind::Erosion, MorphKind::Dilation}) {
            CcpTrace trace;
            train_morph_unit(kind, t, CcpConfig{}, &trace);
            for (std::size_t i = 1; i < trace.objectives.size(); ++i)
                if (trace.objectives[i] > trace.objectives[i - 1] + 1e-9) return false;
        }
    }
    return true;
}

bool lp_oracle_battery() {
    std::mt19937_64 rng(79);
    int checked = 0;
    while (checked < 100) {
        std::size_t n = 2 + rng() % 5, m = 1 + rng() % 8;
        LinearProgram lp(n);
        for (std::size_t j = 0; j < n; ++j) {
            lp.objective[j] = testsupport::uniform(rng, -2, 2);
            double lo = testsupport::uniform(rng, -3, 0);
            lp.set_bounds(j, lo, lo + testsupport::uniform(rng, 0.5, 5));
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<LinearProgram::Term> terms;
            for (std::size_t j = 0; j < n; ++j) {
                double c = testsupport::uniform(rng, -1, 1);
                if (std::abs(c) > 0.2) terms.push_back({j, c});
            }
            if (terms.empty()) terms.push_back({rng() % n, 1.0});
            lp.add_row(std::move(terms), testsupport::uniform(rng, -1, 3));
        }
        auto oracle = testsupport::lp_vertex_oracle(lp);
        auto sol = solve_lp(lp);
        if (!oracle.feasible) {
            if (sol.status != LpStatus::Infeasible) return false;
            continue;
        }
        if (sol.status != LpStatus::Optimal) return false;
        if (std::abs(sol.objective_value - oracle.objective) >
            1e-7 * std::max(1.0, std::abs(oracle.objective)))
            return false;
        ++checked;
    }
    return true;
}

bool smo_battery() {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t per = 3 + rng() % 3;
        Matrix x(0, 2);
        std::vector<int> y;
        for (std::size_t i = 0; i < per; ++i) {
            x.push_row(std::vector<double>{testsupport::uniform(rng, -3, -1),
                                           testsupport::uniform(rng, -2, 2)});
            y.push_back(-1);
        }
        for (std::size_t i = 0; i < per; ++i) {
            x.push_row(std::vector<double>{testsupport::uniform(rng, 1, 3),
                                           testsupport::uniform(rng, -2, 2)});
            y.push_back(+1);
        }
        TrainingSet t = make_training_set(std::move(x), std::move(y));
        KernelSpec spec = rep % 2 ? KernelSpec::gaussian(2.0) : KernelSpec::linear();
        SvcModel m = train_svc(t, spec, 1.0);

        double sum = 0.0;
        for (double a : m.dual_coeffs) {
            if (std::abs(a) > 1.0 + 1e-9) return false;
            sum += a;
        }
        if (std::abs(sum) > 1e-6) return false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            double f = svc_decision(m, t.x.row(i), true) * t.labels[i];
            double a = 0.0;
            for (std::size_t s = 0; s < m.support_vectors.rows; ++s) {
                bool same = true;
                for (std::size_t j = 0; j < t.dim(); ++j)
                    if (m.support_vectors.at(s, j) != t.x.at(i, j)) same = false;
                if (same) a = std::abs(m.dual_coeffs[s]);
            }
            if (a < 1.0 - 1e-6 && f < 1.0 - 2e-3) return false;
            if (a > 1e-9 && f > 1.0 + 2e-3) return false;
        }

        std::vector<double> alpha(t.size(), 0.0);
        std::size_t sv = 0;
        for (std::size_t i = 0; i < t.size() && sv < m.dual_coeffs.size(); ++i) {
            bool same = true;
            for (std::size_t j = 0; j < t.dim(); ++j)
                if (m.support_vectors.at(sv, j) != t.x.at(i, j)) same = false;
            if (same) {
                alpha[i] = std::abs(m.dual_coeffs[sv]);
                ++sv;
            }
        }
        double mine = testsupport::svc_dual_objective(t, spec, alpha);
        auto oracle = testsupport::svc_dual_oracle(t, spec, 1.0, 60000);
        if (std::abs(mine - oracle.dual_objective) > 1e-4) return false;
    }
    return true;
}

bool beta_grid_battery() {
    std::mt19937_64 rng(89);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t per = 4 + rng() % 8, dim = 1 + rng() % 3;
        Matrix x(0, dim);
        std::vector<int> y;
        for (std::size_t i = 0; i < 2 * per; ++i) {
            x.push_row(testsupport::uniform_vector(rng, dim, -2, 2));
            y.push_back(i < per ? -1 : +1);
        }
        TrainingSet t = make_training_set(std::move(x), std::move(y));
        MorphUnit e = make_morph_unit(MorphKind::Erosion,
                                      testsupport::uniform_vector(rng, dim, -2, 2));
        MorphUnit d = make_morph_unit(MorphKind::Dilation,
                                      testsupport::uniform_vector(rng, dim, -2, 2));
        double beta = fit_beta(e, d, t);
        auto hinge = [&](double b) {
            double s = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                double tau = b * dilate(d, t.x.row(i)) + (1 - b) * erode(e, t.x.row(i));
                s += std::max(0.0, -t.labels[i] * tau);
            }
            return s;
        };
        double exact = hinge(beta);
        double best = std::numeric_limits<double>::infinity();
        for (int g = 0; g <= 10000; ++g) best = std::min(best, hinge(g / 10000.0));
        if (exact > best + 1e-9 || best < exact - 1e-12) return false;
    }
    return true;
}

bool composition_and_roundtrip() {
    std::mt19937_64 rng(97);
    Matrix x(0, 2);
    std::vector<std::string> labs;
    for (int i = 0; i < 12; ++i) {
        x.push_row(std::vector<double>{testsupport::uniform(rng, -3, -1),
                                       testsupport::uniform(rng, -1, 1)});
        labs.push_back("n");
    }
    for (int i = 0; i < 12; ++i) {
        x.push_row(std::vector<double>{testsupport::uniform(rng, 1, 3),
                                       testsupport::uniform(rng, -1, 1)});
        labs.push_back("p");
    }
    RDepModel model = train_rdep(
        x, labs, RdepStrategy::ensemble({KernelSpec::gaussian(0.0), KernelSpec::linear()}),
        CcpConfig{}, 1.0);

    ModelFile file{"rdep-ensemble", std::nullopt, model.classes, std::nullopt, model, {}};
    const std::string path = "acceptance_roundtrip.json";
    save_model(file, path);
    ModelFile loaded = load_model(path);
    std::remove(path.c_str());

    for (int rep = 0; rep < 300; ++rep) {
        auto p = testsupport::uniform_vector(rng, 2, -4, 4);
        auto z = apply_standardizer(model.rho_standardizer, apply_rho(model.rho, p));
        if (model.classes.to_sign(rdep_classify(model, p)) != dep_classify(model.dep, z))
            return false;
        if (rdep_classify(model, p) != rdep_classify(*loaded.rdep, p)) return false;
    }
    return true;
}

bool seed_reproducibility() {
    Dataset moons = make_moons(120, 0.15, 5);
    std::vector<int> y(moons.labels.size());
    ClassMap cm = make_class_map(moons.labels);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = cm.to_sign(moons.labels[i]);
    TrainingSet t = make_training_set(moons.x, y);

    DepModel d1 = train_dep(t, CcpConfig{});
    DepModel d2 = train_dep(t, CcpConfig{});
    if (d1.beta != d2.beta || d1.erosion_unit.weights != d2.erosion_unit.weights ||
        d1.dilation_unit.weights != d2.dilation_unit.weights)
        return false;

    SvcModel s1 = train_svc(t, KernelSpec::gaussian(0.0).kind == KernelKind::Gaussian
                                   ? resolve_kernel(KernelSpec::gaussian(0.0), t.x)
                                   : KernelSpec::linear(),
                            1.0);
    SvcModel s2 = train_svc(t, resolve_kernel(KernelSpec::gaussian(0.0), t.x), 1.0);
    if (s1.dual_coeffs != s2.dual_coeffs || s1.intercept != s2.intercept) return false;

    auto strat = RdepStrategy::bagging(KernelSpec::gaussian(0.0), 4, 99);
    RDepModel r1 = train_rdep(moons.x, moons.labels, strat, CcpConfig{}, 1.0);
    RDepModel r2 = train_rdep(moons.x, moons.labels, strat, CcpConfig{}, 1.0);
    ModelFile f1{"rdep-bagging", std::nullopt, r1.classes, std::nullopt, r1, {}};
    ModelFile f2{"rdep-bagging", std::nullopt, r2.classes, std::nullopt, r2, {}};
    return model_to_json(f1) == model_to_json(f2);
}

void criterion_5() {
    struct Battery {
        const char* name;
        bool (*fn)();
    };
    const std::vector<Battery> batteries = {
        {"lattice commutation and monotonicity", lattice_properties},
        {"ccp objective monotone", ccp_monotone},
        {"lp solver vs vertex oracle", lp_oracle_battery},
        {"smo kkt and dual objective vs oracle", smo_battery},
        {"fit_beta vs grid oracle", beta_grid_battery},
        {"composition identity and serialization round trip", composition_and_roundtrip},
        {"fixed-seed reproducibility", seed_reproducibility},
    };
    for (const auto& b : batteries) {
        bool ok = b.fn();
        report(5, b.name, ok, ok ? "holds" : "violated");
    }
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    std::printf("acceptance finished in %.0fs with %d failure(s)\n", elapsed_s(t0),
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
