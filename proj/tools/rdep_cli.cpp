// Command line front end: train, predict, synth, benchmark.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "rdep/errors.hpp"
#include "rdep/harness.hpp"
#include "rdep/model_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonIo {
    std::string data_path;
    std::string label_column = "y";
    std::string missing_token = "?";
};

void write_dataset_csv(const rdep::Dataset& d, const std::string& label_column,
                       std::ostream& out) {
    for (const auto& name : d.feature_names) out << name << ',';
    out << label_column << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) out << d.x.at(i, j) << ',';
        out << d.labels[i] << '\n';
    }
}

rdep::Dataset load_and_impute(const CommonIo& io) {
    rdep::Dataset d = rdep::load_csv(io.data_path, io.label_column, io.missing_token);
    return rdep::impute_mean(d);
}

// Reads a prediction input that may or may not still carry the label column.
rdep::Matrix load_feature_rows(const CommonIo& io) {
    std::ifstream probe(io.data_path);
    if (!probe) throw rdep::LoadError("cannot open '" + io.data_path + "'");
    std::string header;
    std::getline(probe, header);
    bool has_label = false;
    std::stringstream ss(header);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        auto b = cell.find_first_not_of(" \t\r\n");
        auto e = cell.find_last_not_of(" \t\r\n");
        if (b != std::string::npos && cell.substr(b, e - b + 1) == io.label_column)
            has_label = true;
    }
    if (has_label) return load_and_impute(io).x;

    // No label column: parse every cell as a feature.
    std::ifstream in(io.data_path);
    std::getline(in, header);
    std::size_t cols = std::count(header.begin(), header.end(), ',') + 1;
    rdep::Matrix x(0, cols);
    std::string line;
    std::size_t line_no = 1;
    std::vector<double> row(cols);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::stringstream ls(line);
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= cols) break;
            try {
                row[c] = cell == io.missing_token
                             ? std::numeric_limits<double>::quiet_NaN()
                             : std::stod(cell);
            } catch (const std::exception&) {
                throw rdep::LoadError("line " + std::to_string(line_no) +
                                      ": cell '" + cell + "' is not numeric");
            }
            ++c;
        }
        if (c != cols)
            throw rdep::LoadError("line " + std::to_string(line_no) + ": short row");
        x.push_row(row);
    }
    return x;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced dilation-erosion perceptron toolkit"};
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1);

    // ---- train ----
    auto* train = app.add_subcommand("train", "fit a model on a labelled CSV");
    CommonIo tio;
    std::string model_kind = "rdep-ensemble";
    std::string model_out = "model.json";
    rdep::TrainParams tparams;
    bool no_standardize = false;
    std::uint64_t train_seed = 0;
    train->add_option("--model", model_kind,
                      "dep | rdep-ensemble | rdep-bagging | svc-linear | svc-rbf | "
                      "svc-poly | svc-vote | svc-bag")
        ->check(CLI::IsMember({"dep", "rdep-ensemble", "rdep-bagging", "svc-linear",
                               "svc-rbf", "svc-poly", "svc-vote", "svc-bag"}));
    train->add_option("--data", tio.data_path, "training CSV")->required();
    train->add_option("--label", tio.label_column, "label column name");
    train->add_option("--missing-token", tio.missing_token, "cell treated as missing");
    train->add_option("--out", model_out, "model output path");
    train->add_option("--C", tparams.ccp.regularization_c, "hinge trainer L1 weight");
    train->add_option("--box-C", tparams.box_c, "SVC box constraint");
    train->add_option("--n-estimators", tparams.bag_estimators, "bagging committee size");
    train->add_option("--ccp-iters", tparams.ccp.max_outer_iters, "trainer outer iterations");
    train->add_option("--ccp-tol", tparams.ccp.objective_tol, "trainer stopping tolerance");
    train->add_option("--seed", train_seed, "bagging resample seed");
    train->add_flag("--no-standardize", no_standardize,
                    "skip feature standardization before training");

    // ---- predict ----
    auto* predict = app.add_subcommand("predict", "label rows with a saved model");
    CommonIo pio;
    std::string model_in;
    std::string predict_out;
    predict->add_option("--model", model_in, "model file")->required();
    predict->add_option("--data", pio.data_path, "input CSV")->required();
    predict->add_option("--label", pio.label_column, "label column to ignore if present");
    predict->add_option("--missing-token", pio.missing_token, "cell treated as missing");
    predict->add_option("--out", predict_out, "write labels here instead of stdout");

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
    std::string synth_kind = "double-moon";
    std::size_t synth_n = 1000;
    double synth_noise = 0.1;
    std::uint64_t synth_seed = 0;
    std::string synth_out = "synth.csv";
    std::string synth_label = "y";
    synth->add_option("--dataset", synth_kind, "generator name")
        ->check(CLI::IsMember({"double-moon"}));
    synth->add_option("--n", synth_n, "number of samples");
    synth->add_option("--noise", synth_noise, "gaussian noise level");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--out", synth_out, "output CSV path");
    synth->add_option("--label", synth_label, "label column name");

    // ---- benchmark ----
    auto* bench = app.add_subcommand("benchmark",
                                     "cross-validated comparison of the classifier suite");
    std::vector<std::string> bench_data;
    std::string bench_label = "class";
    std::string bench_missing = "?";
    std::size_t bench_k = 10;
    std::uint64_t bench_seed = 1;
    double bench_confidence = 0.99;
    std::string bench_prefix = "benchmark";
    std::vector<std::string> bench_classifiers;
    int bench_jobs = static_cast<int>(std::thread::hardware_concurrency());
    bench->add_option("--data", bench_data, "labelled CSV (repeatable)")->required();
    bench->add_option("--label", bench_label, "label column name");
    bench->add_option("--missing-token", bench_missing, "cell treated as missing");
    bench->add_option("--k", bench_k, "stratified folds");
    bench->add_option("--seed", bench_seed, "fold shuffle seed");
    bench->add_option("--confidence", bench_confidence, "t-test confidence (0.95 or 0.99)");
    bench->add_option("--out-prefix", bench_prefix, "prefix for table/csv/dot outputs");
    bench->add_option("--classifiers", bench_classifiers,
                      "subset of: svc-linear svc-rbf svc-poly svc-vote svc-bag dep "
                      "rdep-ensemble rdep-bagging");
    bench->add_option("--jobs", bench_jobs, "worker thread cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the parse error
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train->parsed()) {
            rdep::Dataset d = load_and_impute(tio);
            tparams.seed = train_seed;
            rdep::Matrix x = d.x;
            std::optional<rdep::Standardizer> scaler;
            if (!no_standardize) {
                scaler = rdep::fit_standardizer(x);
                x = rdep::apply_standardizer(*scaler, x);
            }
            rdep::ModelFile model =
                rdep::train_model_kind(model_kind, x, d.labels, tparams);
            model.feature_standardizer = scaler;
            rdep::save_model(model, model_out);
            std::cout << "wrote " << model_out << " (" << model_kind << ", "
                      << d.rows() << " rows)\n";
            return kExitOk;
        }

        if (predict->parsed()) {
            rdep::ModelFile model = rdep::load_model(model_in);
            rdep::Matrix x = load_feature_rows(pio);
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!predict_out.empty()) {
                file.open(predict_out);
                if (!file) throw rdep::LoadError("cannot write '" + predict_out + "'");
                out = &file;
            }
            for (std::size_t i = 0; i < x.rows; ++i)
                *out << rdep::predict_label(model, x.row(i)) << '\n';
            return kExitOk;
        }

        if (synth->parsed()) {
            rdep::Dataset d = rdep::make_moons(synth_n, synth_noise, synth_seed);
            std::ofstream out(synth_out);
            if (!out) throw rdep::LoadError("cannot write '" + synth_out + "'");
            write_dataset_csv(d, synth_label, out);
            std::cout << "wrote " << synth_out << " (" << d.rows() << " rows)\n";
            return kExitOk;
        }

        if (bench->parsed()) {
            std::vector<rdep::Dataset> datasets;
            for (const auto& path : bench_data) {
                rdep::Dataset d =
                    rdep::load_csv(path, bench_label, bench_missing);
                d.name = std::filesystem::path(path).stem().string();
                datasets.push_back(std::move(d));
            }
            std::vector<rdep::ClassifierSpec> specs = rdep::default_classifier_suite();
            if (!bench_classifiers.empty()) {
                std::vector<rdep::ClassifierSpec> subset;
                for (const auto& kind : bench_classifiers) {
                    bool found = false;
                    for (const auto& s : specs)
                        if (s.kind == kind) {
                            subset.push_back(s);
                            found = true;
                        }
                    if (!found)
                        throw std::invalid_argument("unknown classifier '" + kind + "'");
                }
                specs = std::move(subset);
            }
            rdep::BenchmarkReport rep = rdep::run_benchmark(
                datasets, specs, bench_k, bench_seed, bench_confidence,
                std::max(1, bench_jobs));
            std::cout << rep.table_text();
            auto dump = [&](const std::string& suffix, const std::string& text) {
                std::string path = bench_prefix + suffix;
                std::ofstream out(path);
                if (!out) throw rdep::LoadError("cannot write '" + path + "'");
                out << text;
            };
            dump(".table.txt", rep.table_text());
            dump(".scores.csv", rep.scores_csv());
            dump(".hasse.dot", rep.dot_text());
            std::cout << "wrote " << bench_prefix << ".table.txt, .scores.csv, .hasse.dot\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
