#include "rdep/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rdep/errors.hpp"

namespace rdep {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, std::size_t line_no) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw LoadError("csv line " + std::to_string(line_no) +
                        ": cell '" + cell + "' is not numeric");
    return value;
}

// Uniform in [0, 1) from the top 53 bits of the engine output.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller pair; deterministic given the engine state.
std::pair<double, double> gaussian_pair(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    double u2 = uniform01(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& missing_token) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw LoadError("'" + path + "': empty file");
    auto header = split_line(line);
    for (auto& h : header) h = strip(h);

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == label_column) {
            label_idx = i;
            break;
        }
    if (label_idx == header.size())
        throw LoadError("'" + path + "': no column named '" + label_column + "'");

    Dataset d;
    d.name = path;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (i != label_idx) d.feature_names.push_back(header[i]);
    d.x = Matrix(0, header.size() - 1);

    std::size_t line_no = 1;
    std::vector<double> row(header.size() - 1);
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != header.size())
            throw LoadError("csv line " + std::to_string(line_no) +
                            ": expected " + std::to_string(header.size()) +
                            " cells, found " + std::to_string(cells.size()));
        std::size_t c = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::string cell = strip(cells[i]);
            if (i == label_idx) {
                d.labels.push_back(cell);
            } else if (cell == missing_token) {
                row[c++] = std::numeric_limits<double>::quiet_NaN();
            } else {
                row[c++] = parse_number(cell, line_no);
            }
        }
        d.x.push_row(row);
    }
    return d;
}

Dataset impute_mean(const Dataset& d) {
    Dataset out = d;
    for (std::size_t j = 0; j < out.cols(); ++j) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < out.rows(); ++i) {
            double v = out.x.at(i, j);
            if (!std::isnan(v)) {
                sum += v;
                ++count;
            }
        }
        if (count == 0)
            throw LoadError("impute_mean: column " + std::to_string(j) +
                            " has no observed values");
        if (count == out.rows()) continue;
        double mean = sum / static_cast<double>(count);
        for (std::size_t i = 0; i < out.rows(); ++i)
            if (std::isnan(out.x.at(i, j))) out.x.at(i, j) = mean;
    }
    return out;
}

Standardizer fit_standardizer(const Matrix& train) {
    if (train.rows == 0) throw std::invalid_argument("fit_standardizer: empty data");
    Standardizer s;
    s.mean.assign(train.cols, 0.0);
    s.stddev.assign(train.cols, 1.0);
    for (std::size_t j = 0; j < train.cols; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < train.rows; ++i) m += train.at(i, j);
        m /= static_cast<double>(train.rows);
        double var = 0.0;
        for (std::size_t i = 0; i < train.rows; ++i) {
            double d = train.at(i, j) - m;
            var += d * d;
        }
        var /= static_cast<double>(train.rows);  // population convention
        double sd = std::sqrt(var);
        s.mean[j] = m;
        s.stddev[j] = sd < 1e-12 ? 1.0 : sd;
    }
    return s;
}

Matrix apply_standardizer(const Standardizer& s, const Matrix& data) {
    if (data.cols != s.dim())
        throw std::invalid_argument("apply_standardizer: dimension mismatch");
    Matrix out = data;
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j)
            out.at(i, j) = (out.at(i, j) - s.mean[j]) / s.stddev[j];
    return out;
}

std::vector<double> apply_standardizer(const Standardizer& s,
                                       std::span<const double> row) {
    if (row.size() != s.dim())
        throw std::invalid_argument("apply_standardizer: dimension mismatch");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = (row[j] - s.mean[j]) / s.stddev[j];
    return out;
}

Dataset make_moons(std::size_t n, double noise_sigma, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("make_moons: need at least two samples");
    const std::size_t n_top = n - n / 2;
    const std::size_t n_bot = n / 2;

    Dataset d;
    d.name = "double-moon";
    d.feature_names = {"x1", "x2"};
    d.x = Matrix(0, 2);

    auto arc_angle = [](std::size_t i, std::size_t count) {
        if (count == 1) return 0.0;
        return std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1);
    };
    for (std::size_t i = 0; i < n_top; ++i) {
        double t = arc_angle(i, n_top);
        double p[2] = {std::cos(t), std::sin(t)};
        d.x.push_row(p);
        d.labels.push_back("1");
    }
    for (std::size_t i = 0; i < n_bot; ++i) {
        double t = arc_angle(i, n_bot);
        double p[2] = {1.0 - std::cos(t), 1.0 - std::sin(t) - 0.5};
        d.x.push_row(p);
        d.labels.push_back("0");
    }

    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < n; ++i) {
            auto [g1, g2] = gaussian_pair(rng);
            d.x.at(i, 0) += noise_sigma * g1;
            d.x.at(i, 1) += noise_sigma * g2;
        }
    }
    return d;
}

std::vector<FoldSplit> stratified_kfold(const std::vector<std::string>& labels,
                                        std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: k must be at least 2");
    if (labels.empty()) throw std::invalid_argument("stratified_kfold: no rows");

    // Classes in order of first appearance; one shared engine keeps the whole
    // split a deterministic function of (labels, k, seed).
    std::vector<std::string> classes;
    for (const auto& l : labels)
        if (std::find(classes.begin(), classes.end(), l) == classes.end())
            classes.push_back(l);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    for (const auto& cls : classes) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) idx.push_back(i);
        if (idx.size() < k)
            throw std::invalid_argument("stratified_kfold: class '" + cls +
                                        "' has fewer members than folds");
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng() % i]);
        std::size_t base = idx.size() / k, extra = idx.size() % k;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < k; ++f) {
            std::size_t take = base + (f < extra ? 1 : 0);
            for (std::size_t t = 0; t < take; ++t) folds[f].push_back(idx[pos++]);
        }
    }

    std::vector<FoldSplit> out(k);
    for (std::size_t f = 0; f < k; ++f) {
        std::sort(folds[f].begin(), folds[f].end());
        out[f].test = folds[f];
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!std::binary_search(folds[f].begin(), folds[f].end(), i))
                out[f].train.push_back(i);
    }
    return out;
}

}  // namespace rdep
