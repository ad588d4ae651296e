#include "rdep/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rdep/errors.hpp"

namespace rdep {

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * y[j];
    return s;
}

double sq_dist(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double d = x[j] - y[j];
        s += d * d;
    }
    return s;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    switch (spec.kind) {
        case KernelKind::Linear:
            return dot(x, y);
        case KernelKind::Gaussian:
            if (!(spec.gaussian_sigma2 > 0.0))
                throw std::invalid_argument("kernel_eval: sigma^2 must be positive");
            return std::exp(-sq_dist(x, y) / (2.0 * spec.gaussian_sigma2));
        case KernelKind::Polynomial: {
            if (spec.poly_degree < 1)
                throw std::invalid_argument("kernel_eval: degree must be >= 1");
            return std::pow(dot(x, y), spec.poly_degree);
        }
    }
    throw std::invalid_argument("kernel_eval: unknown kernel");
}

double scaled_gaussian_sigma2(const Matrix& x) {
    if (x.data.empty()) throw std::invalid_argument("scaled_gaussian_sigma2: empty data");
    double mean = 0.0;
    for (double v : x.data) mean += v;
    mean /= static_cast<double>(x.data.size());
    double var = 0.0;
    for (double v : x.data) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.data.size());
    if (var < 1e-24) return 0.5;  // gamma = 1 for constant data
    return static_cast<double>(x.cols) * var / 2.0;
}

SvcModel train_svc(const TrainingSet& t, const KernelSpec& spec, double box_c) {
    if (box_c <= 0.0) throw std::invalid_argument("train_svc: box constraint must be positive");
    bool has_neg = false, has_pos = false;
    for (int d : t.labels) (d < 0 ? has_neg : has_pos) = true;
    if (!has_neg || !has_pos)
        throw std::invalid_argument("train_svc: both classes required");

    const std::size_t m = t.size();
    const double C = box_c;

    // Full Gram cache; the datasets this solver targets are desk scale.
    Matrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double k = kernel_eval(spec, t.x.row(i), t.x.row(j));
            gram.at(i, j) = k;
            gram.at(j, i) = k;
        }
    }

    std::vector<double> alpha(m, 0.0);
    // grad_i of the dual objective 1/2 a'Qa - e'a, with Q_ij = d_i d_j K_ij.
    std::vector<double> grad(m, -1.0);
    const std::vector<int>& y = t.labels;

    const long cap = 10000L * static_cast<long>(m);
    long iters = 0;
    while (true) {
        if (++iters > cap)
            throw TrainingError("train_svc: SMO failed to converge within the pair cap");

        // Max violating pair over the feasible ascent/descent index sets.
        int ihi = -1, ilo = -1;
        double them = -std::numeric_limits<double>::infinity();
        double that = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double v = -y[i] * grad[i];
            bool in_up = (y[i] > 0 && alpha[i] < C) || (y[i] < 0 && alpha[i] > 0.0);
            bool in_low = (y[i] < 0 && alpha[i] < C) || (y[i] > 0 && alpha[i] > 0.0);
            if (in_up && v > them) {
                them = v;
                ihi = static_cast<int>(i);
            }
            if (in_low && v < that) {
                that = v;
                ilo = static_cast<int>(i);
            }
        }
        if (ihi < 0 || ilo < 0 || them - that <= svm::kKktTol) break;

        const int i = ihi, j = ilo;
        // Move along alpha_i += d_i t, alpha_j -= d_j t, which preserves the
        // equality constraint; clip t to the box.
        double eta = gram.at(i, i) + gram.at(j, j) - 2.0 * gram.at(i, j);
        double step;
        if (eta > 1e-12) {
            step = (them - that) / eta;
        } else {
            step = std::numeric_limits<double>::infinity();  // flat: run to a wall
        }
        // Box limits for t.
        double lim = step;
        lim = std::min(lim, y[i] > 0 ? C - alpha[i] : alpha[i]);
        lim = std::min(lim, y[j] > 0 ? alpha[j] : C - alpha[j]);
        if (!(lim > 0.0)) continue;  // numerically stuck pair; reselect

        double di = y[i] * lim;
        double dj = -y[j] * lim;
        alpha[i] += di;
        alpha[j] += dj;
        for (std::size_t k = 0; k < m; ++k)
            grad[k] += y[k] * (di * y[i] * gram.at(i, k) + dj * y[j] * gram.at(j, k));
    }

    // Intercept: average over free support vectors, midpoint of the violating
    // interval when none are free.
    double b_sum = 0.0;
    int b_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (alpha[i] > 1e-8 * C && alpha[i] < C * (1.0 - 1e-8)) {
            b_sum += -y[i] * grad[i];
            ++b_count;
        }
    }
    double intercept;
    if (b_count > 0) {
        intercept = b_sum / b_count;
    } else {
        double mh = -std::numeric_limits<double>::infinity();
        double ml = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double v = -y[i] * grad[i];
            bool in_up = (y[i] > 0 && alpha[i] < C) || (y[i] < 0 && alpha[i] > 0.0);
            bool in_low = (y[i] < 0 && alpha[i] < C) || (y[i] > 0 && alpha[i] > 0.0);
            if (in_up) mh = std::max(mh, v);
            if (in_low) ml = std::min(ml, v);
        }
        intercept = (mh + ml) / 2.0;
    }

    SvcModel model;
    model.kernel = spec;
    model.box_c = C;
    model.intercept = intercept;
    model.support_vectors = Matrix(0, t.dim());
    for (std::size_t i = 0; i < m; ++i) {
        if (alpha[i] > svm::kSupportTol) {
            model.support_vectors.push_row(t.x.row(i));
            model.dual_coeffs.push_back(alpha[i] * y[i]);
        }
    }
    return model;
}

double svc_decision(const SvcModel& model, std::span<const double> x,
                    bool include_intercept) {
    if (model.support_vectors.cols > 0 && x.size() != model.dim())
        throw std::invalid_argument("svc_decision: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < model.support_vectors.rows; ++i)
        s += model.dual_coeffs[i] * kernel_eval(model.kernel, x, model.support_vectors.row(i));
    return include_intercept ? s + model.intercept : s;
}

}  // namespace rdep
