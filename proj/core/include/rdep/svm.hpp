#pragma once

#include <span>
#include <vector>

#include "rdep/ccp.hpp"
#include "rdep/matrix.hpp"

namespace rdep {

enum class KernelKind { Linear, Gaussian, Polynomial };

struct KernelSpec {
    KernelKind kind = KernelKind::Linear;
    double gaussian_sigma2 = 1.0;  // sigma^2 of exp(-|x-y|^2 / (2 sigma^2))
    int poly_degree = 3;

    static KernelSpec linear() { return {KernelKind::Linear, 1.0, 3}; }
    static KernelSpec gaussian(double sigma2) { return {KernelKind::Gaussian, sigma2, 3}; }
    static KernelSpec polynomial(int degree) { return {KernelKind::Polynomial, 1.0, degree}; }
};

/// kappa(x, y): inner product, exp(-|x-y|^2/(2 sigma^2)), or <x,y>^d.
double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// Width heuristic mirroring the usual "scale" default: sigma^2 chosen so
/// that gamma = 1 / (2 sigma^2) equals 1 / (n_features * pooled variance),
/// with pooled variance taken over every matrix entry. Degenerate (constant)
/// data falls back to gamma = 1.
double scaled_gaussian_sigma2(const Matrix& x);

/// Soft-margin kernel support vector classifier in dual form.
struct SvcModel {
    Matrix support_vectors;           // one row per support vector
    std::vector<double> dual_coeffs;  // alpha_i * d_i per support vector
    double intercept = 0.0;
    KernelSpec kernel;
    double box_c = 1.0;

    std::size_t dim() const { return support_vectors.cols; }
};

/// Trains by sequential minimal optimization with max-violating-pair working
/// sets; the full Gram matrix is cached. Throws TrainingError if the pair
/// cap 10^4 * |T| is exhausted before the KKT gap closes below 1e-3.
SvcModel train_svc(const TrainingSet& t, const KernelSpec& spec, double box_c);

/// Sum of dual_coeffs[i] * kappa(x, sv_i), optionally plus the intercept.
/// Reduced-ordering use passes include_intercept = false.
double svc_decision(const SvcModel& model, std::span<const double> x,
                    bool include_intercept);

namespace svm {
inline constexpr double kKktTol = 1e-3;
inline constexpr double kSupportTol = 1e-10;  // alpha below this is dropped
}  // namespace svm

}  // namespace rdep
