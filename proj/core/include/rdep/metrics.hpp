#pragma once

#include <span>

namespace rdep {

/// (TPR + TNR) / 2 for labels in {-1, +1}. y_true must contain both classes.
double balanced_accuracy(std::span<const int> y_true, std::span<const int> y_pred);

struct TTestResult {
    bool a_beats_b = false;
    double t_stat = 0.0;
};

/// One-sided paired Student's t-test on the differences a_i - b_i with the
/// sample (n-1) standard deviation. a_beats_b is true when the statistic
/// exceeds the one-sided critical value at the given confidence (0.95 or
/// 0.99). Zero-variance differences short-circuit on the sign of the mean,
/// reporting +/-inf as the statistic.
TTestResult paired_t_test(std::span<const double> scores_a,
                          std::span<const double> scores_b, double confidence);

/// One-sided critical value of Student's t with df degrees of freedom, from
/// an embedded table for df in [1, 200] and the normal quantile beyond.
double t_critical(int df, double confidence);

}  // namespace rdep
