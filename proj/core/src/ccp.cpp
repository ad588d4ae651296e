#include "rdep/ccp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rdep/errors.hpp"
#include "rdep/linprog.hpp"

namespace rdep {

namespace {

constexpr double kDegenDist = 1e-12;  // distance under which a sample sits at the mean
constexpr double kLambdaCap = 1e12;
constexpr double kRowViolationTol = 1e-9;

std::vector<std::size_t> class_rows(const TrainingSet& t, int label) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.labels.size(); ++i)
        if (t.labels[i] == label) out.push_back(i);
    return out;
}

void require_both_classes(const TrainingSet& t) {
    bool has_neg = false, has_pos = false;
    for (int d : t.labels) (d < 0 ? has_neg : has_pos) = true;
    if (!has_neg || !has_pos)
        throw std::invalid_argument("training set must contain both classes");
}

double unit_response(MorphKind kind, std::span<const double> w,
                     std::span<const double> x) {
    double acc = w[0] + x[0];
    if (kind == MorphKind::Erosion) {
        for (std::size_t j = 1; j < x.size(); ++j)
            acc = std::min(acc, w[j] + x[j]);
    } else {
        for (std::size_t j = 1; j < x.size(); ++j)
            acc = std::max(acc, w[j] + x[j]);
    }
    return acc;
}

// Lowest index attaining the min (erosion) or max (dilation).
std::size_t active_index(MorphKind kind, std::span<const double> w,
                         std::span<const double> x) {
    std::size_t best = 0;
    double val = w[0] + x[0];
    for (std::size_t j = 1; j < x.size(); ++j) {
        double v = w[j] + x[j];
        if (kind == MorphKind::Erosion ? v < val : v > val) {
            val = v;
            best = j;
        }
    }
    return best;
}

// One convex-concave training run. Variables are offsets du = u - reference,
// so the natural starting point (u = reference) sits at zero and the L1
// surrogates read a_j >= |du_j|. Per outer iteration the union side is
// replaced by its active affine row at the current iterate; the intersection
// side is enforced exactly through lazily generated rows that accumulate
// across iterations (a row is only materialized once a tentative optimum
// violates it, which keeps the program near one row per sample instead of
// dim rows per sample).
class UnitTrainer {
public:
    UnitTrainer(MorphKind kind, const TrainingSet& t, const CcpConfig& cfg)
        : kind_(kind),
          t_(t),
          cfg_(cfg),
          dilation_(kind == MorphKind::Dilation),
          conv_sign_(dilation_ ? +1.0 : -1.0),
          neg_(class_rows(t, -1)),
          pos_(class_rows(t, +1)),
          conv_(dilation_ ? neg_ : pos_),
          line_(dilation_ ? pos_ : neg_),
          nu_(slack_weights(t)),
          ref_(reference_vector(kind, t)),
          n_(t.dim()),
          in_working_(conv_.size(), std::vector<char>(n_, 0)) {}

    MorphUnit train(CcpTrace* trace) {
        std::vector<double> u = ref_;
        double prev_obj = objective(u);
        std::vector<double> best_u = u;
        double best_obj = prev_obj;
        if (trace) trace->objectives.push_back(prev_obj);

        for (int iter = 0; iter < cfg_.max_outer_iters; ++iter) {
            u = solve_linearized(u, iter);
            double obj = objective(u);
            if (trace) trace->objectives.push_back(obj);
            if (obj < best_obj) {
                best_obj = obj;
                best_u = u;
            }
            if (prev_obj - obj < cfg_.objective_tol) break;
            prev_obj = obj;
        }
        return make_morph_unit(kind_, std::move(best_u));
    }

    double objective(std::span<const double> u) const {
        return morph_training_objective(kind_, u, t_, nu_, cfg_.regularization_c, ref_);
    }

private:
    LinearProgram base_program() const {
        const std::size_t num_vars = n_ + conv_.size() + line_.size() + n_;
        LinearProgram lp(num_vars);
        for (std::size_t j = 0; j < n_; ++j)
            lp.set_bounds(var_du() + j, -std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity());
        const auto& conv_nu = dilation_ ? nu_.nu_neg : nu_.nu_pos;
        const auto& line_nu = dilation_ ? nu_.nu_pos : nu_.nu_neg;
        for (std::size_t i = 0; i < conv_.size(); ++i) {
            lp.set_bounds(var_s_conv() + i, 0.0, std::numeric_limits<double>::infinity());
            lp.objective[var_s_conv() + i] =
                conv_nu[i] / static_cast<double>(conv_.size());
        }
        for (std::size_t k = 0; k < line_.size(); ++k) {
            lp.set_bounds(var_s_line() + k, 0.0, std::numeric_limits<double>::infinity());
            lp.objective[var_s_line() + k] =
                line_nu[k] / static_cast<double>(line_.size());
        }
        for (std::size_t j = 0; j < n_; ++j) {
            lp.set_bounds(var_a() + j, 0.0, std::numeric_limits<double>::infinity());
            lp.objective[var_a() + j] = cfg_.regularization_c;
            lp.add_row({{var_du() + j, 1.0}, {var_a() + j, -1.0}}, 0.0);
            lp.add_row({{var_du() + j, -1.0}, {var_a() + j, -1.0}}, 0.0);
        }
        return lp;
    }

    void add_conv_row(LinearProgram& lp, std::size_t i, std::size_t j) const {
        auto x = t_.x.row(conv_[i]);
        lp.add_row({{var_du() + j, conv_sign_}, {var_s_conv() + i, -1.0}},
                   -conv_sign_ * (ref_[j] + x[j]));
    }

    std::vector<double> solve_linearized(const std::vector<double>& current,
                                         int outer_iter) {
        LinearProgram lp = base_program();
        // Union side: the single active row per sample at the current iterate.
        for (std::size_t k = 0; k < line_.size(); ++k) {
            auto x = t_.x.row(line_[k]);
            std::size_t j = active_index(kind_, current, x);
            lp.add_row({{var_du() + j, -conv_sign_}, {var_s_line() + k, -1.0}},
                       conv_sign_ * (ref_[j] + x[j]));
        }
        // Intersection side: rows accumulated so far plus each sample's
        // active row at the current iterate.
        const MorphKind conv_kind = dilation_ ? MorphKind::Dilation : MorphKind::Erosion;
        for (std::size_t i = 0; i < conv_.size(); ++i) {
            std::size_t j = active_index(conv_kind, current, t_.x.row(conv_[i]));
            in_working_[i][j] = 1;
        }
        for (std::size_t i = 0; i < conv_.size(); ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (in_working_[i][j]) add_conv_row(lp, i, j);

        std::vector<double> u(n_);
        for (std::size_t round = 0; round <= n_; ++round) {
            LpSolution sol;
            try {
                sol = solve_lp(lp);
            } catch (const SolverError& e) {
                throw TrainingError("ccp iteration " + std::to_string(outer_iter) +
                                    ": " + e.what());
            }
            if (sol.status != LpStatus::Optimal)
                throw TrainingError(
                    "ccp iteration " + std::to_string(outer_iter) + ": subproblem " +
                    (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded"));
            for (std::size_t j = 0; j < n_; ++j) u[j] = ref_[j] + sol.point[var_du() + j];

            // Re-check the full intersection side at the tentative optimum
            // and add the worst violated row per sample.
            bool violated = false;
            for (std::size_t i = 0; i < conv_.size(); ++i) {
                auto x = t_.x.row(conv_[i]);
                std::size_t j = active_index(conv_kind, u, x);
                double lhs = conv_sign_ * (u[j] + x[j]);
                if (lhs > sol.point[var_s_conv() + i] + kRowViolationTol &&
                    !in_working_[i][j]) {
                    in_working_[i][j] = 1;
                    add_conv_row(lp, i, j);
                    violated = true;
                }
            }
            if (!violated) return u;
        }
        throw TrainingError("ccp iteration " + std::to_string(outer_iter) +
                            ": row generation failed to settle");
    }

    std::size_t var_du() const { return 0; }
    std::size_t var_s_conv() const { return n_; }
    std::size_t var_s_line() const { return n_ + conv_.size(); }
    std::size_t var_a() const { return n_ + conv_.size() + line_.size(); }

    MorphKind kind_;
    const TrainingSet& t_;
    CcpConfig cfg_;
    bool dilation_;
    double conv_sign_;
    std::vector<std::size_t> neg_, pos_;
    const std::vector<std::size_t>& conv_;
    const std::vector<std::size_t>& line_;
    SlackWeights nu_;
    std::vector<double> ref_;
    std::size_t n_;
    std::vector<std::vector<char>> in_working_;  // persists across iterations
};

}  // namespace

TrainingSet make_training_set(Matrix x, std::vector<int> labels) {
    if (x.rows != labels.size())
        throw std::invalid_argument("training set: row/label count mismatch");
    if (x.cols == 0 || x.rows == 0)
        throw std::invalid_argument("training set: empty");
    for (double v : x.data)
        if (!std::isfinite(v))
            throw std::invalid_argument("training set: non-finite feature");
    for (int d : labels)
        if (d != -1 && d != +1)
            throw std::invalid_argument("training set: labels must be -1 or +1");
    return TrainingSet{std::move(x), std::move(labels)};
}

SlackWeights slack_weights(const TrainingSet& t) {
    require_both_classes(t);
    SlackWeights out;
    for (int cls : {-1, +1}) {
        auto rows = class_rows(t, cls);
        const std::size_t n = t.dim();
        std::vector<double> mean(n, 0.0);
        for (auto r : rows)
            for (std::size_t j = 0; j < n; ++j) mean[j] += t.x.at(r, j);
        for (double& v : mean) v /= static_cast<double>(rows.size());

        std::vector<double> lambda(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double diff = t.x.at(rows[i], j) - mean[j];
                d2 += diff * diff;
            }
            double dist = std::sqrt(d2);
            lambda[i] = dist < kDegenDist ? kLambdaCap : 1.0 / dist;
        }
        double top = *std::max_element(lambda.begin(), lambda.end());
        std::vector<double> nu(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) nu[i] = lambda[i] / top;
        (cls < 0 ? out.nu_neg : out.nu_pos) = std::move(nu);
    }
    return out;
}

std::vector<double> reference_vector(MorphKind kind, const TrainingSet& t) {
    const int cls = kind == MorphKind::Dilation ? -1 : +1;
    auto rows = class_rows(t, cls);
    if (rows.empty())
        throw std::invalid_argument("reference_vector: required class is empty");
    std::vector<double> extreme(t.dim());
    for (std::size_t j = 0; j < t.dim(); ++j) {
        double v = t.x.at(rows[0], j);
        for (auto r : rows) {
            double c = t.x.at(r, j);
            v = kind == MorphKind::Dilation ? std::max(v, c) : std::min(v, c);
        }
        extreme[j] = -v;
    }
    return extreme;
}

double morph_training_objective(MorphKind kind, std::span<const double> weights,
                                const TrainingSet& t, const SlackWeights& nu,
                                double regularization_c,
                                std::span<const double> reference) {
    auto neg = class_rows(t, -1);
    auto pos = class_rows(t, +1);
    double acc = 0.0;
    for (std::size_t i = 0; i < neg.size(); ++i)
        acc += nu.nu_neg[i] * std::max(0.0, unit_response(kind, weights, t.x.row(neg[i]))) /
               static_cast<double>(neg.size());
    for (std::size_t k = 0; k < pos.size(); ++k)
        acc += nu.nu_pos[k] * std::max(0.0, -unit_response(kind, weights, t.x.row(pos[k]))) /
               static_cast<double>(pos.size());
    for (std::size_t j = 0; j < weights.size(); ++j)
        acc += regularization_c * std::abs(weights[j] - reference[j]);
    return acc;
}

MorphUnit train_morph_unit(MorphKind kind, const TrainingSet& t,
                           const CcpConfig& cfg, CcpTrace* trace) {
    require_both_classes(t);
    if (cfg.regularization_c <= 0.0 || cfg.max_outer_iters <= 0 ||
        cfg.objective_tol <= 0.0)
        throw std::invalid_argument("ccp config values must be positive");
    UnitTrainer trainer(kind, t, cfg);
    return trainer.train(trace);
}

double fit_beta(const MorphUnit& erosion_unit, const MorphUnit& dilation_unit,
                const TrainingSet& t) {
    if (t.size() == 0) throw std::invalid_argument("fit_beta: empty training set");
    if (erosion_unit.kind != MorphKind::Erosion ||
        dilation_unit.kind != MorphKind::Dilation)
        throw std::invalid_argument("fit_beta: unit kinds are wrong");
    if (erosion_unit.dim() != t.dim() || dilation_unit.dim() != t.dim())
        throw std::invalid_argument("fit_beta: unit/training dimension mismatch");

    const std::size_t m = t.size();
    std::vector<double> ero(m), dil(m);
    for (std::size_t i = 0; i < m; ++i) {
        ero[i] = unit_response(MorphKind::Erosion, erosion_unit.weights, t.x.row(i));
        dil[i] = unit_response(MorphKind::Dilation, dilation_unit.weights, t.x.row(i));
    }

    // Hinge loss of the mix is piecewise linear in beta; its minimum sits at a
    // kink (the per-sample zero crossings) or an endpoint.
    std::vector<double> candidates{0.0, 1.0};
    for (std::size_t i = 0; i < m; ++i) {
        double denom = ero[i] - dil[i];
        if (denom == 0.0) continue;
        double b = ero[i] / denom;
        if (b > 0.0 && b < 1.0) candidates.push_back(b);
    }
    std::sort(candidates.begin(), candidates.end());

    auto hinge_total = [&](double beta) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double tau = beta * dil[i] + (1.0 - beta) * ero[i];
            s += std::max(0.0, -static_cast<double>(t.labels[i]) * tau);
        }
        return s;
    };

    double best_beta = candidates.front();
    double best_h = hinge_total(best_beta);
    for (double b : candidates) {
        double h = hinge_total(b);
        if (h < best_h) {  // strict: ties keep the smallest beta
            best_h = h;
            best_beta = b;
        }
    }
    return best_beta;
}

DepModel train_dep(const TrainingSet& t, const CcpConfig& cfg) {
    MorphUnit ero = train_morph_unit(MorphKind::Erosion, t, cfg);
    MorphUnit dil = train_morph_unit(MorphKind::Dilation, t, cfg);
    double beta = fit_beta(ero, dil, t);
    return make_dep_model(std::move(ero), std::move(dil), beta);
}

}  // namespace rdep
