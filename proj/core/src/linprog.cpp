#include "rdep/linprog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "rdep/errors.hpp"

namespace rdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualTol = 1e-9;    // reduced-cost threshold for entering
constexpr double kDegenStep = 1e-11; // step below which a pivot counts as degenerate
constexpr int kStallLimit = 64;      // degenerate pivots before Bland's rule kicks in

// Nonbasic resting position. Free variables rest at value zero.
enum class Rest : std::uint8_t { Lower, Upper, Zero, Basic };

struct Column {
    std::vector<std::pair<int, double>> entries;  // (row, coefficient)
};

class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

    LpSolution run() {
        if (num_artificial_ > 0) {
            if (!optimize(/*phase1=*/true))
                throw SolverError("lp: pivot cap exceeded in phase 1");
            if (phase_objective() > lp::kFeasTol)
                return LpSolution{LpStatus::Infeasible, {}, 0.0};
            retire_artificials();
        }
        if (!optimize(/*phase1=*/false))
            throw SolverError("lp: pivot cap exceeded in phase 2");
        if (unbounded_) return LpSolution{LpStatus::Unbounded, {}, 0.0};
        return extract();
    }

private:
    const LinearProgram& lp_;

    int n_ = 0;       // structural variables
    int m_ = 0;       // rows (= slack variables)
    int total_ = 0;   // structural + slack + artificial
    int num_artificial_ = 0;

    std::vector<Column> cols_;
    std::vector<double> cost_;    // phase-2 costs
    std::vector<double> lo_, hi_;
    std::vector<Rest> state_;
    std::vector<double> value_;   // current value of every variable
    std::vector<int> basis_;      // variable basic in each row
    std::vector<char> fixed_out_; // retired artificials, never re-enter

    Eigen::MatrixXd binv_;
    bool unbounded_ = false;
    long pivots_ = 0;
    long pivot_cap_ = 0;

    void build() {
        n_ = static_cast<int>(lp_.num_vars());
        m_ = static_cast<int>(lp_.rows.size());
        if (n_ == 0) throw std::invalid_argument("lp: no variables");
        for (double c : lp_.objective)
            if (!std::isfinite(c)) throw std::invalid_argument("lp: non-finite objective");
        for (int j = 0; j < n_; ++j) {
            if (std::isnan(lp_.lower[j]) || std::isnan(lp_.upper[j]) ||
                lp_.lower[j] > lp_.upper[j])
                throw std::invalid_argument("lp: bad variable bounds");
        }
        for (const auto& row : lp_.rows) {
            if (!std::isfinite(row.rhs)) throw std::invalid_argument("lp: non-finite rhs");
            for (auto [j, a] : row.terms) {
                if (j >= static_cast<std::size_t>(n_))
                    throw std::invalid_argument("lp: row references unknown variable");
                if (!std::isfinite(a)) throw std::invalid_argument("lp: non-finite coefficient");
            }
        }

        cols_.resize(n_ + m_);
        cost_.assign(n_ + m_, 0.0);
        lo_.assign(n_ + m_, 0.0);
        hi_.assign(n_ + m_, kInf);
        for (int j = 0; j < n_; ++j) {
            cost_[j] = lp_.objective[j];
            lo_[j] = lp_.lower[j];
            hi_[j] = lp_.upper[j];
        }
        for (int i = 0; i < m_; ++i) {
            for (auto [j, a] : lp_.rows[i].terms)
                if (a != 0.0) cols_[j].entries.push_back({i, a});
            cols_[n_ + i].entries.push_back({i, 1.0});  // slack
        }

        // Rest nonbasic structural variables at a finite bound when one exists.
        state_.assign(n_ + m_, Rest::Basic);
        value_.assign(n_ + m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lo_[j])) {
                state_[j] = Rest::Lower;
                value_[j] = lo_[j];
            } else if (std::isfinite(hi_[j])) {
                state_[j] = Rest::Upper;
                value_[j] = hi_[j];
            } else {
                state_[j] = Rest::Zero;
                value_[j] = 0.0;
            }
        }

        // Residual rhs at the resting point decides slack vs artificial basis.
        std::vector<double> resid(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double ax = 0.0;
            for (auto [j, a] : lp_.rows[i].terms) ax += a * value_[j];
            resid[i] = lp_.rows[i].rhs - ax;
        }
        basis_.assign(m_, -1);
        std::vector<int> art_rows;
        for (int i = 0; i < m_; ++i) {
            if (resid[i] >= 0.0) {
                basis_[i] = n_ + i;
                value_[n_ + i] = resid[i];
            } else {
                art_rows.push_back(i);
            }
        }
        num_artificial_ = static_cast<int>(art_rows.size());
        total_ = n_ + m_ + num_artificial_;
        cols_.resize(total_);
        cost_.resize(total_, 0.0);
        lo_.resize(total_, 0.0);
        hi_.resize(total_, kInf);
        state_.resize(total_, Rest::Basic);
        value_.resize(total_, 0.0);
        fixed_out_.assign(total_, 0);
        for (int k = 0; k < num_artificial_; ++k) {
            int row = art_rows[k];
            int v = n_ + m_ + k;
            cols_[v].entries.push_back({row, -1.0});  // A z + s - t = b with t >= 0
            basis_[row] = v;
            value_[v] = -resid[row];
            state_[n_ + row] = Rest::Lower;  // that row's slack waits at zero
            value_[n_ + row] = 0.0;
        }

        binv_ = Eigen::MatrixXd::Identity(m_, m_);
        for (int k = 0; k < num_artificial_; ++k)
            binv_(art_rows[k], art_rows[k]) = -1.0;

        pivot_cap_ = 50L * (static_cast<long>(m_) + total_);
    }

    double phase_objective() const {
        double s = 0.0;
        for (int v = n_ + m_; v < total_; ++v)
            s += (state_[v] == Rest::Basic) ? value_[v] : 0.0;
        return s;
    }

    void retire_artificials() {
        // Pivot leftover artificials out of the basis where possible; a row
        // that admits no pivot is redundant and keeps its artificial pinned
        // at zero.
        for (int i = 0; i < m_; ++i) {
            int v = basis_[i];
            if (v < n_ + m_) continue;
            Eigen::VectorXd brow = binv_.row(i);
            int enter = -1;
            double best = lp::kPivotTol;
            for (int j = 0; j < n_ + m_; ++j) {
                if (state_[j] == Rest::Basic) continue;
                double a = 0.0;
                for (auto [r, c] : cols_[j].entries) a += brow[r] * c;
                if (std::abs(a) > best) {
                    best = std::abs(a);
                    enter = j;
                }
            }
            if (enter >= 0) {
                Eigen::VectorXd w = ftran(enter);
                pivot(enter, i, w, /*step=*/0.0, /*leaver_at_upper=*/false);
                state_[enter] = Rest::Basic;
            }
        }
        for (int v = n_ + m_; v < total_; ++v) {
            hi_[v] = 0.0;
            fixed_out_[v] = 1;
        }
    }

    Eigen::VectorXd ftran(int j) const {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
        for (auto [r, c] : cols_[j].entries) w += c * binv_.col(r);
        return w;
    }

    // One simplex phase. Returns false if the pivot cap was hit.
    bool optimize(bool phase1) {
        const auto cost_of = [&](int v) -> double {
            if (phase1) return v >= n_ + m_ ? 1.0 : 0.0;
            return cost_[v];
        };

        bool bland = false;
        int stall = 0;
        double last_obj = current_objective(phase1);

        while (true) {
            if (++pivots_ > pivot_cap_) return false;

            // Simplex multipliers y = B^-T c_B.
            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = cost_of(basis_[i]);
            Eigen::VectorXd y = binv_.transpose() * cb;

            // Pricing.
            int enter = -1;
            int direction = +1;
            double best_score = 0.0;
            for (int j = 0; j < total_; ++j) {
                if (state_[j] == Rest::Basic || fixed_out_[j]) continue;
                if (j >= n_ + m_) continue;  // artificials never re-enter
                double d = cost_of(j);
                for (auto [r, c] : cols_[j].entries) d -= y[r] * c;
                int dir = 0;
                if (state_[j] == Rest::Lower && d < -kDualTol) dir = +1;
                else if (state_[j] == Rest::Upper && d > kDualTol) dir = -1;
                else if (state_[j] == Rest::Zero && std::abs(d) > kDualTol)
                    dir = d < 0.0 ? +1 : -1;
                if (dir == 0) continue;
                if (bland) { enter = j; direction = dir; break; }
                double score = std::abs(d);
                if (score > best_score + 1e-15) {
                    best_score = score;
                    enter = j;
                    direction = dir;
                }
            }
            if (enter < 0) {
                unbounded_ = false;
                return true;
            }

            Eigen::VectorXd w = ftran(enter);

            // Ratio test. The entering variable moves by t >= 0 towards
            // `direction`; basic variable i changes at rate -direction * w_i.
            double t_max = kInf;
            int leave_row = -1;
            bool leave_at_upper = false;
            if (state_[enter] != Rest::Zero && std::isfinite(hi_[enter] - lo_[enter]))
                t_max = hi_[enter] - lo_[enter];  // bound-flip distance

            double best_pivot = 0.0;
            for (int i = 0; i < m_; ++i) {
                double wi = w[i];
                if (std::abs(wi) <= lp::kPivotTol) continue;
                int bv = basis_[i];
                double rate = direction * wi;  // decrease rate of the basic value
                double t;
                bool hits_upper;
                if (rate > 0.0) {
                    if (!std::isfinite(lo_[bv])) continue;
                    t = (value_[bv] - lo_[bv]) / rate;
                    hits_upper = false;
                } else {
                    if (!std::isfinite(hi_[bv])) continue;
                    t = (value_[bv] - hi_[bv]) / rate;
                    hits_upper = true;
                }
                if (t < 0.0) t = 0.0;
                bool better = false;
                if (t < t_max - 1e-12) {
                    better = true;
                } else if (t <= t_max + 1e-12 && leave_row >= 0) {
                    better = bland ? basis_[i] < basis_[leave_row]
                                   : std::abs(wi) > best_pivot;
                }
                if (better) {
                    t_max = std::min(t_max, t);
                    leave_row = i;
                    leave_at_upper = hits_upper;
                    best_pivot = std::abs(wi);
                }
            }

            if (!std::isfinite(t_max)) {
                if (phase1) throw SolverError("lp: phase-1 subproblem unbounded");
                unbounded_ = true;
                return true;
            }

            double step = direction * t_max;
            if (leave_row < 0) {
                // Bound flip: entering variable crosses to its opposite bound.
                apply_step(w, enter, step);
                state_[enter] = direction > 0 ? Rest::Upper : Rest::Lower;
                value_[enter] = direction > 0 ? hi_[enter] : lo_[enter];
            } else {
                pivot(enter, leave_row, w, step, leave_at_upper);
                state_[enter] = Rest::Basic;
            }

            // Anti-cycling bookkeeping: fall back to Bland's rule after a run
            // of degenerate pivots, return to Dantzig pricing on real progress.
            double obj = current_objective(phase1);
            if (last_obj - obj > 1e-12) {
                stall = 0;
                bland = false;
            } else if (t_max <= kDegenStep) {
                if (++stall >= kStallLimit) bland = true;
            }
            last_obj = obj;
        }
    }

    double current_objective(bool phase1) const {
        if (phase1) return phase_objective();
        double s = 0.0;
        for (int v = 0; v < n_ + m_; ++v)
            s += cost_[v] * value_[v];
        return s;
    }

    // Moves every basic variable along -w*step and the entering variable by
    // step, without changing the basis.
    void apply_step(const Eigen::VectorXd& w, int enter, double step) {
        if (step != 0.0) {
            for (int i = 0; i < m_; ++i)
                value_[basis_[i]] -= step * w[i];
        }
        value_[enter] += step;
    }

    void pivot(int enter, int leave_row, const Eigen::VectorXd& w, double step,
               bool leaver_at_upper) {
        apply_step(w, enter, step);
        int leaver = basis_[leave_row];
        // Snap the leaver onto the bound that blocked the step.
        if (leaver_at_upper && std::isfinite(hi_[leaver])) {
            state_[leaver] = Rest::Upper;
            value_[leaver] = hi_[leaver];
        } else if (std::isfinite(lo_[leaver])) {
            state_[leaver] = Rest::Lower;
            value_[leaver] = lo_[leaver];
        } else {
            state_[leaver] = Rest::Zero;
            value_[leaver] = 0.0;
        }
        basis_[leave_row] = enter;

        // Product-form update of the dense inverse.
        double alpha = w[leave_row];
        Eigen::RowVectorXd prow = binv_.row(leave_row) / alpha;
        Eigen::VectorXd u = w;
        u[leave_row] = alpha - 1.0;
        binv_.noalias() -= u * prow;
        binv_.row(leave_row) = prow;
    }

    LpSolution extract() {
        LpSolution out;
        out.status = LpStatus::Optimal;
        out.point.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) out.point[j] = value_[j];

        // Verify the point against the original data before reporting it.
        double worst = 0.0;
        for (const auto& row : lp_.rows) {
            double ax = 0.0;
            for (auto [j, a] : row.terms) ax += a * out.point[j];
            worst = std::max(worst, ax - row.rhs);
        }
        for (int j = 0; j < n_; ++j) {
            worst = std::max(worst, lp_.lower[j] - out.point[j]);
            worst = std::max(worst, out.point[j] - lp_.upper[j]);
        }
        if (worst > lp::kFeasTol)
            throw SolverError("lp: numerical loss of feasibility");

        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += lp_.objective[j] * out.point[j];
        out.objective_value = obj;
        return out;
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    Simplex solver(lp);
    return solver.run();
}

}  // namespace rdep
