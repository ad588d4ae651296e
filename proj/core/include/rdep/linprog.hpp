#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace rdep {

/// Linear program
///     minimize    c . z
///     subject to  A z <= b,   lower <= z <= upper
/// with per-variable bounds that may be -inf / +inf. Rows are stored sparse;
/// the solver is a bounded-variable primal simplex on a dense basis inverse.
struct LinearProgram {
    using Term = std::pair<std::size_t, double>;  // (variable index, coefficient)

    struct Row {
        std::vector<Term> terms;
        double rhs = 0.0;
    };

    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    LinearProgram() = default;
    explicit LinearProgram(std::size_t num_vars)
        : objective(num_vars, 0.0),
          lower(num_vars, -std::numeric_limits<double>::infinity()),
          upper(num_vars, std::numeric_limits<double>::infinity()) {}

    std::size_t num_vars() const { return objective.size(); }

    void set_bounds(std::size_t var, double lo, double hi) {
        lower[var] = lo;
        upper[var] = hi;
    }

    void add_row(std::vector<Term> terms, double rhs) {
        rows.push_back(Row{std::move(terms), rhs});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> point;     // present iff status == Optimal
    double objective_value = 0.0;  // meaningful iff status == Optimal
};

namespace lp {
inline constexpr double kFeasTol = 1e-8;    // constraint/bound satisfaction
inline constexpr double kOptTol = 1e-7;     // objective accuracy target
inline constexpr double kPivotTol = 1e-10;  // smallest admissible pivot
}  // namespace lp

/// Solves the program. Throws std::invalid_argument on malformed input
/// (non-finite objective/constraint data, lower > upper, bad indices) and
/// SolverError if the pivot cap 50 * (rows + cols) is exhausted.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace rdep
