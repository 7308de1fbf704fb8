#ifndef HYBZONO_LP_HPP_
#define HYBZONO_LP_HPP_

/**
 * @file lp.hpp
 * @brief LP and MILP engine used by every set query.
 *
 * All programs share one shape: maximize objective^T x subject to eq_A x = eq_b and
 * finite box bounds lower <= x <= upper. MILPs additionally restrict a subset of
 * variables to {-1, +1}. The built-in engine is a dense bounded-variable primal
 * simplex inside a depth-first branch and bound; `MilpBackend` is the seam for
 * plugging in an external solver.
 */

#include "hybzono/common.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hybzono
{

struct LinearProgram
{
    Vector objective; ///< maximised; empty means pure feasibility
    Matrix eq_A;
    Vector eq_b;
    Vector lower;
    Vector upper;

    Index num_vars() const { return lower.size(); }

    /// Factor-box program: n variables in [-1, 1] subject to A x = b.
    static LinearProgram factor_box(const Matrix& A, const Vector& b);

    /// Throws std::invalid_argument on inconsistent shapes or bad bounds.
    void validate() const;
};

enum class SolveStatus
{
    Feasible,
    Infeasible,
    Optimal,
    Unbounded,
    BudgetExhausted,
    NumericalError
};

const char* to_string(SolveStatus status);

struct SolveOutcome
{
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<Vector> witness;
    std::optional<double> value;
    std::size_t nodes_explored = 0;

    bool has_solution() const { return status == SolveStatus::Feasible || status == SolveStatus::Optimal; }
};

enum class MilpMode
{
    Feasibility,
    Maximize
};

struct MilpQuery
{
    LinearProgram base;
    std::vector<Index> binary_vars; ///< restricted to {-1, +1}
    MilpMode mode = MilpMode::Feasibility;
    bool enumerate_all = false;
    /// 0 selects default_node_budget()
    std::size_t node_budget = 0;
};

/// Node budget from HYBZONO_NODE_BUDGET, or 5'000'000.
std::size_t default_node_budget();

SolveOutcome lp_solve(const LinearProgram& lp);

/// Branch and bound over the binary variables: lowest-index undecided binary first,
/// -1 branch before +1. Feasibility mode stops at the first integer-feasible leaf;
/// maximize mode proves global optimality.
SolveOutcome milp_solve(const MilpQuery& query);

/// All assignments of the binary variables (in the order of query.binary_vars) whose
/// LP is feasible, lexicographically sorted with -1 < +1. Throws SolverError when the
/// node budget runs out.
std::vector<std::vector<std::int8_t>> milp_enumerate(const MilpQuery& query, std::size_t* nodes = nullptr);

/// Replaceable solver hooks. Defaults to the built-in engine.
struct MilpBackend
{
    std::function<SolveOutcome(const MilpQuery&)> solve;
    std::function<std::vector<std::vector<std::int8_t>>(const MilpQuery&, std::size_t*)> enumerate;
};

MilpBackend builtin_backend();
const MilpBackend& active_backend();
void set_backend(MilpBackend backend);

} // namespace hybzono

#endif
