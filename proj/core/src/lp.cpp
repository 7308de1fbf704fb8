#include "hybzono/lp.hpp"

#include "simplex.hpp"

#include <cmath>

namespace hybzono
{

LinearProgram LinearProgram::factor_box(const Matrix& A, const Vector& b)
{
    LinearProgram lp;
    lp.eq_A = A;
    lp.eq_b = b;
    lp.lower = Vector::Constant(A.cols(), -1.0);
    lp.upper = Vector::Constant(A.cols(), 1.0);
    return lp;
}

void LinearProgram::validate() const
{
    const Index n = lower.size();
    if (upper.size() != n)
        throw std::invalid_argument("LinearProgram: bound vectors differ in length");
    if (eq_A.cols() != n && !(eq_A.rows() == 0))
        throw std::invalid_argument("LinearProgram: eq_A column count differs from variable count");
    if (eq_A.rows() != eq_b.size())
        throw std::invalid_argument("LinearProgram: eq_A rows differ from length of eq_b");
    if (objective.size() != 0 && objective.size() != n)
        throw std::invalid_argument("LinearProgram: objective length differs from variable count");
    for (Index j = 0; j < n; ++j)
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] > upper[j])
            throw std::invalid_argument("LinearProgram: bounds must be finite with lower <= upper");
}

const char* to_string(SolveStatus status)
{
    switch (status)
    {
    case SolveStatus::Feasible:
        return "FEASIBLE";
    case SolveStatus::Infeasible:
        return "INFEASIBLE";
    case SolveStatus::Optimal:
        return "OPTIMAL";
    case SolveStatus::Unbounded:
        return "UNBOUNDED";
    case SolveStatus::BudgetExhausted:
        return "BUDGET_EXHAUSTED";
    case SolveStatus::NumericalError:
        return "NUMERICAL_ERROR";
    }
    return "UNKNOWN";
}

SolveOutcome lp_solve(const LinearProgram& lp)
{
    lp.validate();
    const Matrix A = lp.eq_A.rows() == 0 ? Matrix(0, lp.num_vars()) : lp.eq_A;
    detail::BoundedSimplex simplex(A, lp.eq_b, lp.lower, lp.upper);

    SolveOutcome out;
    out.nodes_explored = 1;
    const bool optimize = lp.objective.size() != 0;
    const auto status = optimize ? simplex.maximize(lp.objective) : simplex.find_feasible();
    switch (status)
    {
    case detail::SimplexStatus::Infeasible:
        out.status = SolveStatus::Infeasible;
        return out;
    case detail::SimplexStatus::IterationLimit:
    case detail::SimplexStatus::Numerical:
        out.status = SolveStatus::NumericalError;
        return out;
    default:
        break;
    }
    Vector x = simplex.solution();
    x = x.cwiseMax(lp.lower).cwiseMin(lp.upper);
    if (optimize)
    {
        out.status = SolveStatus::Optimal;
        out.value = lp.objective.dot(x);
    }
    else
    {
        out.status = SolveStatus::Feasible;
    }
    out.witness = std::move(x);
    return out;
}

} // namespace hybzono
