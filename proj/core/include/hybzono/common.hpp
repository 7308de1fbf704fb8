#ifndef HYBZONO_COMMON_HPP_
#define HYBZONO_COMMON_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hybzono
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when an LP/MILP query cannot be answered: node budget exhausted,
/// numerical breakdown, or a query that needs a nonempty set got an empty one.
class SolverError : public std::runtime_error
{
public:
    enum class Kind
    {
        BudgetExhausted,
        Numerical,
        EmptySet
    };

    SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

namespace tol
{
/// equality residual accepted for witnesses and membership
inline constexpr double feasibility = 1e-8;
/// bound violation accepted inside the simplex
inline constexpr double primal = 1e-9;
inline constexpr double optimality = 1e-9;
inline constexpr double pivot = 1e-9;
} // namespace tol

} // namespace hybzono

#endif
