#ifndef HYBZONO_QUERIES_HPP_
#define HYBZONO_QUERIES_HPP_

/**
 * @file queries.hpp
 * @brief Set queries answered by LP/MILP over the factor space.
 *
 * The factor vector is ordered (xi_c, xi_b): continuous factors first, then binaries.
 */

#include "hybzono/lp.hpp"
#include "hybzono/setops.hpp"
#include "hybzono/setrep.hpp"

namespace hybzono
{

struct QueryOptions
{
    /// 0 selects default_node_budget()
    std::size_t node_budget = 0;
};

/// Program with constraints Ac xi_c + Ab xi_b = b over the factor box (mixed-integer form).
MilpQuery factor_query(const HybridZonotope& z, const QueryOptions& opts = {});

/// True iff the mixed-integer factor constraints have no solution.
bool is_empty(const HybridZonotope& z, const QueryOptions& opts = {});

/// LP emptiness of a constrained zonotope.
bool is_empty(const ConstrainedZonotope& z);

/// True iff some factor vector satisfies the constraints and maps to `point` (tolerance 1e-8).
bool contains_point(const HybridZonotope& z, const Vector& point, const QueryOptions& opts = {});
bool contains_point(const ConstrainedZonotope& z, const Vector& point);

/// Witness factor vector (xi_c, xi_b) for `point`, if it belongs to the set.
std::optional<Vector> membership_witness(const HybridZonotope& z, const Vector& point, const QueryOptions& opts = {});

struct SupportResult
{
    double rho = 0.0;
    Halfspace halfspace;
    /// point of the set on the supporting hyperplane
    Vector touch_point;
    /// maximising factor vector (xi_c, xi_b)
    Vector factors;
};

/// Global maximum of l^T z over the set and the supporting halfspace {z | l^T z <= rho}.
/// Throws SolverError(EmptySet) for an empty set and SolverError(BudgetExhausted) when
/// branch and bound runs out of nodes.
SupportResult support(const HybridZonotope& z, const Vector& l, const QueryOptions& opts = {});
double support_value(const HybridZonotope& z, const Vector& l, const QueryOptions& opts = {});
double support_value(const ConstrainedZonotope& z, const Vector& l);

/// True iff { z in Z | l^T R z <= rho } is nonempty; one MILP feasibility problem.
bool intersects_halfspace(const HybridZonotope& z, const Halfspace& h, const Matrix& R,
                          const QueryOptions& opts = {});

/// All binary assignments whose leaf is nonempty, sorted lexicographically (-1 < +1).
IntegerFeasibleSet enumerate_integer_feasible(const HybridZonotope& z, const QueryOptions& opts = {});

} // namespace hybzono

#endif
