#include "hybzono/queries.hpp"

#include <cmath>

namespace hybzono
{

namespace
{
    MilpQuery base_query(const Matrix& A, const Vector& b, Index ng, Index nb, const QueryOptions& opts)
    {
        MilpQuery q;
        q.base = LinearProgram::factor_box(A.rows() == 0 ? Matrix(0, ng + nb) : A, b);
        q.binary_vars.reserve(static_cast<std::size_t>(nb));
        for (Index k = 0; k < nb; ++k)
            q.binary_vars.push_back(ng + k);
        q.node_budget = opts.node_budget;
        return q;
    }

    void raise_on_failure(const SolveOutcome& out, const char* where)
    {
        if (out.status == SolveStatus::BudgetExhausted)
            throw SolverError(SolverError::Kind::BudgetExhausted, std::string(where) + ": node budget exhausted");
        if (out.status == SolveStatus::NumericalError || out.status == SolveStatus::Unbounded)
            throw SolverError(SolverError::Kind::Numerical, std::string(where) + ": solver failure");
    }

    MilpQuery point_query(const HybridZonotope& z, const Vector& point, const QueryOptions& opts)
    {
        if (point.size() != z.n())
            throw std::invalid_argument("contains_point: point dimension differs from set dimension");
        const Matrix A = vcat(hcat(z.Ac(), z.Ab()), hcat(z.Gc(), z.Gb()));
        const Vector b = vcat(z.b(), Vector(point - z.c()));
        return base_query(A, b, z.ng(), z.nb(), opts);
    }
} // namespace

MilpQuery factor_query(const HybridZonotope& z, const QueryOptions& opts)
{
    return base_query(hcat(z.Ac(), z.Ab()), z.b(), z.ng(), z.nb(), opts);
}

bool is_empty(const HybridZonotope& z, const QueryOptions& opts)
{
    const SolveOutcome out = milp_solve(factor_query(z, opts));
    raise_on_failure(out, "is_empty");
    return !out.has_solution();
}

bool is_empty(const ConstrainedZonotope& z)
{
    return is_empty(lift(z));
}

std::optional<Vector> membership_witness(const HybridZonotope& z, const Vector& point, const QueryOptions& opts)
{
    const SolveOutcome out = milp_solve(point_query(z, point, opts));
    raise_on_failure(out, "contains_point");
    if (!out.has_solution())
        return std::nullopt;
    return out.witness;
}

bool contains_point(const HybridZonotope& z, const Vector& point, const QueryOptions& opts)
{
    return membership_witness(z, point, opts).has_value();
}

bool contains_point(const ConstrainedZonotope& z, const Vector& point)
{
    return contains_point(lift(z), point);
}

SupportResult support(const HybridZonotope& z, const Vector& l, const QueryOptions& opts)
{
    if (l.size() != z.n())
        throw std::invalid_argument("support: direction dimension differs from set dimension");
    MilpQuery q = factor_query(z, opts);
    q.mode = MilpMode::Maximize;
    q.base.objective = vcat(Vector(z.Gc().transpose() * l), Vector(z.Gb().transpose() * l));
    const SolveOutcome out = milp_solve(q);
    raise_on_failure(out, "support");
    if (!out.has_solution())
        throw SolverError(SolverError::Kind::EmptySet, "support: set is empty");

    SupportResult r;
    r.factors = *out.witness;
    r.touch_point = z.Gc() * r.factors.head(z.ng()) + z.Gb() * r.factors.tail(z.nb()) + z.c();
    r.rho = l.dot(r.touch_point);
    r.halfspace = Halfspace(l, r.rho, l.isZero(0.0));
    return r;
}

double support_value(const HybridZonotope& z, const Vector& l, const QueryOptions& opts)
{
    return support(z, l, opts).rho;
}

double support_value(const ConstrainedZonotope& z, const Vector& l)
{
    return support_value(lift(z), l);
}

bool intersects_halfspace(const HybridZonotope& z, const Halfspace& h, const Matrix& R, const QueryOptions& opts)
{
    return !is_empty(halfspace_intersection(z, h, R), opts);
}

IntegerFeasibleSet enumerate_integer_feasible(const HybridZonotope& z, const QueryOptions& opts)
{
    const MilpQuery q = factor_query(z, opts);
    auto raw = milp_enumerate(q);
    std::vector<BinaryAssignment> entries;
    entries.reserve(raw.size());
    for (auto& v : raw)
        entries.emplace_back(std::move(v));
    return IntegerFeasibleSet(static_cast<std::size_t>(z.nb()), std::move(entries));
}

} // namespace hybzono
