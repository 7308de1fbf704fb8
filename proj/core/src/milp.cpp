#include "hybzono/lp.hpp"

#include "simplex.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>

namespace hybzono
{

namespace
{
    using detail::BoundedSimplex;
    using detail::SimplexStatus;

    constexpr double kIntegralTol = 1e-9;

    [[noreturn]] void numerical_failure(const char* where)
    {
        throw SolverError(SolverError::Kind::Numerical, std::string(where) + ": simplex failed to converge");
    }

    [[noreturn]] void budget_failure(std::size_t budget)
    {
        throw SolverError(SolverError::Kind::BudgetExhausted,
                          "branch and bound exceeded node budget of " + std::to_string(budget));
    }

    BoundedSimplex make_simplex(const LinearProgram& lp)
    {
        lp.validate();
        const Matrix A = lp.eq_A.rows() == 0 ? Matrix(0, lp.num_vars()) : lp.eq_A;
        return BoundedSimplex(A, lp.eq_b, lp.lower, lp.upper);
    }

    void check_binaries(const MilpQuery& q)
    {
        for (Index k : q.binary_vars)
        {
            if (k < 0 || k >= q.base.num_vars())
                throw std::invalid_argument("MilpQuery: binary index out of range");
            if (q.base.lower[k] > -1.0 || q.base.upper[k] < 1.0)
            {
                // a binary pre-fixed by its bounds is allowed, but only at +-1
                const bool fixed = q.base.lower[k] == q.base.upper[k]
                                   && std::abs(std::abs(q.base.lower[k]) - 1.0) == 0.0;
                if (!fixed)
                    throw std::invalid_argument("MilpQuery: binary variables need bounds [-1, 1] or a fixed +-1");
            }
        }
    }

    bool is_fixed(const BoundedSimplex& lp, Index k) { return lp.lower(k) == lp.upper(k); }

    class BranchAndBound
    {
    public:
        explicit BranchAndBound(const MilpQuery& q)
            : q_(q), budget_(q.node_budget ? q.node_budget : default_node_budget()),
              optimize_(q.mode == MilpMode::Maximize && q.base.objective.size() != 0)
        {
        }

        SolveOutcome solve()
        {
            BoundedSimplex root = make_simplex(q_.base);
            explore(root);
            SolveOutcome out;
            out.nodes_explored = nodes_;
            if (!best_)
            {
                out.status = SolveStatus::Infeasible;
                return out;
            }
            out.status = optimize_ ? SolveStatus::Optimal : SolveStatus::Feasible;
            if (optimize_)
                out.value = best_value_;
            out.witness = *best_;
            return out;
        }

        std::size_t nodes() const { return nodes_; }

    private:
        // Solves the node LP; false when infeasible.
        bool solve_node(BoundedSimplex& lp)
        {
            if (++nodes_ > budget_)
                budget_failure(budget_);
            const SimplexStatus s = optimize_ ? lp.maximize(q_.base.objective) : lp.find_feasible();
            if (s == SimplexStatus::Infeasible)
                return false;
            if (s != SimplexStatus::Feasible && s != SimplexStatus::Optimal)
                numerical_failure("milp_solve");
            return true;
        }

        void accept(const BoundedSimplex& lp)
        {
            Vector x = lp.solution().cwiseMax(q_.base.lower).cwiseMin(q_.base.upper);
            if (optimize_)
            {
                const double v = q_.base.objective.dot(x);
                if (!best_ || v > best_value_)
                {
                    best_value_ = v;
                    best_ = std::move(x);
                }
            }
            else
            {
                best_ = std::move(x);
                done_ = true;
            }
        }

        bool pruned_by_bound(const BoundedSimplex& lp) const
        {
            if (!optimize_ || !best_)
                return false;
            const double bound = q_.base.objective.dot(lp.solution());
            return bound <= best_value_ + 1e-9 * (1.0 + std::abs(best_value_));
        }

        void explore(BoundedSimplex& lp)
        {
            if (done_ || !solve_node(lp) || pruned_by_bound(lp))
                return;

            const Vector x = lp.solution();
            Index branch = -1;
            bool all_integral = true;
            for (Index k : q_.binary_vars)
            {
                if (is_fixed(lp, k))
                    continue;
                if (std::abs(std::abs(x[k]) - 1.0) > kIntegralTol)
                {
                    branch = k;
                    all_integral = false;
                    break;
                }
            }

            if (all_integral)
            {
                // fix the integral binaries exactly so the witness is exact
                BoundedSimplex fixed = lp;
                Index first_free = -1;
                for (Index k : q_.binary_vars)
                {
                    if (is_fixed(fixed, k))
                        continue;
                    if (first_free < 0)
                        first_free = k;
                    const double v = x[k] > 0.0 ? 1.0 : -1.0;
                    fixed.set_bounds(k, v, v);
                }
                if (first_free < 0)
                {
                    accept(lp);
                    return;
                }
                if (solve_node(fixed))
                {
                    // an integral relaxation optimum closes the subtree
                    accept(fixed);
                    return;
                }
                branch = first_free;
            }

            BoundedSimplex down = lp;
            down.set_bounds(branch, -1.0, -1.0);
            explore(down);
            if (done_)
                return;
            lp.set_bounds(branch, 1.0, 1.0);
            explore(lp);
        }

        const MilpQuery& q_;
        std::size_t budget_;
        bool optimize_;
        std::size_t nodes_ = 0;
        bool done_ = false;
        std::optional<Vector> best_;
        double best_value_ = 0.0;
    };

    class Enumerator
    {
    public:
        explicit Enumerator(const MilpQuery& q) : q_(q), budget_(q.node_budget ? q.node_budget : default_node_budget()) {}

        std::vector<std::vector<std::int8_t>> run()
        {
            BoundedSimplex root = make_simplex(q_.base);
            current_.reserve(q_.binary_vars.size());
            explore(root, 0);
            return std::move(found_);
        }

        std::size_t nodes() const { return nodes_; }

    private:
        void explore(BoundedSimplex& lp, std::size_t depth)
        {
            if (++nodes_ > budget_)
                budget_failure(budget_);
            const SimplexStatus s = lp.find_feasible();
            if (s == SimplexStatus::Infeasible)
                return;
            if (s != SimplexStatus::Feasible)
                numerical_failure("enumerate_integer_feasible");
            if (depth == q_.binary_vars.size())
            {
                found_.push_back(current_);
                return;
            }
            const Index k = q_.binary_vars[depth];
            if (is_fixed(lp, k))
            {
                current_.push_back(lp.lower(k) > 0.0 ? 1 : -1);
                explore(lp, depth + 1);
                current_.pop_back();
                return;
            }
            {
                BoundedSimplex down = lp;
                down.set_bounds(k, -1.0, -1.0);
                current_.push_back(-1);
                explore(down, depth + 1);
                current_.pop_back();
            }
            lp.set_bounds(k, 1.0, 1.0);
            current_.push_back(1);
            explore(lp, depth + 1);
            current_.pop_back();
        }

        const MilpQuery& q_;
        std::size_t budget_;
        std::size_t nodes_ = 0;
        std::vector<std::int8_t> current_;
        std::vector<std::vector<std::int8_t>> found_;
    };

    SolveOutcome builtin_solve(const MilpQuery& q)
    {
        check_binaries(q);
        if (q.binary_vars.empty())
        {
            LinearProgram lp = q.base;
            if (q.mode == MilpMode::Feasibility)
                lp.objective.resize(0);
            return lp_solve(lp);
        }
        BranchAndBound bb(q);
        return bb.solve();
    }

    std::vector<std::vector<std::int8_t>> builtin_enumerate(const MilpQuery& q, std::size_t* nodes)
    {
        check_binaries(q);
        Enumerator e(q);
        auto out = e.run();
        if (nodes)
            *nodes = e.nodes();
        return out;
    }

    std::mutex& backend_mutex()
    {
        static std::mutex m;
        return m;
    }

    MilpBackend& backend_slot()
    {
        static MilpBackend b = builtin_backend();
        return b;
    }
} // namespace

std::size_t default_node_budget()
{
    if (const char* env = std::getenv("HYBZONO_NODE_BUDGET"))
    {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 5'000'000;
}

SolveOutcome milp_solve(const MilpQuery& query)
{
    try
    {
        return active_backend().solve(query);
    }
    catch (const SolverError& e)
    {
        SolveOutcome out;
        out.status = e.kind() == SolverError::Kind::BudgetExhausted ? SolveStatus::BudgetExhausted
                                                                    : SolveStatus::NumericalError;
        return out;
    }
}

std::vector<std::vector<std::int8_t>> milp_enumerate(const MilpQuery& query, std::size_t* nodes)
{
    return active_backend().enumerate(query, nodes);
}

MilpBackend builtin_backend()
{
    return {builtin_solve, builtin_enumerate};
}

const MilpBackend& active_backend()
{
    std::lock_guard lock(backend_mutex());
    return backend_slot();
}

void set_backend(MilpBackend backend)
{
    std::lock_guard lock(backend_mutex());
    backend_slot() = std::move(backend);
}

} // namespace hybzono
