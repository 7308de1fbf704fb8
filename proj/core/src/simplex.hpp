#ifndef HYBZONO_SRC_SIMPLEX_HPP_
#define HYBZONO_SRC_SIMPLEX_HPP_

// Dense bounded-variable primal simplex on the tableau B^-1 A.
//
// Problem: A x = b, lo <= x <= hi (all bounds finite). Every row starts with an
// artificial basic variable fixed to [0, 0]; a composite phase 1 minimises the
// total bound violation of the basic variables, so the same routine handles a
// cold start and a warm start after bounds were tightened (branch and bound).
// Artificial columns are never stored: once an artificial leaves the basis it
// is fixed at zero and can never re-enter.

#include "hybzono/common.hpp"

#include <memory>
#include <vector>

namespace hybzono::detail
{

enum class SimplexStatus
{
    Feasible,
    Optimal,
    Infeasible,
    IterationLimit,
    Numerical
};

class BoundedSimplex
{
public:
    BoundedSimplex(const Matrix& A, const Vector& b, const Vector& lo, const Vector& hi);

    Index rows() const { return m_; }
    Index cols() const { return n_; }

    double lower(Index j) const { return lo_[j]; }
    double upper(Index j) const { return hi_[j]; }

    /// Changes the bounds of a structural variable, keeping the tableau valid.
    void set_bounds(Index j, double lo, double hi);

    /// Composite phase 1; returns Feasible or Infeasible (or a failure status).
    SimplexStatus find_feasible();

    /// Phase 2 from a feasible basis; returns Optimal (or a failure status).
    SimplexStatus maximize(const Vector& objective);

    /// Current structural values.
    Vector solution() const;

    std::size_t pivots() const { return pivots_; }

private:
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    struct Entering
    {
        Index column = -1;
        int direction = 0;
    };

    double basic_lower(Index i) const;
    double basic_upper(Index i) const;

    Entering choose_entering(const Vector& reduced, bool bland) const;
    bool step(const Entering& e, bool phase1, bool bland);
    void pivot(Index row, Index column);
    void refactor();
    double residual() const;

    SimplexStatus run(const Vector* objective);

    std::shared_ptr<const Matrix> A_;
    std::shared_ptr<const Vector> b_;
    Index m_ = 0;
    Index n_ = 0;

    RowMajor T_;
    Vector xB_;
    std::vector<Index> basis_;   // structural index, or n_ + row for an artificial
    std::vector<Index> pos_;     // basis row of a structural, -1 when nonbasic
    std::vector<char> at_upper_; // nonbasic structurals only
    Vector x_;                   // values of nonbasic structurals
    Vector lo_;
    Vector hi_;

    std::size_t pivots_ = 0;
    std::size_t since_refactor_ = 0;
    double last_step_ = 0.0;
};

} // namespace hybzono::detail

#endif
