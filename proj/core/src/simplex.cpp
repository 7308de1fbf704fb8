#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybzono::detail
{

namespace
{
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::size_t kDegenerateBeforeBland = 40;
} // namespace

BoundedSimplex::BoundedSimplex(const Matrix& A, const Vector& b, const Vector& lo, const Vector& hi)
    : A_(std::make_shared<const Matrix>(A)), b_(std::make_shared<const Vector>(b)), m_(A.rows()), n_(A.cols()),
      T_(A), basis_(static_cast<std::size_t>(A.rows())), pos_(static_cast<std::size_t>(A.cols()), -1),
      at_upper_(static_cast<std::size_t>(A.cols()), 0), x_(A.cols()), lo_(lo), hi_(hi)
{
    if (b.size() != m_ || lo.size() != n_ || hi.size() != n_)
        throw std::invalid_argument("BoundedSimplex: inconsistent dimensions");
    for (Index j = 0; j < n_; ++j)
    {
        if (!std::isfinite(lo_[j]) || !std::isfinite(hi_[j]) || lo_[j] > hi_[j])
            throw std::invalid_argument("BoundedSimplex: bounds must be finite with lower <= upper");
        // start nonbasic at the bound closest to zero
        const bool upper = std::abs(hi_[j]) < std::abs(lo_[j]);
        at_upper_[static_cast<std::size_t>(j)] = upper;
        x_[j] = upper ? hi_[j] : lo_[j];
    }
    for (Index i = 0; i < m_; ++i)
        basis_[static_cast<std::size_t>(i)] = n_ + i;
    xB_ = b - A * x_;
}

double BoundedSimplex::basic_lower(Index i) const
{
    const Index k = basis_[static_cast<std::size_t>(i)];
    return k >= n_ ? 0.0 : lo_[k];
}

double BoundedSimplex::basic_upper(Index i) const
{
    const Index k = basis_[static_cast<std::size_t>(i)];
    return k >= n_ ? 0.0 : hi_[k];
}

void BoundedSimplex::set_bounds(Index j, double lo, double hi)
{
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("BoundedSimplex::set_bounds: invalid bounds");
    lo_[j] = lo;
    hi_[j] = hi;
    if (pos_[static_cast<std::size_t>(j)] >= 0)
        return;
    const bool upper = at_upper_[static_cast<std::size_t>(j)] != 0;
    const double target = upper ? hi : lo;
    const double delta = target - x_[j];
    if (delta != 0.0)
    {
        xB_.noalias() -= delta * T_.col(j);
        x_[j] = target;
    }
}

Vector BoundedSimplex::solution() const
{
    Vector x = x_;
    for (Index i = 0; i < m_; ++i)
    {
        const Index k = basis_[static_cast<std::size_t>(i)];
        if (k < n_)
            x[k] = xB_[i];
    }
    return x;
}

double BoundedSimplex::residual() const
{
    if (m_ == 0)
        return 0.0;
    const Vector x = solution();
    Vector r = (*A_) * x - *b_;
    // artificials still in the basis absorb part of the residual
    for (Index i = 0; i < m_; ++i)
    {
        const Index k = basis_[static_cast<std::size_t>(i)];
        if (k >= n_)
            r[k - n_] += xB_[i];
    }
    return r.cwiseAbs().maxCoeff();
}

void BoundedSimplex::refactor()
{
    since_refactor_ = 0;
    if (m_ == 0)
        return;
    Matrix B(m_, m_);
    for (Index i = 0; i < m_; ++i)
    {
        const Index k = basis_[static_cast<std::size_t>(i)];
        if (k < n_)
            B.col(i) = A_->col(k);
        else
            B.col(i) = Vector::Unit(m_, k - n_);
    }
    Eigen::PartialPivLU<Matrix> lu(B);
    Vector xn = x_;
    for (Index i = 0; i < m_; ++i)
    {
        const Index k = basis_[static_cast<std::size_t>(i)];
        if (k < n_)
            xn[k] = 0.0;
    }
    T_ = lu.solve(*A_);
    xB_ = lu.solve(*b_ - (*A_) * xn);
    for (Index i = 0; i < m_; ++i)
    {
        const Index k = basis_[static_cast<std::size_t>(i)];
        if (k < n_)
        {
            T_.col(k).setZero();
            T_(i, k) = 1.0;
        }
    }
}

BoundedSimplex::Entering BoundedSimplex::choose_entering(const Vector& reduced, bool bland) const
{
    Entering best;
    double best_score = 0.0;
    for (Index j = 0; j < n_; ++j)
    {
        if (pos_[static_cast<std::size_t>(j)] >= 0 || hi_[j] - lo_[j] <= 0.0)
            continue;
        const double d = reduced[j];
        int dir = 0;
        if (!at_upper_[static_cast<std::size_t>(j)] && d > tol::optimality)
            dir = 1;
        else if (at_upper_[static_cast<std::size_t>(j)] && d < -tol::optimality)
            dir = -1;
        if (dir == 0)
            continue;
        if (bland)
            return {j, dir};
        // largest reduced gradient per unit column length
        const double score = std::abs(d) / std::sqrt(1.0 + T_.col(j).squaredNorm());
        if (score > best_score)
        {
            best_score = score;
            best = {j, dir};
        }
    }
    return best;
}

void BoundedSimplex::pivot(Index r, Index j)
{
    const double p = T_(r, j);
    T_.row(r) /= p;
    Vector col = T_.col(j);
    col[r] = 0.0;
    T_.noalias() -= col * T_.row(r);
    T_.col(j).setZero();
    T_(r, j) = 1.0;
    ++pivots_;
    ++since_refactor_;
}

// One simplex iteration along entering column e. Returns false when the ratio
// test finds no limit (cannot happen with finite bounds, reported as failure).
bool BoundedSimplex::step(const Entering& e, bool phase1, bool bland)
{
    const Index j = e.column;
    const double sigma = e.direction;
    double t_best = hi_[j] - lo_[j];
    Index leave = -1;
    bool leave_upper = false;
    double leave_abs = 0.0;

    for (Index i = 0; i < m_; ++i)
    {
        const double a = -sigma * T_(i, j);
        if (std::abs(a) <= tol::pivot)
            continue;
        const double lb = basic_lower(i);
        const double ub = basic_upper(i);
        const double x = xB_[i];
        double t = kInf;
        bool hits_upper = false;
        if (phase1 && x < lb - tol::primal)
        {
            if (a > 0.0)
                t = (lb - x) / a;
        }
        else if (phase1 && x > ub + tol::primal)
        {
            if (a < 0.0)
            {
                t = (ub - x) / a;
                hits_upper = true;
            }
        }
        else if (a > 0.0)
        {
            t = std::max(0.0, (ub - x) / a);
            hits_upper = true;
        }
        else
        {
            t = std::max(0.0, (lb - x) / a);
        }
        if (t == kInf)
            continue;

        bool better = false;
        if (leave < 0 || t < t_best - 1e-12)
            better = t <= t_best;
        else if (std::abs(t - t_best) <= 1e-12)
        {
            if (bland)
                better = basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)];
            else
                better = std::abs(a) > leave_abs;
        }
        if (better)
        {
            t_best = t;
            leave = i;
            leave_upper = hits_upper;
            leave_abs = std::abs(a);
        }
    }

    if (!std::isfinite(t_best))
        return false;
    last_step_ = t_best;

    if (t_best != 0.0)
        xB_.noalias() -= (sigma * t_best) * T_.col(j);
    const double entering_value = x_[j] + sigma * t_best;

    if (leave < 0)
    {
        // bound flip of the entering variable
        at_upper_[static_cast<std::size_t>(j)] = !at_upper_[static_cast<std::size_t>(j)];
        x_[j] = at_upper_[static_cast<std::size_t>(j)] ? hi_[j] : lo_[j];
        return true;
    }

    const Index k = basis_[static_cast<std::size_t>(leave)];
    if (k < n_)
    {
        pos_[static_cast<std::size_t>(k)] = -1;
        at_upper_[static_cast<std::size_t>(k)] = leave_upper;
        x_[k] = leave_upper ? hi_[k] : lo_[k];
    }
    pivot(leave, j);
    basis_[static_cast<std::size_t>(leave)] = j;
    pos_[static_cast<std::size_t>(j)] = leave;
    xB_[leave] = entering_value;
    return true;
}

SimplexStatus BoundedSimplex::run(const Vector* objective)
{
    const bool phase1 = objective == nullptr;
    const std::size_t limit = 50 * static_cast<std::size_t>(m_ + n_) + 1000;
    const std::size_t refactor_every = std::max<std::size_t>(200, 3 * static_cast<std::size_t>(m_));
    std::size_t degenerate = 0;
    bool refactored_at_end = false;

    for (std::size_t iter = 0; iter < limit; ++iter)
    {
        if (since_refactor_ >= refactor_every)
            refactor();

        Vector weights = Vector::Zero(m_);
        bool infeasible = false;
        if (phase1)
        {
            for (Index i = 0; i < m_; ++i)
            {
                if (xB_[i] < basic_lower(i) - tol::primal)
                    weights[i] = 1.0;
                else if (xB_[i] > basic_upper(i) + tol::primal)
                    weights[i] = -1.0;
                else
                    continue;
                infeasible = true;
            }
        }
        else
        {
            for (Index i = 0; i < m_; ++i)
            {
                const Index k = basis_[static_cast<std::size_t>(i)];
                weights[i] = k < n_ ? (*objective)[k] : 0.0;
            }
        }

        Entering e;
        if (!phase1 || infeasible)
        {
            Vector reduced = -(T_.transpose() * weights);
            if (!phase1)
                reduced += *objective;
            e = choose_entering(reduced, degenerate >= kDegenerateBeforeBland);
        }

        if (e.column < 0)
        {
            if (phase1 && infeasible)
                return SimplexStatus::Infeasible;
            // converged: confirm against the original data before reporting
            if (m_ > 0 && residual() > 1e-9 * (1.0 + b_->cwiseAbs().maxCoeff()))
            {
                if (refactored_at_end)
                    return SimplexStatus::Numerical;
                refactor();
                refactored_at_end = true;
                continue;
            }
            return phase1 ? SimplexStatus::Feasible : SimplexStatus::Optimal;
        }

        if (!step(e, phase1, degenerate >= kDegenerateBeforeBland))
            return SimplexStatus::Numerical;
        degenerate = last_step_ <= 1e-12 ? degenerate + 1 : 0;
    }
    return SimplexStatus::IterationLimit;
}

SimplexStatus BoundedSimplex::find_feasible()
{
    return run(nullptr);
}

SimplexStatus BoundedSimplex::maximize(const Vector& objective)
{
    if (objective.size() != n_)
        throw std::invalid_argument("BoundedSimplex::maximize: objective length mismatch");
    const SimplexStatus feasible = find_feasible();
    if (feasible != SimplexStatus::Feasible)
        return feasible;
    // phase 2 may drift slightly outside bounds; a final phase 1 pass cleans up
    const SimplexStatus status = run(&objective);
    if (status != SimplexStatus::Optimal)
        return status;
    const SimplexStatus clean = find_feasible();
    return clean == SimplexStatus::Feasible ? SimplexStatus::Optimal : clean;
}

} // namespace hybzono::detail
