#include "hybzono/reduce.hpp"

#include "hybzono/queries.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>

namespace hybzono
{

namespace
{
    Matrix drop_col(const Matrix& M, Index j)
    {
        Matrix out(M.rows(), M.cols() - 1);
        out.leftCols(j) = M.leftCols(j);
        out.rightCols(M.cols() - j - 1) = M.rightCols(M.cols() - j - 1);
        return out;
    }

    Matrix drop_row(const Matrix& M, Index i)
    {
        Matrix out(M.rows() - 1, M.cols());
        out.topRows(i) = M.topRows(i);
        out.bottomRows(M.rows() - i - 1) = M.bottomRows(M.rows() - i - 1);
        return out;
    }

    Vector drop_entry(const Vector& v, Index i)
    {
        Vector out(v.size() - 1);
        out.head(i) = v.head(i);
        out.tail(v.size() - i - 1) = v.tail(v.size() - i - 1);
        return out;
    }

    // Rank decisions closer than this factor to the threshold are reported as ambiguous.
    constexpr double kRankThreshold = 1e-9;
    constexpr double kRankBand = 10.0;
    // Row violation that counts as crossing a halfspace once its row is removed.
    constexpr double kCrossing = 1e-7;
} // namespace

HybridZonotope drop_slack(const HybridZonotope& z, const SlackTag& tag)
{
    std::vector<SlackTag> tags;
    tags.reserve(z.slack_tags().size());
    for (const SlackTag& t : z.slack_tags())
    {
        if (t == tag)
            continue;
        if (t.column == tag.column || t.row == tag.row)
            throw std::logic_error("drop_slack: slack column or row shared with another tag");
        tags.push_back({t.column - (t.column > tag.column ? 1 : 0), t.row - (t.row > tag.row ? 1 : 0)});
    }
    return HybridZonotope(drop_col(z.Gc(), tag.column), z.Gb(), z.c(), drop_row(drop_col(z.Ac(), tag.column), tag.row),
                          drop_row(z.Ab(), tag.row), drop_entry(z.b(), tag.row), std::move(tags));
}

bool slack_is_redundant(const HybridZonotope& z, const SlackTag& tag, std::size_t node_budget)
{
    const Index j = tag.column;
    const Index r = tag.row;
    const double a = z.Ac()(r, j);
    if (!(a > 0.0))
        return false;
    // Range of the slack implied by the row with every other factor in its box.
    const double others = z.Ac().row(r).cwiseAbs().sum() - std::abs(a) + z.Ab().row(r).cwiseAbs().sum();
    const double slack_min = (z.b()[r] - others) / a;

    QueryOptions qo;
    qo.node_budget = node_budget;
    MilpQuery q = factor_query(z, qo);
    // slack < -1 means the halfspace is crossed; a row that is only ever tight is implied by the others
    q.base.lower[j] = std::min(-1.0, slack_min) - 1.0;
    q.base.upper[j] = -1.0 - kCrossing / a;
    const SolveOutcome out = milp_solve(q);
    if (out.status == SolveStatus::BudgetExhausted)
        throw SolverError(SolverError::Kind::BudgetExhausted, "remove_redundant_inequalities: node budget exhausted");
    if (out.status == SolveStatus::NumericalError)
        throw SolverError(SolverError::Kind::Numerical, "remove_redundant_inequalities: solver failure");
    return !out.has_solution();
}

std::pair<HybridZonotope, ReductionReport> remove_redundant_inequalities(const HybridZonotope& z,
                                                                         const ReduceOptions& opts)
{
    ReductionReport report;
    report.before = z.dims();

    std::vector<SlackTag> candidates;
    for (const SlackTag& t : z.slack_tags())
        if (t.column >= opts.first_column)
            candidates.push_back(t);
    std::sort(candidates.begin(), candidates.end());

    // Removing rows only enlarges the feasible factor set, so a slack that is needed now
    // stays needed. Screen everything against the input, then confirm sequentially.
    std::vector<char> screened(candidates.size(), 0);
    detail::parallel_for(candidates.size(), opts.threads, [&](std::size_t i) {
        screened[i] = slack_is_redundant(z, candidates[i], opts.node_budget) ? 1 : 0;
    });

    HybridZonotope current = z;
    // original indices of the current columns and rows
    std::vector<Index> col_id(static_cast<std::size_t>(z.ng()));
    std::vector<Index> row_id(static_cast<std::size_t>(z.nc()));
    for (std::size_t i = 0; i < col_id.size(); ++i)
        col_id[i] = static_cast<Index>(i);
    for (std::size_t i = 0; i < row_id.size(); ++i)
        row_id[i] = static_cast<Index>(i);

    bool removed_any = false;
    for (std::size_t i = 0; i < candidates.size(); ++i)
    {
        if (!screened[i])
            continue;
        const auto col_it = std::find(col_id.begin(), col_id.end(), candidates[i].column);
        const auto row_it = std::find(row_id.begin(), row_id.end(), candidates[i].row);
        const SlackTag tag{static_cast<Index>(col_it - col_id.begin()), static_cast<Index>(row_it - row_id.begin())};
        if (removed_any && !slack_is_redundant(current, tag, opts.node_budget))
            continue;
        current = drop_slack(current, tag);
        report.removed_generator_columns.push_back(candidates[i].column);
        report.removed_constraint_rows.push_back(candidates[i].row);
        col_id.erase(col_it);
        row_id.erase(row_it);
        removed_any = true;
    }
    report.after = current.dims();
    return {current, report};
}

IntegerFeasibleSet grow_tree(const HybridZonotope& z2, const IntegerFeasibleSet& t1, const ReduceOptions& opts)
{
    const std::size_t nb1 = t1.nb();
    if (nb1 > static_cast<std::size_t>(z2.nb()))
        throw std::invalid_argument("grow_tree: the earlier tree has more binary factors than the new set");

    QueryOptions qo;
    qo.node_budget = opts.node_budget;
    const auto& parents = t1.entries();
    std::vector<std::vector<BinaryAssignment>> found(parents.size());
    detail::parallel_for(parents.size(), opts.threads, [&](std::size_t i) {
        const HybridZonotope node = branch_node(z2, parents[i]);
        const IntegerFeasibleSet sub = enumerate_integer_feasible(node, qo);
        found[i].reserve(sub.size());
        for (const BinaryAssignment& tail : sub)
            found[i].push_back(parents[i].concat(tail));
    });

    std::vector<BinaryAssignment> all;
    for (auto& f : found)
        for (auto& e : f)
            all.push_back(std::move(e));
    return IntegerFeasibleSet(static_cast<std::size_t>(z2.nb()), std::move(all));
}

namespace
{
    struct RowBasis
    {
        std::vector<Index> rows; // independent rows, constant row first when present
        bool leading_constant = false;
    };

    bool is_constant_row(const Matrix& T, Index i)
    {
        return T.cols() > 0 && (T.row(i).array() == T(i, 0)).all();
    }

    RowBasis independent_rows(const Matrix& T)
    {
        const Index nb = T.rows();
        std::vector<Index> order;
        order.reserve(static_cast<std::size_t>(nb));
        Index first_constant = -1;
        for (Index i = 0; i < nb; ++i)
        {
            if (first_constant < 0 && is_constant_row(T, i))
                first_constant = i;
        }
        if (first_constant >= 0)
            order.push_back(first_constant);
        for (Index i = 0; i < nb; ++i)
            if (i != first_constant)
                order.push_back(i);

        Matrix Tt(T.cols(), nb);
        for (Index k = 0; k < nb; ++k)
            Tt.col(k) = T.row(order[static_cast<std::size_t>(k)]).transpose();

        Eigen::ColPivHouseholderQR<Matrix> qr(Tt);
        const Matrix R = qr.matrixR().template triangularView<Eigen::Upper>();
        const Index diag = std::min(R.rows(), R.cols());
        const double top = diag > 0 ? std::abs(R(0, 0)) : 0.0;
        Index rank = 0;
        for (Index k = 0; k < diag; ++k)
        {
            const double ratio = top > 0.0 ? std::abs(R(k, k)) / top : 0.0;
            if (ratio > kRankThreshold / kRankBand && ratio < kRankThreshold * kRankBand)
                throw SolverError(SolverError::Kind::Numerical,
                                  "reduce_binary_factors: rank decision within tolerance band");
            if (ratio > kRankThreshold)
                ++rank;
        }

        RowBasis basis;
        const auto& perm = qr.colsPermutation().indices();
        std::vector<Index> picked;
        for (Index k = 0; k < rank; ++k)
            picked.push_back(order[static_cast<std::size_t>(perm[k])]);
        std::sort(picked.begin(), picked.end());
        if (first_constant >= 0 && std::find(picked.begin(), picked.end(), first_constant) != picked.end())
        {
            basis.leading_constant = true;
            basis.rows.push_back(first_constant);
        }
        for (Index i : picked)
            if (!(basis.leading_constant && i == first_constant))
                basis.rows.push_back(i);
        return basis;
    }

    IntegerFeasibleSet tree_from_columns(const Matrix& T)
    {
        std::vector<BinaryAssignment> entries;
        entries.reserve(static_cast<std::size_t>(T.cols()));
        for (Index j = 0; j < T.cols(); ++j)
            entries.push_back(BinaryAssignment::from_vector(T.col(j)));
        return IntegerFeasibleSet(static_cast<std::size_t>(T.rows()), std::move(entries));
    }
} // namespace

BinaryReduction reduce_binary_factors(const HybridZonotope& z, const IntegerFeasibleSet& tree)
{
    if (tree.nb() != static_cast<std::size_t>(z.nb()))
        throw std::invalid_argument("reduce_binary_factors: tree length differs from binary factor count");

    BinaryReduction out{z, tree, {}};
    out.report.before = z.dims();
    out.report.after = z.dims();
    if (z.nb() == 0 || tree.empty())
        return out;

    Matrix total_map = Matrix::Identity(z.nb(), z.nb());
    Vector total_shift = Vector::Zero(z.nb());
    bool changed = false;

    // iterate to a fixpoint; each pass removes dependent rows and at most one constant row
    for (;;)
    {
        const HybridZonotope& cur = out.set;
        if (cur.nb() == 0)
            break;
        const Matrix T = out.tree.as_matrix();
        const RowBasis basis = independent_rows(T);
        const Index rank = static_cast<Index>(basis.rows.size());
        if (rank == cur.nb() && !basis.leading_constant)
            break;

        Matrix Tphi(rank, T.cols());
        for (Index k = 0; k < rank; ++k)
            Tphi.row(k) = T.row(basis.rows[static_cast<std::size_t>(k)]);

        // M1 Tphi = T, solved through the pseudo-inverse of Tphi
        const Matrix M1 = Tphi.transpose().completeOrthogonalDecomposition().solve(T.transpose()).transpose();
        const double residual = (M1 * Tphi - T).cwiseAbs().maxCoeff();
        if (residual > 1e-10)
            throw SolverError(SolverError::Kind::Numerical, "reduce_binary_factors: dependent rows not reproduced");

        Matrix M = M1;
        Vector m = Vector::Zero(cur.nb());
        Matrix Tr = Tphi;
        if (basis.leading_constant)
        {
            M = M1.rightCols(rank - 1);
            m = M1.col(0) * Tphi(0, 0);
            Tr = Tphi.bottomRows(rank - 1);
        }

        out.set = HybridZonotope(cur.Gc(), cur.Gb() * M, cur.c() + cur.Gb() * m, cur.Ac(), cur.Ab() * M,
                                 cur.b() - cur.Ab() * m, cur.slack_tags());
        out.tree = tree_from_columns(Tr);
        total_shift = total_shift + total_map * m;
        total_map = total_map * M;
        changed = true;
    }

    if (changed)
    {
        out.report.binary_map = total_map;
        out.report.binary_shift = total_shift;
    }
    out.report.after = out.set.dims();
    return out;
}

} // namespace hybzono
