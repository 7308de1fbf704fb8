#include "hybzono/reach.hpp"

#include "hybzono/queries.hpp"
#include "hybzono/setops.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace hybzono
{

HybridZonotope reach_step(const HybridZonotope& Rk, const MldSystem& m, const HybridZonotope& U,
                          const HybridZonotope& W)
{
    const MldDims& d = m.dims;
    const Index n = d.n();
    const Index ne = d.n_e;
    if (Rk.n() != n)
        throw std::invalid_argument("reach_step: set dimension differs from state dimension");
    if (U.n() != d.nu() || W.n() != d.nr())
        throw std::invalid_argument("reach_step: input or auxiliary set dimension differs from the model");

    const Matrix Gamma = vcat(m.A, m.Ex);
    const Matrix Mu = vcat(m.Bu, m.Eu);
    const Matrix Mw = vcat(m.Bw, m.Ew);
    const Vector shift = vcat(m.Baff, Vector(Vector::Zero(ne)));

    // binary factors stay chronological: R_k, then U, then W
    HybridZonotope L = minkowski_sum(linear_map(Gamma, Rk), linear_map(Mu, U));
    L = minkowski_sum(L, linear_map(Mw, W));
    L = minkowski_sum(L, singleton(shift));

    Matrix R = Matrix::Zero(ne, n + ne);
    R.rightCols(ne) = Matrix::Identity(ne, ne);
    for (Index i = 0; i < ne; ++i)
    {
        Vector l = Vector::Zero(ne);
        l[i] = 1.0;
        L = halfspace_intersection(L, Halfspace(l, m.Eaff[i]), R);
    }

    Matrix P = Matrix::Zero(n, n + ne);
    P.leftCols(n) = Matrix::Identity(n, n);
    return linear_map(P, L);
}

SetDims predicted_dims(int k, const MldDims& dims, const SetDims& U_dims, const SetDims& R0_dims)
{
    return {(U_dims.ng + dims.n_rc + dims.n_e) * k + R0_dims.ng, (U_dims.nb + dims.n_rl) * k + R0_dims.nb,
            (U_dims.nc + dims.n_e) * k + R0_dims.nc};
}

namespace
{
    std::vector<Vector> random_directions(Index n, int count, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        std::vector<Vector> dirs;
        for (int i = 0; i < count; ++i)
        {
            Vector l(n);
            for (Index j = 0; j < n; ++j)
                l[j] = normal(rng);
            dirs.push_back(l / l.norm());
        }
        return dirs;
    }

    double support_gap(const HybridZonotope& before, const HybridZonotope& after, const std::vector<Vector>& dirs,
                       const QueryOptions& qo, unsigned threads)
    {
        std::vector<double> gaps(dirs.size(), 0.0);
        detail::parallel_for(dirs.size(), threads, [&](std::size_t i) {
            const double a = support_value(before, dirs[i], qo);
            const double b = support_value(after, dirs[i], qo);
            gaps[i] = std::abs(a - b) / std::max(1.0, std::abs(a));
        });
        return gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
    }
} // namespace

bool domain_check(const HybridZonotope& Rk, const Vector& lo, const Vector& hi, std::size_t node_budget)
{
    if (lo.size() != Rk.n() || hi.size() != Rk.n())
        throw std::invalid_argument("domain_check: box dimension differs from set dimension");
    QueryOptions qo;
    qo.node_budget = node_budget;
    for (Index i = 0; i < Rk.n(); ++i)
    {
        Vector e = Vector::Zero(Rk.n());
        e[i] = 1.0;
        if (support_value(Rk, e, qo) > hi[i] + tol::feasibility)
            return false;
        if (-support_value(Rk, Vector(-e), qo) < lo[i] - tol::feasibility)
            return false;
    }
    return true;
}

ReachResult reach(const HybridZonotope& R0, const MldModel& model, const ReachOptions& opts)
{
    if (opts.steps < 0)
        throw std::invalid_argument("reach: steps must be nonnegative");
    require_valid(model.sys);
    using clock = std::chrono::steady_clock;

    const bool track = opts.track_tree || opts.reduce_binaries;
    ReduceOptions ro;
    ro.node_budget = opts.node_budget;
    ro.threads = opts.threads;
    QueryOptions qo;
    qo.node_budget = opts.node_budget;

    ReachResult res;
    const auto t0 = clock::now();
    res.sets.push_back(R0);
    StepRecord rec0;
    rec0.dims = rec0.raw_dims = R0.dims();
    if (track)
    {
        res.trees.push_back(enumerate_integer_feasible(R0, qo));
        rec0.tree_size = res.trees.back().size();
    }
    if (opts.domain_check)
    {
        rec0.inside_domain = domain_check(R0, model.x_lo, model.x_hi, opts.node_budget);
        res.possibly_inner = !*rec0.inside_domain;
    }
    rec0.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    res.records.push_back(rec0);

    for (int k = 1; k <= opts.steps; ++k)
    {
        const auto ts = clock::now();
        const HybridZonotope& prev = res.sets.back();
        HybridZonotope next = reach_step(prev, model.sys, model.domains.U, model.domains.W);
        StepRecord rec;
        rec.k = k;
        rec.raw_dims = next.dims();
        const bool verify = opts.verify_directions > 0 && (opts.reduce_inequalities || opts.reduce_binaries);
        const HybridZonotope raw = verify ? next : HybridZonotope();

        if (track)
        {
            IntegerFeasibleSet tree = grow_tree(next, res.trees.back(), ro);
            if (opts.reduce_binaries)
            {
                BinaryReduction br = reduce_binary_factors(next, tree);
                rec.removed_binaries = static_cast<std::size_t>(next.nb() - br.set.nb());
                next = std::move(br.set);
                tree = std::move(br.tree);
                res.binary_reports.push_back(std::move(br.report));
            }
            rec.tree_size = tree.size();
            res.trees.push_back(std::move(tree));
        }
        // after binary reduction, rows that only pinned now-constant binaries become removable
        if (opts.reduce_inequalities)
        {
            ro.first_column = prev.ng();
            auto [reduced, report] = remove_redundant_inequalities(next, ro);
            rec.removed_rows = report.removed_constraint_rows.size();
            next = std::move(reduced);
            res.inequality_reports.push_back(std::move(report));
        }
        if (verify)
        {
            const auto dirs = random_directions(next.n(), opts.verify_directions, opts.seed + static_cast<std::uint64_t>(k));
            rec.support_gap = support_gap(raw, next, dirs, qo, opts.threads);
            if (track)
                rec.verified_leaves = enumerate_integer_feasible(next, qo).size();
        }
        if (opts.domain_check)
        {
            rec.inside_domain = domain_check(next, model.x_lo, model.x_hi, opts.node_budget);
            if (!*rec.inside_domain)
                res.possibly_inner = true;
        }
        rec.dims = next.dims();
        rec.seconds = std::chrono::duration<double>(clock::now() - ts).count();
        res.sets.push_back(std::move(next));
        res.records.push_back(rec);
    }
    return res;
}

} // namespace hybzono
