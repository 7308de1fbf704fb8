#include "oracles.hpp"

#include "hybzono/geomio.hpp"
#include "hybzono/queries.hpp"
#include "hybzono/reach.hpp"
#include "hybzono/setops.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

using namespace hybzono;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string dims_str(const SetDims& d)
{
    std::ostringstream os;
    os << '(' << d.ng << ", " << d.nb << ", " << d.nc << ')';
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs shared by several criteria; computed lazily and kept.
class Runs
{
public:
    explicit Runs(unsigned threads) : threads_(threads) {}

    const MldModel& pwa()
    {
        if (!pwa_)
            pwa_ = build_pwa_two_mode();
        return *pwa_;
    }

    const MldModel& rooms()
    {
        if (!rooms_)
            rooms_ = build_heated_rooms(1);
        return *rooms_;
    }

    const ReachResult& pwa_plain()
    {
        if (!pwa_plain_)
        {
            ReachOptions o;
            o.steps = 15;
            o.track_tree = true;
            o.threads = threads_;
            const auto t0 = std::chrono::steady_clock::now();
            pwa_plain_ = reach(pwa().R0, pwa(), o);
            pwa_plain_s_ = seconds_since(t0);
        }
        return *pwa_plain_;
    }
    double pwa_plain_seconds()
    {
        pwa_plain();
        return pwa_plain_s_;
    }

    const ReachResult& pwa_reduced()
    {
        if (!pwa_reduced_)
        {
            ReachOptions o;
            o.steps = 15;
            o.reduce_inequalities = true;
            o.reduce_binaries = true;
            o.verify_directions = 50;
            o.seed = 2024;
            o.threads = threads_;
            const auto t0 = std::chrono::steady_clock::now();
            pwa_reduced_ = reach(pwa().R0, pwa(), o);
            pwa_reduced_s_ = seconds_since(t0);
        }
        return *pwa_reduced_;
    }
    double pwa_reduced_seconds()
    {
        pwa_reduced();
        return pwa_reduced_s_;
    }

    const ReachResult& rooms_plain()
    {
        if (!rooms_plain_)
        {
            ReachOptions o;
            o.steps = 100;
            o.threads = threads_;
            rooms_plain_ = reach(rooms().R0, rooms(), o);
        }
        return *rooms_plain_;
    }

    const ReachResult& rooms_reduced()
    {
        if (!rooms_reduced_)
        {
            ReachOptions o;
            o.steps = 100;
            o.reduce_inequalities = true;
            o.reduce_binaries = true;
            o.verify_directions = 50;
            o.seed = 2025;
            o.threads = threads_;
            const auto t0 = std::chrono::steady_clock::now();
            rooms_reduced_ = reach(rooms().R0, rooms(), o);
            rooms_reduced_s_ = seconds_since(t0);
        }
        return *rooms_reduced_;
    }
    double rooms_reduced_seconds()
    {
        rooms_reduced();
        return rooms_reduced_s_;
    }

    unsigned threads() const { return threads_; }

private:
    unsigned threads_;
    std::optional<MldModel> pwa_, rooms_;
    std::optional<ReachResult> pwa_plain_, pwa_reduced_, rooms_plain_, rooms_reduced_;
    double pwa_plain_s_ = 0.0, pwa_reduced_s_ = 0.0, rooms_reduced_s_ = 0.0;
};

Outcome pwa_dimensions(Runs& runs)
{
    const ReachResult& r = runs.pwa_plain();
    const SetDims d = r.final_set().dims();
    const std::size_t t = *r.records.back().tree_size;
    const double s = runs.pwa_plain_seconds();
    std::ostringstream os;
    os << "dims " << dims_str(d) << " (want (182, 15, 150)), |T| = " << t << " (want 2), " << s << " s (limit 60)";
    return {d == SetDims{182, 15, 150} && t == 2 && s < 60.0, os.str()};
}

Outcome pwa_reduction(Runs& runs)
{
    const ReachResult& r = runs.pwa_reduced();
    std::size_t rows = 0;
    for (const StepRecord& rec : r.records)
        rows += rec.removed_rows;
    const SetDims d = r.final_set().dims();
    const double s = runs.pwa_reduced_seconds();
    std::ostringstream os;
    os << "dims " << dims_str(d) << " (want (142, 1, 110)), rows removed " << rows << " (want 40), |T| = "
       << *r.records.back().tree_size << ", " << s << " s (limit 300)";
    return {d == SetDims{142, 1, 110} && rows == 40 && d.nb == 1 && s < 300.0, os.str()};
}

Outcome pwa_branching(Runs& runs)
{
    const ReachResult& r = runs.pwa_plain();
    std::optional<int> first;
    bool monotone = true;
    std::ostringstream sizes;
    for (const StepRecord& rec : r.records)
    {
        sizes << (rec.k ? "," : "") << *rec.tree_size;
        if (!first && *rec.tree_size == 2)
            first = rec.k;
        if (first && *rec.tree_size != 2)
            monotone = false;
        if (!first && *rec.tree_size != 1)
            monotone = false;
    }
    std::ostringstream os;
    os << "|T| per k = [" << sizes.str() << "], first k with |T| = 2 is " << (first ? std::to_string(*first) : "none")
       << " (want 3)";
    return {first == 3 && monotone, os.str()};
}

Outcome rooms_case(Runs& runs, bool stretch)
{
    const SetDims d = runs.rooms_plain().final_set().dims();
    const std::size_t t = *runs.rooms_reduced().records.back().tree_size;
    std::ostringstream os;
    os << "Case(3,1) dims " << dims_str(d) << " (want (1003, 300, 900)), |T| = " << t << " (want 39), reduced run "
       << runs.rooms_reduced_seconds() << " s";
    if (stretch)
    {
        ReachOptions o;
        o.steps = 100;
        o.reduce_inequalities = true;
        o.reduce_binaries = true;
        o.threads = runs.threads();
        const MldModel m = build_heated_rooms(2);
        const auto t0 = std::chrono::steady_clock::now();
        const ReachResult r = reach(m.R0, m, o);
        os << "; info Case(6,2) |T| = " << *r.records.back().tree_size << " (reference 657), " << seconds_since(t0) << " s";
    }
    return {d == SetDims{1003, 300, 900} && t == 39, os.str()};
}

Outcome growth_formula(Runs& runs)
{
    int checked = 0, bad = 0;
    std::string first_bad;
    auto scan = [&](const char* name, const MldModel& m, const ReachResult& r) {
        for (const StepRecord& rec : r.records)
        {
            ++checked;
            const SetDims want = predicted_dims(rec.k, m.sys.dims, m.domains.U.dims(), m.R0.dims());
            if (rec.dims != want)
            {
                if (bad++ == 0)
                    first_bad = std::string(name) + " k=" + std::to_string(rec.k) + " " + dims_str(rec.dims) + " vs " +
                                dims_str(want);
            }
        }
    };
    scan("pwa2eq", runs.pwa(), runs.pwa_plain());
    scan("rooms:1", runs.rooms(), runs.rooms_plain());
    std::ostringstream os;
    os << checked << " steps checked, " << bad << " mismatches";
    if (bad)
        os << " (first: " << first_bad << ")";
    return {bad == 0, os.str()};
}

Vector random_probe(std::mt19937_64& rng, const HybridZonotope& z)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Vector r = z.Gc().cwiseAbs().rowwise().sum() + z.Gb().cwiseAbs().rowwise().sum();
    Vector p(z.n());
    for (Index i = 0; i < z.n(); ++i)
        p[i] = z.c()[i] + 1.1 * (r[i] + 0.05) * unit(rng);
    return p;
}

Outcome oracle_equivalence()
{
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    const int n_sets = 200, n_points = 100;
    int tree_bad = 0, member_bad = 0, inside = 0, nonempty = 0;
    for (int s = 0; s < n_sets; ++s)
    {
        const HybridZonotope z = oracle::random_set(rng, {3, 4, 3, 2});
        const IntegerFeasibleSet tree = enumerate_integer_feasible(z);
        if (!(tree == oracle::brute_force_tree(z)))
            ++tree_bad;
        if (!tree.empty())
            ++nonempty;
        for (int p = 0; p < n_points; ++p)
        {
            Vector x = random_probe(rng, z);
            // half the probes are mixtures of points on the set, which often land inside
            if (!tree.empty() && unit01(rng) < 0.5)
            {
                const Vector a = support(z, oracle::random_unit(rng, z.n())).touch_point;
                const Vector b = support(z, oracle::random_unit(rng, z.n())).touch_point;
                const double t = unit01(rng);
                x = t * a + (1.0 - t) * b;
            }
            const bool milp = contains_point(z, x);
            inside += milp;
            if (milp != oracle::brute_force_contains(z, x))
                ++member_bad;
        }
    }
    std::ostringstream os;
    os << n_sets << " sets (" << nonempty << " nonempty): " << tree_bad << " leaf-set disagreements; "
       << n_sets * n_points << " points (" << inside << " inside): " << member_bad << " membership disagreements";
    return {tree_bad == 0 && member_bad == 0, os.str()};
}

HybridZonotope nonempty_random(std::mt19937_64& rng, Index n)
{
    while (true)
    {
        HybridZonotope z = oracle::random_set(rng, {3, 4, 3, 2});
        if (z.n() != n)
            continue;
        if (!is_empty(z))
            return z;
    }
}

Outcome support_identities()
{
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst_map = 0.0, worst_sum = 0.0;
    for (int inst = 0; inst < 50; ++inst)
    {
        const Index n = std::uniform_int_distribution<Index>(1, 3)(rng);
        const Index m = std::uniform_int_distribution<Index>(1, 3)(rng);
        const HybridZonotope z = nonempty_random(rng, n);
        const HybridZonotope w = nonempty_random(rng, n);
        Matrix R(m, n);
        for (Index i = 0; i < R.size(); ++i)
            R.data()[i] = unit(rng);
        const HybridZonotope Rz = linear_map(R, z);
        const HybridZonotope zw = minkowski_sum(z, w);
        for (int d = 0; d < 20; ++d)
        {
            const Vector lm = oracle::random_unit(rng, m);
            const double a = support_value(Rz, lm);
            const double b = support_value(z, Vector(R.transpose() * lm));
            worst_map = std::max(worst_map, std::abs(a - b) / std::max(1.0, std::abs(a)));

            const Vector ln = oracle::random_unit(rng, n);
            const double c = support_value(zw, ln);
            const double e = support_value(z, ln) + support_value(w, ln);
            worst_sum = std::max(worst_sum, std::abs(c - e) / std::max(1.0, std::abs(c)));
        }
    }
    std::ostringstream os;
    os << "1000 direction pairs, worst relative error: linear map " << worst_map << ", Minkowski sum " << worst_sum
       << " (limit 1e-9)";
    return {worst_map <= 1e-9 && worst_sum <= 1e-9, os.str()};
}

/// Point of leaf xi of z: the average of two support points of that leaf.
Vector leaf_sample(std::mt19937_64& rng, const HybridZonotope& z, const BinaryAssignment& xi)
{
    const HybridZonotope leaf_set = lift(leaf(z, xi));
    const Vector a = support(leaf_set, oracle::random_unit(rng, z.n())).touch_point;
    const Vector b = support(leaf_set, oracle::random_unit(rng, z.n())).touch_point;
    return 0.5 * (a + b);
}

Outcome reach_sampling(Runs& runs)
{
    const MldModel& m = runs.pwa();
    const ReachResult& r = runs.pwa_plain();
    const int n_traj = 10000;
    const int steps = 15;

    // trajectories start at uniform factor samples of R0
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<std::vector<Vector>> states(static_cast<std::size_t>(steps + 1));
    for (int t = 0; t < n_traj; ++t)
    {
        Vector xi(m.R0.ng());
        for (Index i = 0; i < xi.size(); ++i)
            xi[i] = unit(rng);
        Vector x = m.R0.c() + m.R0.Gc() * xi;
        for (int k = 0; k <= steps; ++k)
        {
            states[static_cast<std::size_t>(k)].push_back(x);
            x = pwa_step(x);
        }
    }

    // every trajectory against the reduced sets, a prefix also against the unreduced ones
    const ReachResult& reduced = runs.pwa_reduced();
    const int n_direct = 500;
    int miss_reduced = 0, miss_direct = 0;
    for (int k = 0; k <= steps; ++k)
    {
        const auto& pts = states[static_cast<std::size_t>(k)];
        for (std::size_t t = 0; t < pts.size(); ++t)
        {
            miss_reduced += contains_point(reduced.sets[static_cast<std::size_t>(k)], pts[t]) ? 0 : 1;
            if (t < static_cast<std::size_t>(n_direct))
                miss_direct += contains_point(r.sets[static_cast<std::size_t>(k)], pts[t]) ? 0 : 1;
        }
    }

    // preimages of points sampled from the leaves of R_{k+1}
    int pre_fail = 0, pre_count = 0;
    for (int i = 0; i < 200; ++i)
    {
        const int k = i % steps;
        const HybridZonotope& next = r.sets[static_cast<std::size_t>(k + 1)];
        const IntegerFeasibleSet& tree = r.trees[static_cast<std::size_t>(k + 1)];
        const auto& leaves = tree.entries();
        const BinaryAssignment& xi = leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
        const Vector target = leaf_sample(rng, next, xi);
        ++pre_count;
        if (!oracle::preimage_feasible(r.sets[static_cast<std::size_t>(k)], m, target))
            ++pre_fail;
    }

    std::ostringstream os;
    os << n_traj << " trajectories x " << steps + 1 << " sets: " << miss_reduced << " outside reduced R_k, "
       << miss_direct << " of the first " << n_direct << " outside unreduced R_k; " << pre_count
       << " preimage MILPs: " << pre_fail << " infeasible";
    return {miss_reduced == 0 && miss_direct == 0 && pre_fail == 0, os.str()};
}

Outcome reduction_preserves(Runs& runs)
{
    int invocations = 0, gap_bad = 0, leaf_bad = 0;
    double worst = 0.0;
    auto scan = [&](const ReachResult& r, const ReachResult* unreduced) {
        for (const StepRecord& rec : r.records)
        {
            if (!rec.support_gap)
                continue;
            ++invocations;
            worst = std::max(worst, *rec.support_gap);
            if (*rec.support_gap > 1e-8)
                ++gap_bad;
            if (rec.verified_leaves != rec.tree_size)
                ++leaf_bad;
            if (unreduced && unreduced->records[static_cast<std::size_t>(rec.k)].tree_size != rec.tree_size)
                ++leaf_bad;
        }
    };
    scan(runs.pwa_reduced(), &runs.pwa_plain());
    scan(runs.rooms_reduced(), nullptr);
    std::ostringstream os;
    os << invocations << " reduced steps x 50 directions: worst relative support gap " << worst << " (limit 1e-8), "
       << gap_bad << " over limit, " << leaf_bad << " leaf-count changes";
    return {invocations > 0 && gap_bad == 0 && leaf_bad == 0, os.str()};
}

Outcome shifted_copies()
{
    Matrix Gz(2, 3);
    Gz << 1.5, -1.5, 0.5, 1.0, 0.5, -1.0;
    const Matrix Az = Matrix::Ones(1, 3);
    const HybridZonotope h1(Gz, 2.0 * Gz, Vector::Zero(2), Matrix(0, 3), Matrix(0, 3), Vector(0));
    const HybridZonotope h2(Gz, 2.0 * Gz, Vector::Zero(2), Az, Az, Vector::Ones(1));

    const IntegerFeasibleSet t1 = enumerate_integer_feasible(h1);
    const IntegerFeasibleSet t2 = enumerate_integer_feasible(h2);
    const bool oracle_ok = t1 == oracle::brute_force_tree(h1) && t2 == oracle::brute_force_tree(h2);

    ProjectOptions po;
    po.per_leaf = true;
    po.tree = t1;
    const auto polys = project_sample(h1, 0, 1, po);

    auto centered = [](const std::vector<Eigen::Vector2d>& v) {
        Eigen::Vector2d c = Eigen::Vector2d::Zero();
        for (const auto& p : v)
            c += p;
        c /= static_cast<double>(v.size());
        std::vector<Eigen::Vector2d> out;
        for (const auto& p : v)
            out.push_back(p - c);
        return out;
    };
    double worst = 0.0;
    bool counts_match = true;
    const auto ref = centered(polys.front().vertices);
    for (const auto& poly : polys)
    {
        const auto cur = centered(poly.vertices);
        if (cur.size() != ref.size())
        {
            counts_match = false;
            continue;
        }
        for (const auto& p : cur)
        {
            double best = 1e300;
            for (const auto& q : ref)
                best = std::min(best, (p - q).norm());
            worst = std::max(worst, best);
        }
    }
    std::ostringstream os;
    os << "h1 leaves " << t1.size() << " (want 8), h2 leaves " << t2.size() << " (want 7), brute force "
       << (oracle_ok ? "agrees" : "disagrees") << ", " << polys.size() << " h1 leaf polygons of " << ref.size()
       << " vertices, worst aligned vertex distance " << worst << " (limit 1e-9)";
    return {t1.size() == 8 && t2.size() == 7 && oracle_ok && polys.size() == 8 && counts_match && worst <= 1e-9,
            os.str()};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance checks for hybrid zonotope reachability"};
    std::vector<int> only;
    bool stretch = false;
    unsigned threads = 1;
    app.add_option("--only", only, "Run only these criteria");
    app.add_flag("--stretch", stretch, "Also run heated rooms Case(6,2) as information");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
    CLI11_PARSE(app, argc, argv);

    Runs runs(threads);
    const std::map<int, std::function<Outcome()>> criteria = {
        {1, [&] { return pwa_dimensions(runs); }},
        {2, [&] { return pwa_reduction(runs); }},
        {3, [&] { return pwa_branching(runs); }},
        {4, [&] { return rooms_case(runs, stretch); }},
        {5, [&] { return growth_formula(runs); }},
        {6, [] { return oracle_equivalence(); }},
        {7, [] { return support_identities(); }},
        {8, [&] { return reach_sampling(runs); }},
        {9, [&] { return reduction_preserves(runs); }},
        {10, [] { return shifted_copies(); }},
    };

    int failed = 0;
    for (const auto& [id, run] : criteria)
    {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            out = run();
        }
        catch (const std::exception& e)
        {
            out = {false, std::string("exception: ") + e.what()};
        }
        failed += out.pass ? 0 : 1;
        std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << " " << out.detail << " ["
                  << seconds_since(t0) << " s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
