#include "oracles.hpp"

#include "hybzono/queries.hpp"
#include "hybzono/reduce.hpp"
#include "hybzono/setops.hpp"

#include <doctest.h>

using namespace hybzono;

namespace
{
HybridZonotope unit_box(Index n)
{
    return lift(make_box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0)));
}

void check_same_supports(const HybridZonotope& a, const HybridZonotope& b, std::mt19937_64& rng, int count)
{
    for (int i = 0; i < count; ++i)
    {
        const Vector l = oracle::random_unit(rng, a.n());
        const double x = support_value(a, l);
        CHECK(support_value(b, l) == doctest::Approx(x).epsilon(1e-8));
    }
}
} // namespace

TEST_CASE("a halfspace that cuts nothing is redundant")
{
    Vector l(2);
    l << 1.0, 0.0;
    const HybridZonotope loose = halfspace_intersection(unit_box(2), Halfspace(l, 5.0));
    const HybridZonotope tight = halfspace_intersection(unit_box(2), Halfspace(l, 0.5));
    CHECK(slack_is_redundant(loose, loose.slack_tags().front()));
    CHECK_FALSE(slack_is_redundant(tight, tight.slack_tags().front()));

    const HybridZonotope dropped = drop_slack(loose, loose.slack_tags().front());
    CHECK(dropped.dims() == unit_box(2).dims());
    CHECK(dropped.slack_tags().empty());
}

TEST_CASE("a halfspace touching only a face is redundant")
{
    Vector l(2);
    l << 1.0, 1.0;
    const HybridZonotope z = halfspace_intersection(unit_box(2), Halfspace(l, 2.0));
    CHECK(slack_is_redundant(z, z.slack_tags().front()));
}

TEST_CASE("inequality removal keeps the set")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial)
    {
        HybridZonotope z = unit_box(2);
        for (int h = 0; h < 5; ++h)
        {
            const Vector l = oracle::random_unit(rng, 2);
            const double rho = std::uniform_real_distribution<double>(-0.2, 2.5)(rng);
            z = halfspace_intersection(z, Halfspace(l, rho));
        }
        if (is_empty(z))
            continue;
        const auto [r, report] = remove_redundant_inequalities(z);
        CHECK(r.nc() == z.nc() - static_cast<Index>(report.removed_constraint_rows.size()));
        CHECK(r.ng() == z.ng() - static_cast<Index>(report.removed_generator_columns.size()));
        check_same_supports(z, r, rng, 12);
    }
}

TEST_CASE("first_column limits the candidates")
{
    Vector l(2);
    l << 1.0, 0.0;
    HybridZonotope z = halfspace_intersection(unit_box(2), Halfspace(l, 5.0));
    const Index first = z.ng();
    z = halfspace_intersection(z, Halfspace(l, 6.0));
    ReduceOptions o;
    o.first_column = first;
    const auto [r, report] = remove_redundant_inequalities(z, o);
    CHECK(report.removed_constraint_rows.size() == 1);
    CHECK(r.nc() == 1);
}

TEST_CASE("grow tree matches full enumeration")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial)
    {
        const HybridZonotope a = oracle::random_set(rng, {2, 3, 2, 1});
        const IntegerFeasibleSet ta = enumerate_integer_feasible(a);
        // appending binaries that carry constraints of their own
        const HybridZonotope b = oracle::random_set(rng, {2, 2, 2, 1});
        HybridZonotope z2 = minkowski_sum(a, linear_map(Matrix::Identity(a.n(), b.n()), b));
        CHECK(grow_tree(z2, ta) == enumerate_integer_feasible(z2));
    }
}

TEST_CASE("dependent binaries collapse to one")
{
    // xi_b1 = xi_b2 through an equality; the second copy adds a shift in y
    Matrix Gc = Matrix::Identity(2, 2);
    Matrix Gb(2, 2);
    Gb << 3.0, 0.0, 0.0, 1.0;
    Matrix Ac = Matrix::Zero(1, 2);
    Matrix Ab(1, 2);
    Ab << 1.0, -1.0;
    const HybridZonotope z(Gc, Gb, Vector::Zero(2), Ac, Ab, Vector::Zero(1));
    const IntegerFeasibleSet t = enumerate_integer_feasible(z);
    REQUIRE(t.size() == 2);

    const BinaryReduction r = reduce_binary_factors(z, t);
    CHECK(r.set.nb() == 1);
    CHECK(r.tree.size() == t.size());
    CHECK(r.tree == enumerate_integer_feasible(r.set));
    std::mt19937_64 rng(2);
    check_same_supports(z, r.set, rng, 20);
}

TEST_CASE("a constant binary disappears")
{
    Matrix Gb(2, 2);
    Gb << 1.0, 0.0, 0.0, 1.0;
    Matrix Ab(1, 2);
    Ab << 1.0, 0.0;
    const HybridZonotope z(Matrix::Identity(2, 2), Gb, Vector::Zero(2), Matrix::Zero(1, 2), Ab, Vector::Ones(1));
    const IntegerFeasibleSet t = enumerate_integer_feasible(z);
    REQUIRE(t.size() == 2);
    const BinaryReduction r = reduce_binary_factors(z, t);
    CHECK(r.set.nb() == 1);
    CHECK(r.tree.size() == 2);
    std::mt19937_64 rng(6);
    check_same_supports(z, r.set, rng, 20);
}
