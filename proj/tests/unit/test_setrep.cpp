#include "oracles.hpp"

#include "hybzono/setrep.hpp"

#include <doctest.h>

using namespace hybzono;

namespace
{
HybridZonotope shifted_copies()
{
    Matrix Gz(2, 3);
    Gz << 1.5, -1.5, 0.5, 1.0, 0.5, -1.0;
    return HybridZonotope(Gz, 2.0 * Gz, Vector::Zero(2), Matrix(0, 3), Matrix(0, 3), Vector(0));
}
} // namespace

TEST_CASE("hybrid zonotope rejects inconsistent shapes")
{
    CHECK_THROWS_AS(HybridZonotope(Matrix::Zero(2, 2), Matrix::Zero(3, 1), Vector::Zero(2), Matrix(0, 2), Matrix(0, 1),
                                   Vector(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(HybridZonotope(Matrix::Zero(2, 2), Matrix::Zero(2, 0), Vector::Zero(2), Matrix::Zero(1, 3),
                                   Matrix::Zero(1, 0), Vector::Zero(1)),
                    std::invalid_argument);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(HybridZonotope(bad, Matrix::Zero(2, 0), Vector::Zero(2), Matrix(0, 2), Matrix(0, 0), Vector(0)),
                    std::invalid_argument);
}

TEST_CASE("dims and order")
{
    const HybridZonotope z = shifted_copies();
    CHECK(z.dims() == SetDims{3, 3, 0});
    CHECK(z.order() == doctest::Approx(3.0));
}

TEST_CASE("box helper")
{
    const Zonotope b = make_box(Vector::Constant(2, -1.0), Vector::Constant(2, 3.0));
    CHECK(b.c.isApprox(Vector::Constant(2, 1.0)));
    CHECK(b.G.isApprox(2.0 * Matrix::Identity(2, 2)));
}

TEST_CASE("binary assignment rounding and concat")
{
    Vector v(3);
    v << 1.0 - 1e-8, -1.0, 1.0;
    const BinaryAssignment a = BinaryAssignment::from_vector(v);
    CHECK(a == BinaryAssignment{1, -1, 1});
    CHECK(a.prefix(2) == BinaryAssignment{1, -1});
    CHECK(a.prefix(1).concat(BinaryAssignment{-1, 1}) == a);
    Vector w(1);
    w << 0.3;
    CHECK_THROWS(BinaryAssignment::from_vector(w));
}

TEST_CASE("integer feasible set is sorted and deduplicated")
{
    IntegerFeasibleSet t(2, {BinaryAssignment{1, 1}, BinaryAssignment{-1, 1}, BinaryAssignment{1, 1}});
    REQUIRE(t.size() == 2);
    CHECK(t.entries()[0] == BinaryAssignment{-1, 1});
    CHECK(t.contains(BinaryAssignment{1, 1}));
    CHECK_FALSE(t.contains(BinaryAssignment{-1, -1}));
    CHECK_THROWS(IntegerFeasibleSet(2, {BinaryAssignment{1}}));
}

TEST_CASE("leaf shifts the centre by the binary generators")
{
    const HybridZonotope z = shifted_copies();
    const BinaryAssignment xi{1, -1, 1};
    const ConstrainedZonotope l = leaf(z, xi);
    CHECK(l.c.isApprox(z.Gb() * xi.to_vector()));
    CHECK(l.G.isApprox(z.Gc()));
}

TEST_CASE("branch node fixes a prefix")
{
    const HybridZonotope z = shifted_copies();
    const HybridZonotope node = branch_node(z, BinaryAssignment{1});
    CHECK(node.nb() == 2);
    CHECK(node.c().isApprox(z.Gb().col(0)));
}

TEST_CASE("cartesian product stacks blocks")
{
    const HybridZonotope a = lift(make_box(Vector::Zero(1), Vector::Ones(1)));
    const HybridZonotope p = cartesian_product(a, shifted_copies());
    CHECK(p.n() == 3);
    CHECK(p.dims() == SetDims{4, 3, 0});
    CHECK(p.Gc().block(1, 0, 2, 1).isZero());
}

TEST_CASE("convex relaxation contains every leaf point")
{
    const HybridZonotope z = shifted_copies();
    const ConstrainedZonotope r = z.convex_relaxation();
    CHECK(r.ng() == 6);
    for (const auto& xi : oracle::all_assignments(3))
        CHECK(oracle::leaf_contains(r, leaf(z, xi).c));
}
