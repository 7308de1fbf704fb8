#ifndef HYBZONO_SETREP_HPP_
#define HYBZONO_SETREP_HPP_

/**
 * @file setrep.hpp
 * @brief Zonotope, constrained zonotope and hybrid zonotope representations.
 *
 * A hybrid zonotope is
 *   Z = { Gc*xi_c + Gb*xi_b + c | Ac*xi_c + Ab*xi_b = b, xi_c in [-1,1]^ng, xi_b in {-1,1}^nb },
 * written <Gc, Gb, c, Ac, Ab, b>. With nb = 0 it is a constrained zonotope, and with
 * nc = 0 as well it is a zonotope.
 */

#include "hybzono/common.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace hybzono
{

/// G-rep zonotope <G, c>.
struct Zonotope
{
    Matrix G;
    Vector c;

    Zonotope() = default;
    Zonotope(Matrix G, Vector c);

    Index n() const { return c.size(); }
    Index ng() const { return G.cols(); }
};

/// CG-rep constrained zonotope <G, c, A, b>.
struct ConstrainedZonotope
{
    Matrix G;
    Vector c;
    Matrix A;
    Vector b;

    ConstrainedZonotope() = default;
    ConstrainedZonotope(Matrix G, Vector c, Matrix A, Vector b);

    Index n() const { return c.size(); }
    Index ng() const { return G.cols(); }
    Index nc() const { return b.size(); }
};

/// Marks a continuous factor that was introduced as the slack of a halfspace
/// intersection, together with the equality row that carries it.
struct SlackTag
{
    Index column = 0;
    Index row = 0;

    auto operator<=>(const SlackTag&) const = default;
};

/// Representation complexity (ng, nb, nc).
struct SetDims
{
    Index ng = 0;
    Index nb = 0;
    Index nc = 0;

    auto operator<=>(const SetDims&) const = default;
};

/// HCG-rep hybrid zonotope. Immutable once constructed.
class HybridZonotope
{
public:
    HybridZonotope() = default;

    /// Validates shapes and finiteness; throws std::invalid_argument otherwise.
    HybridZonotope(Matrix Gc, Matrix Gb, Vector c, Matrix Ac, Matrix Ab, Vector b,
                   std::vector<SlackTag> slack_tags = {});

    const Matrix& Gc() const { return Gc_; }
    const Matrix& Gb() const { return Gb_; }
    const Vector& c() const { return c_; }
    const Matrix& Ac() const { return Ac_; }
    const Matrix& Ab() const { return Ab_; }
    const Vector& b() const { return b_; }
    const std::vector<SlackTag>& slack_tags() const { return slack_tags_; }

    Index n() const { return c_.size(); }
    Index ng() const { return Gc_.cols(); }
    Index nb() const { return Gb_.cols(); }
    Index nc() const { return b_.size(); }
    SetDims dims() const { return {ng(), nb(), nc()}; }

    /// Degree-of-freedom order (ng + nb - nc) / n.
    double order() const;

    /// Relaxation <[Gc Gb], c, [Ac Ab], b> that drops integrality (outer bound).
    ConstrainedZonotope convex_relaxation() const;

    /// Structural equality (same matrices, bit for bit, and same tags).
    bool identical(const HybridZonotope& other) const;

private:
    Matrix Gc_;
    Matrix Gb_;
    Vector c_;
    Matrix Ac_;
    Matrix Ab_;
    Vector b_;
    std::vector<SlackTag> slack_tags_;
};

/// Vector of binary factor values, every entry exactly -1 or +1.
class BinaryAssignment
{
public:
    BinaryAssignment() = default;
    explicit BinaryAssignment(std::vector<std::int8_t> values);
    BinaryAssignment(std::initializer_list<int> values);

    /// Rounds a numeric vector whose entries are within 1e-6 of +-1.
    static BinaryAssignment from_vector(const Vector& v);

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    int operator[](std::size_t i) const { return values_[i]; }
    const std::vector<std::int8_t>& values() const { return values_; }

    Vector to_vector() const;
    BinaryAssignment prefix(std::size_t j) const;
    BinaryAssignment concat(const BinaryAssignment& tail) const;

    auto operator<=>(const BinaryAssignment&) const = default;

private:
    std::vector<std::int8_t> values_;
};

/// Sorted, duplicate-free set of full binary assignments (the integer feasible set).
class IntegerFeasibleSet
{
public:
    IntegerFeasibleSet() = default;
    explicit IntegerFeasibleSet(std::size_t nb) : nb_(nb) {}
    /// Sorts and deduplicates; throws if an entry has the wrong length.
    IntegerFeasibleSet(std::size_t nb, std::vector<BinaryAssignment> entries);

    std::size_t nb() const { return nb_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<BinaryAssignment>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool contains(const BinaryAssignment& xi) const;

    /// nb x |T| matrix with one assignment per column.
    Matrix as_matrix() const;

    bool operator==(const IntegerFeasibleSet&) const = default;

private:
    std::size_t nb_ = 0;
    std::vector<BinaryAssignment> entries_;
};

/// Axis-aligned box as a zonotope: <diag((hi-lo)/2), (hi+lo)/2>.
Zonotope make_box(const Vector& lo, const Vector& hi);

HybridZonotope lift(const Zonotope& z);
HybridZonotope lift(const ConstrainedZonotope& z);
HybridZonotope singleton(const Vector& point);

/// Leaf of the binary tree for a full assignment: <Gc, c + Gb xi, Ac, b - Ab xi>.
ConstrainedZonotope leaf(const HybridZonotope& z, const BinaryAssignment& xi);

/// Branch node after fixing the first j = xi_prefix.size() binary factors.
HybridZonotope branch_node(const HybridZonotope& z, const BinaryAssignment& xi_prefix);

/// One leaf per entry of the integer feasible set, in its order.
std::vector<ConstrainedZonotope> decompose(const HybridZonotope& z, const IntegerFeasibleSet& feasible);

/// {(z, w) | z in Z, w in W}, generators and constraints stacked block-diagonally.
HybridZonotope cartesian_product(const HybridZonotope& z, const HybridZonotope& w);

/// Horizontal concatenation that tolerates zero-column blocks.
Matrix hcat(const Matrix& left, const Matrix& right);
/// Vertical concatenation that tolerates zero-row blocks.
Matrix vcat(const Matrix& top, const Matrix& bottom);
Vector vcat(const Vector& top, const Vector& bottom);

} // namespace hybzono

#endif
