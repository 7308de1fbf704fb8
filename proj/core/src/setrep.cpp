#include "hybzono/setrep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hybzono
{

namespace
{
    bool all_finite(const Matrix& m) { return m.size() == 0 || m.allFinite(); }
    bool all_finite(const Vector& v) { return v.size() == 0 || v.allFinite(); }

    void require(bool condition, const char* message)
    {
        if (!condition)
            throw std::invalid_argument(message);
    }
} // namespace

Matrix hcat(const Matrix& left, const Matrix& right)
{
    const Index rows = left.cols() > 0 ? left.rows() : right.rows();
    if (left.cols() > 0 && right.cols() > 0 && left.rows() != right.rows())
        throw std::invalid_argument("hcat: row count mismatch");
    Matrix out(rows, left.cols() + right.cols());
    if (left.cols() > 0)
        out.leftCols(left.cols()) = left;
    if (right.cols() > 0)
        out.rightCols(right.cols()) = right;
    return out;
}

Matrix vcat(const Matrix& top, const Matrix& bottom)
{
    const Index cols = top.rows() > 0 ? top.cols() : bottom.cols();
    if (top.rows() > 0 && bottom.rows() > 0 && top.cols() != bottom.cols())
        throw std::invalid_argument("vcat: column count mismatch");
    Matrix out(top.rows() + bottom.rows(), cols);
    if (top.rows() > 0)
        out.topRows(top.rows()) = top;
    if (bottom.rows() > 0)
        out.bottomRows(bottom.rows()) = bottom;
    return out;
}

Vector vcat(const Vector& top, const Vector& bottom)
{
    Vector out(top.size() + bottom.size());
    out << top, bottom;
    return out;
}

Zonotope::Zonotope(Matrix G_, Vector c_) : G(std::move(G_)), c(std::move(c_))
{
    if (G.cols() == 0)
        G.resize(c.size(), 0);
    require(G.rows() == c.size(), "Zonotope: G rows must equal length of c");
    require(all_finite(G) && all_finite(c), "Zonotope: non-finite entry");
}

ConstrainedZonotope::ConstrainedZonotope(Matrix G_, Vector c_, Matrix A_, Vector b_)
    : G(std::move(G_)), c(std::move(c_)), A(std::move(A_)), b(std::move(b_))
{
    if (G.cols() == 0)
        G.resize(c.size(), 0);
    if (A.rows() == 0 || A.cols() == 0)
        A = Matrix::Zero(b.size(), G.cols());
    require(G.rows() == c.size(), "ConstrainedZonotope: G rows must equal length of c");
    require(A.cols() == G.cols(), "ConstrainedZonotope: A and G column counts differ");
    require(A.rows() == b.size(), "ConstrainedZonotope: A rows must equal length of b");
    require(all_finite(G) && all_finite(c) && all_finite(A) && all_finite(b),
            "ConstrainedZonotope: non-finite entry");
}

HybridZonotope::HybridZonotope(Matrix Gc, Matrix Gb, Vector c, Matrix Ac, Matrix Ab, Vector b,
                               std::vector<SlackTag> slack_tags)
    : Gc_(std::move(Gc)), Gb_(std::move(Gb)), c_(std::move(c)), Ac_(std::move(Ac)), Ab_(std::move(Ab)),
      b_(std::move(b)), slack_tags_(std::move(slack_tags))
{
    // zero-size blocks are normalised to the shapes implied by the other fields
    const Index n = c_.size();
    const Index nc = b_.size();
    if (Gc_.size() == 0)
        Gc_ = Matrix::Zero(n, std::max<Index>(Gc_.cols(), Ac_.cols()));
    if (Gb_.size() == 0)
        Gb_ = Matrix::Zero(n, std::max<Index>(Gb_.cols(), Ab_.cols()));
    if (Ac_.size() == 0)
        Ac_ = Matrix::Zero(nc, Gc_.cols());
    if (Ab_.size() == 0)
        Ab_ = Matrix::Zero(nc, Gb_.cols());

    require(Gc_.rows() == n && Gb_.rows() == n, "HybridZonotope: generator rows must equal length of c");
    require(Ac_.rows() == nc && Ab_.rows() == nc, "HybridZonotope: constraint rows must equal length of b");
    require(Ac_.cols() == Gc_.cols(), "HybridZonotope: Ac and Gc column counts differ");
    require(Ab_.cols() == Gb_.cols(), "HybridZonotope: Ab and Gb column counts differ");
    require(all_finite(Gc_) && all_finite(Gb_) && all_finite(c_) && all_finite(Ac_) && all_finite(Ab_)
                && all_finite(b_),
            "HybridZonotope: non-finite entry");
    for (const auto& tag : slack_tags_)
    {
        require(tag.column >= 0 && tag.column < Gc_.cols(), "HybridZonotope: slack tag column out of range");
        require(tag.row >= 0 && tag.row < nc, "HybridZonotope: slack tag row out of range");
    }
}

double HybridZonotope::order() const
{
    return n() == 0 ? 0.0 : static_cast<double>(ng() + nb() - nc()) / static_cast<double>(n());
}

ConstrainedZonotope HybridZonotope::convex_relaxation() const
{
    return ConstrainedZonotope(hcat(Gc_, Gb_), c_, hcat(Ac_, Ab_), b_);
}

bool HybridZonotope::identical(const HybridZonotope& o) const
{
    auto same = [](const auto& a, const auto& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
    };
    return same(Gc_, o.Gc_) && same(Gb_, o.Gb_) && same(c_, o.c_) && same(Ac_, o.Ac_) && same(Ab_, o.Ab_)
           && same(b_, o.b_) && slack_tags_ == o.slack_tags_;
}

BinaryAssignment::BinaryAssignment(std::vector<std::int8_t> values) : values_(std::move(values))
{
    for (auto v : values_)
        require(v == -1 || v == 1, "BinaryAssignment: entries must be -1 or +1");
}

BinaryAssignment::BinaryAssignment(std::initializer_list<int> values)
{
    values_.reserve(values.size());
    for (int v : values)
    {
        require(v == -1 || v == 1, "BinaryAssignment: entries must be -1 or +1");
        values_.push_back(static_cast<std::int8_t>(v));
    }
}

BinaryAssignment BinaryAssignment::from_vector(const Vector& v)
{
    std::vector<std::int8_t> out(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i)
    {
        if (std::abs(v[i] - 1.0) <= 1e-6)
            out[static_cast<std::size_t>(i)] = 1;
        else if (std::abs(v[i] + 1.0) <= 1e-6)
            out[static_cast<std::size_t>(i)] = -1;
        else
            throw std::invalid_argument("BinaryAssignment: value " + std::to_string(v[i]) + " is not +-1");
    }
    return BinaryAssignment(std::move(out));
}

Vector BinaryAssignment::to_vector() const
{
    Vector v(static_cast<Index>(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
        v[static_cast<Index>(i)] = values_[i];
    return v;
}

BinaryAssignment BinaryAssignment::prefix(std::size_t j) const
{
    require(j <= values_.size(), "BinaryAssignment: prefix longer than assignment");
    return BinaryAssignment(std::vector<std::int8_t>(values_.begin(), values_.begin() + static_cast<long>(j)));
}

BinaryAssignment BinaryAssignment::concat(const BinaryAssignment& tail) const
{
    std::vector<std::int8_t> out = values_;
    out.insert(out.end(), tail.values_.begin(), tail.values_.end());
    return BinaryAssignment(std::move(out));
}

IntegerFeasibleSet::IntegerFeasibleSet(std::size_t nb, std::vector<BinaryAssignment> entries)
    : nb_(nb), entries_(std::move(entries))
{
    for (const auto& e : entries_)
        require(e.size() == nb_, "IntegerFeasibleSet: entry length differs from nb");
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

bool IntegerFeasibleSet::contains(const BinaryAssignment& xi) const
{
    return std::binary_search(entries_.begin(), entries_.end(), xi);
}

Matrix IntegerFeasibleSet::as_matrix() const
{
    Matrix T(static_cast<Index>(nb_), static_cast<Index>(entries_.size()));
    for (std::size_t j = 0; j < entries_.size(); ++j)
        for (std::size_t i = 0; i < nb_; ++i)
            T(static_cast<Index>(i), static_cast<Index>(j)) = entries_[j][i];
    return T;
}

Zonotope make_box(const Vector& lo, const Vector& hi)
{
    require(lo.size() == hi.size(), "make_box: lo and hi differ in length");
    require(all_finite(lo) && all_finite(hi), "make_box: non-finite bound");
    require((lo.array() <= hi.array()).all(), "make_box: lo > hi");
    return Zonotope(Matrix(((hi - lo) / 2.0).asDiagonal()), (hi + lo) / 2.0);
}

HybridZonotope lift(const Zonotope& z)
{
    return HybridZonotope(z.G, Matrix(z.n(), 0), z.c, Matrix(0, z.ng()), Matrix(0, 0), Vector(0));
}

HybridZonotope lift(const ConstrainedZonotope& z)
{
    return HybridZonotope(z.G, Matrix(z.n(), 0), z.c, z.A, Matrix(z.nc(), 0), z.b);
}

HybridZonotope singleton(const Vector& point)
{
    return HybridZonotope(Matrix(point.size(), 0), Matrix(point.size(), 0), point, Matrix(0, 0), Matrix(0, 0),
                          Vector(0));
}

ConstrainedZonotope leaf(const HybridZonotope& z, const BinaryAssignment& xi)
{
    require(static_cast<Index>(xi.size()) == z.nb(), "leaf: assignment length differs from nb");
    const Vector v = xi.to_vector();
    Vector c = z.c();
    Vector b = z.b();
    if (z.nb() > 0)
    {
        c += z.Gb() * v;
        b -= z.Ab() * v;
    }
    return ConstrainedZonotope(z.Gc(), c, z.Ac(), b);
}

HybridZonotope branch_node(const HybridZonotope& z, const BinaryAssignment& xi_prefix)
{
    const Index j = static_cast<Index>(xi_prefix.size());
    require(j <= z.nb(), "branch_node: layer index exceeds nb");
    const Vector v = xi_prefix.to_vector();
    Vector c = z.c();
    Vector b = z.b();
    if (j > 0)
    {
        c += z.Gb().leftCols(j) * v;
        b -= z.Ab().leftCols(j) * v;
    }
    return HybridZonotope(z.Gc(), z.Gb().rightCols(z.nb() - j), c, z.Ac(), z.Ab().rightCols(z.nb() - j), b,
                          z.slack_tags());
}

std::vector<ConstrainedZonotope> decompose(const HybridZonotope& z, const IntegerFeasibleSet& feasible)
{
    require(static_cast<Index>(feasible.nb()) == z.nb(), "decompose: integer feasible set nb mismatch");
    std::vector<ConstrainedZonotope> leaves;
    leaves.reserve(feasible.size());
    for (const auto& xi : feasible)
        leaves.push_back(leaf(z, xi));
    return leaves;
}

HybridZonotope cartesian_product(const HybridZonotope& z, const HybridZonotope& w)
{
    const Index n = z.n() + w.n();
    const Index ng = z.ng() + w.ng();
    const Index nb = z.nb() + w.nb();
    const Index nc = z.nc() + w.nc();

    Matrix Gc = Matrix::Zero(n, ng);
    Matrix Gb = Matrix::Zero(n, nb);
    Matrix Ac = Matrix::Zero(nc, ng);
    Matrix Ab = Matrix::Zero(nc, nb);
    Gc.topLeftCorner(z.n(), z.ng()) = z.Gc();
    Gc.bottomRightCorner(w.n(), w.ng()) = w.Gc();
    Gb.topLeftCorner(z.n(), z.nb()) = z.Gb();
    Gb.bottomRightCorner(w.n(), w.nb()) = w.Gb();
    Ac.topLeftCorner(z.nc(), z.ng()) = z.Ac();
    Ac.bottomRightCorner(w.nc(), w.ng()) = w.Ac();
    Ab.topLeftCorner(z.nc(), z.nb()) = z.Ab();
    Ab.bottomRightCorner(w.nc(), w.nb()) = w.Ab();

    std::vector<SlackTag> tags = z.slack_tags();
    for (const auto& t : w.slack_tags())
        tags.push_back({t.column + z.ng(), t.row + z.nc()});

    return HybridZonotope(std::move(Gc), std::move(Gb), vcat(z.c(), w.c()), std::move(Ac), std::move(Ab),
                          vcat(z.b(), w.b()), std::move(tags));
}

} // namespace hybzono
