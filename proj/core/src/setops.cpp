#include "hybzono/setops.hpp"

#include <algorithm>
#include <cmath>

namespace hybzono
{

Halfspace::Halfspace(Vector l_, double rho_, bool degenerate_) : l(std::move(l_)), rho(rho_), degenerate(degenerate_)
{
    if (!l.allFinite() || !std::isfinite(rho))
        throw std::invalid_argument("Halfspace: non-finite normal or offset");
    if (!degenerate && (l.size() == 0 || l.isZero(0.0)))
        throw std::invalid_argument("Halfspace: all-zero normal");
}

HybridZonotope linear_map(const Matrix& R, const HybridZonotope& z)
{
    if (R.cols() != z.n())
        throw std::invalid_argument("linear_map: R must have n columns");
    return HybridZonotope(R * z.Gc(), R * z.Gb(), R * z.c(), z.Ac(), z.Ab(), z.b(), z.slack_tags());
}

HybridZonotope minkowski_sum(const HybridZonotope& z, const HybridZonotope& w)
{
    if (z.n() != w.n())
        throw std::invalid_argument("minkowski_sum: ambient dimensions differ");

    Matrix Ac = Matrix::Zero(z.nc() + w.nc(), z.ng() + w.ng());
    Matrix Ab = Matrix::Zero(z.nc() + w.nc(), z.nb() + w.nb());
    Ac.topLeftCorner(z.nc(), z.ng()) = z.Ac();
    Ac.bottomRightCorner(w.nc(), w.ng()) = w.Ac();
    Ab.topLeftCorner(z.nc(), z.nb()) = z.Ab();
    Ab.bottomRightCorner(w.nc(), w.nb()) = w.Ab();

    std::vector<SlackTag> tags = z.slack_tags();
    for (const auto& t : w.slack_tags())
        tags.push_back({t.column + z.ng(), t.row + z.nc()});

    return HybridZonotope(hcat(z.Gc(), w.Gc()), hcat(z.Gb(), w.Gb()), z.c() + w.c(), std::move(Ac), std::move(Ab),
                          vcat(z.b(), w.b()), std::move(tags));
}

HybridZonotope generalized_intersection(const HybridZonotope& z, const HybridZonotope& y, const Matrix& R)
{
    if (R.cols() != z.n() || R.rows() != y.n())
        throw std::invalid_argument("generalized_intersection: R must map n to m");

    const Index m = y.n();
    const Index ng = z.ng() + y.ng();
    const Index nb = z.nb() + y.nb();
    const Index nc = z.nc() + y.nc() + m;

    Matrix Gc = Matrix::Zero(z.n(), ng);
    Matrix Gb = Matrix::Zero(z.n(), nb);
    Gc.leftCols(z.ng()) = z.Gc();
    Gb.leftCols(z.nb()) = z.Gb();

    Matrix Ac = Matrix::Zero(nc, ng);
    Matrix Ab = Matrix::Zero(nc, nb);
    Ac.topLeftCorner(z.nc(), z.ng()) = z.Ac();
    Ab.topLeftCorner(z.nc(), z.nb()) = z.Ab();
    Ac.block(z.nc(), z.ng(), y.nc(), y.ng()) = y.Ac();
    Ab.block(z.nc(), z.nb(), y.nc(), y.nb()) = y.Ab();
    Ac.bottomLeftCorner(m, z.ng()) = R * z.Gc();
    Ac.bottomRightCorner(m, y.ng()) = -y.Gc();
    Ab.bottomLeftCorner(m, z.nb()) = R * z.Gb();
    Ab.bottomRightCorner(m, y.nb()) = -y.Gb();

    Vector b(nc);
    b << z.b(), y.b(), y.c() - R * z.c();

    std::vector<SlackTag> tags = z.slack_tags();
    for (const auto& t : y.slack_tags())
        tags.push_back({t.column + z.ng(), t.row + z.nc()});

    return HybridZonotope(std::move(Gc), std::move(Gb), z.c(), std::move(Ac), std::move(Ab), std::move(b),
                          std::move(tags));
}

HybridZonotope intersection(const HybridZonotope& z, const HybridZonotope& y)
{
    return generalized_intersection(z, y, Matrix::Identity(z.n(), z.n()));
}

double halfspace_dm(const HybridZonotope& z, const Halfspace& h, const Matrix& R)
{
    if (R.cols() != z.n() || R.rows() != h.l.size())
        throw std::invalid_argument("halfspace_intersection: R must map n to the halfspace dimension");
    const Vector lR = R.transpose() * h.l;
    double dm = h.rho - lR.dot(z.c());
    if (z.ng() > 0)
        dm += (z.Gc().transpose() * lR).cwiseAbs().sum();
    if (z.nb() > 0)
        dm += (z.Gb().transpose() * lR).cwiseAbs().sum();
    return dm;
}

HybridZonotope halfspace_intersection(const HybridZonotope& z, const Halfspace& h, const Matrix& R)
{
    double dm = halfspace_dm(z, h, R);
    if (std::isnan(dm))
        throw std::invalid_argument("halfspace_intersection: d_m is NaN");
    // d_m < 0 means no point of z satisfies the halfspace; a zero slack leaves the row
    // l^T R z = rho, which z cannot meet either
    dm = std::max(dm, 0.0);

    const Vector lR = R.transpose() * h.l;
    const Index ng = z.ng() + 1;
    const Index nc = z.nc() + 1;

    Matrix Gc = Matrix::Zero(z.n(), ng);
    Gc.leftCols(z.ng()) = z.Gc();

    Matrix Ac = Matrix::Zero(nc, ng);
    Ac.topLeftCorner(z.nc(), z.ng()) = z.Ac();
    if (z.ng() > 0)
        Ac.row(z.nc()).head(z.ng()) = (z.Gc().transpose() * lR).transpose();
    Ac(z.nc(), z.ng()) = dm / 2.0;

    Matrix Ab(nc, z.nb());
    Ab.topRows(z.nc()) = z.Ab();
    if (z.nb() > 0)
        Ab.row(z.nc()) = (z.Gb().transpose() * lR).transpose();

    Vector b(nc);
    b.head(z.nc()) = z.b();
    b[z.nc()] = h.rho - lR.dot(z.c()) - dm / 2.0;

    std::vector<SlackTag> tags = z.slack_tags();
    tags.push_back({z.ng(), z.nc()});

    return HybridZonotope(std::move(Gc), z.Gb(), z.c(), std::move(Ac), std::move(Ab), std::move(b), std::move(tags));
}

HybridZonotope halfspace_intersection(const HybridZonotope& z, const Halfspace& h)
{
    return halfspace_intersection(z, h, Matrix::Identity(z.n(), z.n()));
}

} // namespace hybzono
