#include "hybzono/geomio.hpp"

#include "hybzono/queries.hpp"
#include "hybzono/setops.hpp"

#include "parallel.hpp"

#include <cmath>
#include <deque>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace hybzono
{

namespace
{
    using Vec2 = Eigen::Vector2d;

    constexpr double kRedundant = 1e-10;

    struct HalfPlane
    {
        Vec2 d;
        double h;
    };

    Vec2 meet(const HalfPlane& a, const HalfPlane& b)
    {
        Eigen::Matrix2d M;
        M.row(0) = a.d.transpose();
        M.row(1) = b.d.transpose();
        return M.partialPivLu().solve(Vec2(a.h, b.h));
    }

    // true when p does not lie strictly inside hp
    bool cuts(const HalfPlane& hp, const Vec2& p)
    {
        return hp.d.dot(p) >= hp.h - kRedundant;
    }
} // namespace

std::vector<Vec2> uniform_directions(int n)
{
    if (n < 3)
        throw std::invalid_argument("uniform_directions: need at least 3 directions");
    std::vector<Vec2> dirs;
    dirs.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
    {
        const double t = 2.0 * std::numbers::pi * k / n;
        dirs.emplace_back(std::cos(t), std::sin(t));
    }
    return dirs;
}

std::vector<Vec2> halfplane_polygon(const std::vector<Vec2>& dirs, const std::vector<double>& offsets)
{
    if (dirs.size() != offsets.size())
        throw std::invalid_argument("halfplane_polygon: direction and offset counts differ");
    for (double h : offsets)
        if (!std::isfinite(h))
            throw std::invalid_argument("halfplane_polygon: non-finite offset");

    std::vector<HalfPlane> hps;
    hps.reserve(dirs.size());
    for (std::size_t k = 0; k < dirs.size(); ++k)
    {
        const double len = dirs[k].norm();
        hps.push_back({dirs[k] / len, offsets[k] / len});
    }

    std::deque<HalfPlane> dq;
    for (const HalfPlane& hp : hps)
    {
        while (dq.size() >= 2 && cuts(hp, meet(dq[dq.size() - 2], dq.back())))
            dq.pop_back();
        while (dq.size() >= 2 && cuts(hp, meet(dq[0], dq[1])))
            dq.pop_front();
        if (!dq.empty() && std::abs(dq.back().d.x() * hp.d.y() - dq.back().d.y() * hp.d.x()) < 1e-14
            && dq.back().d.dot(hp.d) > 0.0)
        {
            if (hp.h < dq.back().h)
                dq.back() = hp;
            continue;
        }
        dq.push_back(hp);
    }
    while (dq.size() >= 3 && cuts(dq[0], meet(dq[dq.size() - 2], dq.back())))
        dq.pop_back();
    while (dq.size() >= 3 && cuts(dq.back(), meet(dq[0], dq[1])))
        dq.pop_front();

    std::vector<Vec2> verts;
    if (dq.size() < 2)
        return verts;
    for (std::size_t k = 0; k < dq.size(); ++k)
    {
        const Vec2 p = meet(dq[k], dq[(k + 1) % dq.size()]);
        if (!verts.empty() && (verts.back() - p).norm() <= kRedundant)
            continue;
        verts.push_back(p);
    }
    if (verts.size() > 1 && (verts.front() - verts.back()).norm() <= kRedundant)
        verts.pop_back();
    return verts;
}

std::vector<PolygonSample> project_sample(const HybridZonotope& z, Index i, Index j, const ProjectOptions& opts)
{
    if (i < 0 || j < 0 || i >= z.n() || j >= z.n() || i == j)
        throw std::invalid_argument("project_sample: invalid projection axes");
    Matrix P = Matrix::Zero(2, z.n());
    P(0, i) = 1.0;
    P(1, j) = 1.0;
    const HybridZonotope proj = linear_map(P, z);
    const std::vector<Vec2> dirs = uniform_directions(opts.n_dirs);
    QueryOptions qo;
    qo.node_budget = opts.node_budget;

    std::vector<HybridZonotope> parts;
    std::vector<BinaryAssignment> labels;
    if (opts.per_leaf)
    {
        const IntegerFeasibleSet tree = opts.tree ? *opts.tree : enumerate_integer_feasible(proj, qo);
        for (const BinaryAssignment& xi : tree)
        {
            parts.push_back(lift(leaf(proj, xi)));
            labels.push_back(xi);
        }
    }
    else
    {
        if (is_empty(proj, qo))
            throw SolverError(SolverError::Kind::EmptySet, "project_sample: set is empty");
        parts.push_back(proj);
        labels.emplace_back();
    }

    std::vector<PolygonSample> out(parts.size());
    for (std::size_t p = 0; p < parts.size(); ++p)
    {
        out[p].xi_b = labels[p];
        out[p].directions = dirs;
        out[p].offsets.assign(dirs.size(), 0.0);
    }
    const std::size_t total = parts.size() * dirs.size();
    detail::parallel_for(total, opts.threads, [&](std::size_t t) {
        const std::size_t p = t / dirs.size();
        const std::size_t k = t % dirs.size();
        out[p].offsets[k] = support_value(parts[p], Vector(dirs[k]), qo);
    });
    for (auto& poly : out)
        poly.vertices = halfplane_polygon(poly.directions, poly.offsets);
    return out;
}

Json polygons_to_json(Index i, Index j, const std::vector<PolygonSample>& polys)
{
    Json leaves = Json::array();
    for (const PolygonSample& p : polys)
    {
        Json xi = Json::array();
        for (std::int8_t v : p.xi_b.values())
            xi.push_back(static_cast<int>(v));
        Json verts = Json::array();
        for (const Vec2& v : p.vertices)
            verts.push_back(Json::array({v.x(), v.y()}));
        leaves.push_back(Json{{"xi_b", xi}, {"vertices", verts}});
    }
    return Json{{"axes", Json::array({i, j})}, {"leaves", leaves}};
}

std::vector<MetricsRow> metrics_table(const ReachResult& r, bool reduced)
{
    std::vector<MetricsRow> rows;
    double elapsed = 0.0;
    for (const StepRecord& rec : r.records)
    {
        elapsed += rec.seconds;
        MetricsRow row;
        row.label = "R" + std::to_string(rec.k) + (reduced ? "r" : "");
        row.dims = rec.dims;
        row.tree_size = rec.tree_size;
        row.seconds = elapsed;
        rows.push_back(row);
    }
    return rows;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows)
{
    std::ostringstream os;
    os << "set,n_g,n_b,n_c,tree_size,time_s\n";
    for (const MetricsRow& r : rows)
    {
        os << r.label << ',' << r.dims.ng << ',' << r.dims.nb << ',' << r.dims.nc << ',';
        if (r.tree_size)
            os << *r.tree_size;
        os << ',' << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat << '\n';
    }
    return os.str();
}

Json metrics_json(const std::vector<MetricsRow>& rows)
{
    Json a = Json::array();
    for (const MetricsRow& r : rows)
    {
        a.push_back(Json{{"set", r.label},
                         {"n_g", r.dims.ng},
                         {"n_b", r.dims.nb},
                         {"n_c", r.dims.nc},
                         {"tree_size", r.tree_size ? Json(*r.tree_size) : Json(nullptr)}});
    }
    return a;
}

} // namespace hybzono
