#ifndef HYBZONO_GEOMIO_HPP_
#define HYBZONO_GEOMIO_HPP_

/**
 * @file geomio.hpp
 * @brief Support-sampled polygons of 2D projections and reachability metric tables.
 */

#include "hybzono/reach.hpp"
#include "hybzono/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hybzono
{

struct PolygonSample
{
    /// empty for a whole-set polygon
    BinaryAssignment xi_b;
    std::vector<Eigen::Vector2d> directions;
    std::vector<double> offsets;
    /// counter-clockwise
    std::vector<Eigen::Vector2d> vertices;
};

/// n uniformly spaced unit directions starting at angle 0.
std::vector<Eigen::Vector2d> uniform_directions(int n);

/// Intersection of halfplanes d_i^T x <= h_i, directions sorted by angle (angular sweep).
/// Halfplanes redundant within 1e-10 contribute no vertex.
std::vector<Eigen::Vector2d> halfplane_polygon(const std::vector<Eigen::Vector2d>& dirs,
                                               const std::vector<double>& offsets);

struct ProjectOptions
{
    int n_dirs = 250;
    bool per_leaf = false;
    /// leaves to draw when per_leaf is set; enumerated when absent
    std::optional<IntegerFeasibleSet> tree;
    std::size_t node_budget = 0;
    unsigned threads = 1;
};

/// Over-approximating polygons of the projection onto axes (i, j).
std::vector<PolygonSample> project_sample(const HybridZonotope& z, Index i, Index j, const ProjectOptions& opts = {});

Json polygons_to_json(Index i, Index j, const std::vector<PolygonSample>& polys);

struct MetricsRow
{
    std::string label;
    SetDims dims;
    std::optional<std::size_t> tree_size;
    double seconds = 0.0;
};

/// One row per stored set, labelled R<k> or R<k>r for reduced runs; time is cumulative.
std::vector<MetricsRow> metrics_table(const ReachResult& r, bool reduced);
std::string metrics_csv(const std::vector<MetricsRow>& rows);
Json metrics_json(const std::vector<MetricsRow>& rows);

} // namespace hybzono

#endif
