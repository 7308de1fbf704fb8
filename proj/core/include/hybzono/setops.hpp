#ifndef HYBZONO_SETOPS_HPP_
#define HYBZONO_SETOPS_HPP_

#include "hybzono/setrep.hpp"

namespace hybzono
{

/// H- = { x | l^T x <= rho }.
struct Halfspace
{
    Vector l;
    double rho = 0.0;
    /// an all-zero normal is rejected unless this is set
    bool degenerate = false;

    Halfspace() = default;
    Halfspace(Vector l, double rho, bool degenerate = false);
};

/// R Z = <R Gc, R Gb, R c, Ac, Ab, b>.
HybridZonotope linear_map(const Matrix& R, const HybridZonotope& z);

/// Z + W: generators concatenated, constraints block-diagonal, centres added.
HybridZonotope minkowski_sum(const HybridZonotope& z, const HybridZonotope& w);

/// Z n_R Y = { z in Z | R z in Y }.
HybridZonotope generalized_intersection(const HybridZonotope& z, const HybridZonotope& y, const Matrix& R);
HybridZonotope intersection(const HybridZonotope& z, const HybridZonotope& y);

/// Z n_R H- = { z in Z | l^T R z <= rho }.
///
/// Adds one continuous slack factor with zero generator and one equality row
///   l^T R Gc xi_c + (d_m/2) xi_h + l^T R Gb xi_b = rho - l^T R c - d_m/2,
/// where d_m = rho - l^T R c + sum |l^T R g| over all generators. The new slack is
/// recorded in slack_tags. A negative d_m (the set misses the halfspace) is clamped to 0,
/// which leaves an infeasible row and so an empty result.
HybridZonotope halfspace_intersection(const HybridZonotope& z, const Halfspace& h, const Matrix& R);
HybridZonotope halfspace_intersection(const HybridZonotope& z, const Halfspace& h);

/// Slack coefficient d_m for a halfspace intersection (exposed for testing).
double halfspace_dm(const HybridZonotope& z, const Halfspace& h, const Matrix& R);

} // namespace hybzono

#endif
