#ifndef HYBZONO_MLD_HPP_
#define HYBZONO_MLD_HPP_

/**
 * @file mld.hpp
 * @brief Mixed logical dynamical systems and the two built-in case studies.
 *
 *   x+ = A x + Bu u + Bw w + Baff
 *   Ex x + Eu u + Ew w <= Eaff
 *
 * Binary states, inputs and auxiliaries take values in {0, 1}; sets realise them
 * through binary factors as 0.5 + 0.5 xi_b.
 */

#include "hybzono/setrep.hpp"

#include <string>
#include <vector>

namespace hybzono
{

struct MldDims
{
    Index n_xc = 0;
    Index n_xl = 0;
    Index n_uc = 0;
    Index n_ul = 0;
    Index n_rc = 0;
    Index n_rl = 0;
    Index n_e = 0;

    Index n() const { return n_xc + n_xl; }
    Index nu() const { return n_uc + n_ul; }
    Index nr() const { return n_rc + n_rl; }

    bool operator==(const MldDims&) const = default;
};

struct MldSystem
{
    Matrix A;
    Matrix Bu;
    Matrix Bw;
    Vector Baff;
    Matrix Ex;
    Matrix Eu;
    Matrix Ew;
    Vector Eaff;
    MldDims dims;
};

struct DomainSets
{
    HybridZonotope X;
    HybridZonotope U;
    HybridZonotope W;
};

/// Model plus everything a reachability run needs.
struct MldModel
{
    std::string name;
    MldSystem sys;
    DomainSets domains;
    HybridZonotope R0;
    /// state box that sized the big-M constants
    Vector x_lo;
    Vector x_hi;
};

/// Every shape or finiteness violation; empty when the system is well formed.
std::vector<std::string> validate(const MldSystem& m);
/// Throws std::invalid_argument listing all violations.
void require_valid(const MldSystem& m);

struct Discretization
{
    Matrix Ad;
    Matrix Bd;
    Vector fd;
};

/// Zero-order hold of dx/dt = Ac x + Bc v + f over Ts.
Discretization zoh_discretize(const Matrix& Ac, const Matrix& Bc, const Vector& f, double Ts);

enum class Sense
{
    LE,
    GE
};

struct IndicatorRows
{
    /// 2 x nv coefficients over v = (x, u, w), including the indicator column
    Matrix E;
    Vector rhs;
};

/// Big-M rows enforcing delta = 1 <=> row^T v <= threshold (LE) or >= threshold (GE).
/// M and m are the extreme values of row^T v - threshold over the variable box, with
/// the indicator column excluded. delta = 0 enforces the strict side with margin eps.
IndicatorRows encode_indicator(const Vector& row, double threshold, Sense sense, Index delta_index,
                               const Vector& lo, const Vector& hi, double eps);

/// Interval of row^T v over the box lo <= v <= hi.
std::pair<double, double> linear_range(const Vector& row, const Vector& lo, const Vector& hi);

/// W = box over continuous auxiliaries x {0,1}^n_rl, one binary factor per binary auxiliary.
HybridZonotope build_domain_W(const MldDims& dims, const Vector& w_lo, const Vector& w_hi);

/// Box x {0,1}^k domain in the same realisation.
HybridZonotope mixed_box(const Vector& lo, const Vector& hi, Index n_binary);

/// Two-mode piecewise affine system with equilibria at (+-1, 0).
MldModel build_pwa_two_mode();

/// Thermostat-controlled rooms: 3p rooms in a chain, one heater in every third room.
MldModel build_heated_rooms(int p);

/// Built-in by name: "pwa2eq" or "rooms:p".
MldModel builtin_model(const std::string& name);

/// Reference piecewise affine update used as a simulation oracle.
Vector pwa_step(const Vector& x);

struct RoomsSimulator
{
    Matrix Ad;
    Matrix Bh;
    Vector Bu;
    std::vector<Index> heated;

    /// One closed-loop step: temperatures, heater states in {0,1}, outside temperature.
    /// The thermostat switches on the sampled temperature and the new heater state acts during the step.
    std::pair<Vector, Vector> step(const Vector& temps, const Vector& heaters, double u) const;
};

RoomsSimulator rooms_simulator(int p);

} // namespace hybzono

#endif
