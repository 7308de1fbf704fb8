#ifndef HYBZONO_REACH_HPP_
#define HYBZONO_REACH_HPP_

/**
 * @file reach.hpp
 * @brief Exact forward reachable sets of MLD systems as hybrid zonotopes.
 */

#include "hybzono/mld.hpp"
#include "hybzono/reduce.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hybzono
{

struct ReachOptions
{
    int steps = 0;
    bool reduce_inequalities = false;
    /// implies tree tracking
    bool reduce_binaries = false;
    bool track_tree = false;
    bool domain_check = false;
    /// 0 selects default_node_budget()
    std::size_t node_budget = 0;
    unsigned threads = 1;
    /// when positive and a reduction runs, compare supports before and after it
    /// in this many random directions per step
    int verify_directions = 0;
    std::uint64_t seed = 0;
};

struct StepRecord
{
    int k = 0;
    SetDims dims;
    /// dimensions straight after the reach step, before any reduction
    SetDims raw_dims;
    std::optional<std::size_t> tree_size;
    std::size_t removed_rows = 0;
    std::size_t removed_binaries = 0;
    std::optional<bool> inside_domain;
    /// largest |rho_before - rho_after| / max(1, |rho_before|) over the verification directions
    std::optional<double> support_gap;
    /// leaves re-enumerated from the reduced set, for comparison with tree_size
    std::optional<std::size_t> verified_leaves;
    double seconds = 0.0;
};

struct ReachResult
{
    std::vector<HybridZonotope> sets;
    std::vector<StepRecord> records;
    /// per step when trees are tracked
    std::vector<IntegerFeasibleSet> trees;
    /// per step (index k-1 for step k) when any reduction runs
    std::vector<ReductionReport> inequality_reports;
    std::vector<ReductionReport> binary_reports;
    /// some R_k left the state domain, so later sets may miss states
    bool possibly_inner = false;

    const HybridZonotope& final_set() const { return sets.back(); }
};

/// R_{k+1} = [I 0] (([A; Ex] R_k + V) n_[0 I] {h <= Eaff}), with the n_e rows
/// intersected one at a time.
HybridZonotope reach_step(const HybridZonotope& Rk, const MldSystem& m, const HybridZonotope& U,
                          const HybridZonotope& W);

ReachResult reach(const HybridZonotope& R0, const MldModel& model, const ReachOptions& opts);

/// Complexity after k unreduced steps.
SetDims predicted_dims(int k, const MldDims& dims, const SetDims& U_dims, const SetDims& R0_dims);

/// True iff the set lies in the box lo <= x <= hi (axis supports, tolerance 1e-8).
bool domain_check(const HybridZonotope& Rk, const Vector& lo, const Vector& hi, std::size_t node_budget = 0);

} // namespace hybzono

#endif
