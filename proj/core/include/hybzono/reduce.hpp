#ifndef HYBZONO_REDUCE_HPP_
#define HYBZONO_REDUCE_HPP_

/**
 * @file reduce.hpp
 * @brief Exact complexity reduction: redundant halfspace rows, binary tree growth and
 *        elimination of linearly dependent binary factors.
 */

#include "hybzono/setrep.hpp"

#include <optional>
#include <vector>

namespace hybzono
{

struct ReductionReport
{
    /// indices refer to the input set
    std::vector<Index> removed_constraint_rows;
    std::vector<Index> removed_generator_columns;
    /// Gb -> Gb * binary_map, c -> c + Gb * binary_shift
    std::optional<Matrix> binary_map;
    std::optional<Vector> binary_shift;
    SetDims before;
    SetDims after;
};

struct ReduceOptions
{
    /// only slack tags whose column is >= first_column are tested
    Index first_column = 0;
    /// 0 selects default_node_budget()
    std::size_t node_budget = 0;
    /// workers for independent MILPs
    unsigned threads = 1;
};

/// Drops every tagged slack whose halfspace the set could not cross without its row,
/// together with that row. Candidates are screened against the input and confirmed one
/// at a time against the current set, so each removal is justified by the rows that remain.
std::pair<HybridZonotope, ReductionReport> remove_redundant_inequalities(const HybridZonotope& z,
                                                                         const ReduceOptions& opts = {});

/// True when the slack in `tag` can be removed without changing the set.
bool slack_is_redundant(const HybridZonotope& z, const SlackTag& tag, std::size_t node_budget = 0);

/// Set without continuous column `column` and constraint row `row`; tags are re-indexed.
HybridZonotope drop_slack(const HybridZonotope& z, const SlackTag& tag);

/// Integer feasible set of z2, whose first t1.nb() binary factors are those of a set with
/// integer feasible set t1. Only descendants of t1 are searched.
IntegerFeasibleSet grow_tree(const HybridZonotope& z2, const IntegerFeasibleSet& t1, const ReduceOptions& opts = {});

struct BinaryReduction
{
    HybridZonotope set;
    IntegerFeasibleSet tree;
    ReductionReport report;
};

/// Rewrites the binary factors in terms of a linearly independent subset of the rows of
/// T, then removes a constant independent row. `tree` must be the complete integer
/// feasible set of z.
BinaryReduction reduce_binary_factors(const HybridZonotope& z, const IntegerFeasibleSet& tree);

} // namespace hybzono

#endif
