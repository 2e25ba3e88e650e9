// Exact dynamic programs for revenue-optimal deterministic refund menus.
//
// All solvers maximize the weighted-virtual-value objective
// (1/m) sum_i suffix[i][S[i]] over weakly decreasing threshold vectors S,
// which equals exact mechanism revenue. The general and capped solvers break
// revenue ties toward the lexicographically smallest S (matching the
// brute-force oracle); the ordered/uniform solvers break toward the
// lexicographically greatest S, which guarantees at most k+1 distinct refunds
// on a k-quality instance (each maximal equal-refund block then sits on a
// member type's own support value, or at the top grid value, and two blocks
// cannot share a quality column).

#pragma once

#include "refund/instance.hpp"
#include "refund/mechanism.hpp"

#include <vector>

namespace refund {

struct SolveStats {
    int m = 0;
    int n = 0;               // value-grid size the DP ran on
    int cap = 0;             // menu-size cap (0 = uncapped)
    long long table_cells = 0;
    double seconds = 0.0;
};

struct SolveResult {
    ThresholdAllocation allocation;  // thresholds into the solved value grid
    RefundMenu menu;
    Rat revenue;
    SolveStats stats;
};

// Ordered/uniform solvers report against the induced union value grid.
struct OrderedSolveResult {
    SolveResult result;
    DiscreteInstance grid;                // to_discrete of the (sorted) table
    std::vector<int> quality_thresholds;  // per type: smallest quality kept; k = keeps none
};

struct UniformSolveResult {
    OrderedSolveResult ordered;
    std::vector<std::vector<int>> sigma;  // per-type row sort permutations
};

// Optimal menu over all monotone threshold vectors. O(mn) time after the
// O(mn) virtual table, O(mn) trace memory.
SolveResult solve_general(const DiscreteInstance& inst);

// Optimal menu among allocations with at most max_menu_size distinct
// thresholds. O(mnc) time. Revenue weakly increases in the cap and matches
// solve_general once the cap reaches n.
SolveResult solve_capped(const DiscreteInstance& inst, int max_menu_size);

// Checks the ordered-item invariants (weakly increasing value table along
// both axes; item pmf nonnegative, summing to 1).
SolveResult solve_on_grid_lex_greatest(const DiscreteInstance& grid);  // exposed for tests

OrderedSolveResult solve_ordered(const OrderedItemInstance& inst);
OrderedSolveResult solve_ordered_capped(const OrderedItemInstance& inst, int max_menu_size);

// sort_rows then the ordered solver; throws std::invalid_argument when the
// sorted table violates ordered types.
UniformSolveResult solve_uniform(const UniformItemInstance& inst);
UniformSolveResult solve_uniform_capped(const UniformItemInstance& inst, int max_menu_size);

}  // namespace refund
