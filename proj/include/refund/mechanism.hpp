// Deterministic refund mechanisms over a discrete instance.
//
// A mechanism is a menu of (upfront price, refund) options. The buyer picks an
// option, pays the price, observes her value, and returns the item for the
// refund exactly when her value is strictly below it (ties keep). A monotone
// threshold allocation pins each type's refund to a grid value; prices then
// follow from consecutive-type indifference anchored at zero utility for the
// lowest type, which is revenue-maximal for the given allocation.

#pragma once

#include "refund/instance.hpp"

#include <vector>

namespace refund {

// Per-type keep thresholds: type i keeps the item iff its value index j
// satisfies j >= S[i]. Incentive compatibility of deterministic mechanisms is
// equivalent to S being weakly decreasing in the type index (higher types keep
// weakly more), which every operation below requires.
struct ThresholdAllocation {
    std::vector<int> S;

    bool monotone() const {
        for (std::size_t i = 0; i + 1 < S.size(); ++i)
            if (S[i] < S[i + 1]) return false;
        return true;
    }
};

struct MenuOption {
    Rat price;
    Rat refund;
};

struct RefundMenu {
    std::vector<MenuOption> options;
    std::vector<int> assignment;  // option index purchased by each type
};

// Second-phase transfer table in the report-the-value form: z[i][j] says
// whether type i keeps at value j, and r[i][j] is the transfer paid back to
// the buyer when she reports value j. r follows the telescoped transfer
// identity anchored at the refund the lowest value would receive; it is a
// payment-equivalent representation kept for auditing, while the menu
// semantics above stays the operational one.
struct ReturnPolicyTable {
    std::vector<std::vector<Rat>> r;
    std::vector<std::vector<int>> z;
};

// Q(i, R) = E_{v ~ G_i}[max(v, R)]: the second-phase payoff of a type-i buyer
// holding an option with refund R (she ends with the better of keeping or
// returning).
Rat q_value(const DiscreteInstance& inst, int type_index, const Rat& refund);

// Prices from the allocation: p[0] = Q(0, R_0) (zero utility at the lowest
// type) and p[i] = p[i-1] + Q(i, R_i) - Q(i, R_{i-1}). Weakly decreasing in
// the type index. Throws std::invalid_argument when S is not monotone.
std::vector<Rat> payments_from_allocation(const DiscreteInstance& inst,
                                          const ThresholdAllocation& alloc);

// The menu realizing the allocation: refund v_{S[i]} and the price above for
// each type, with identical consecutive (price, refund) pairs merged into one
// option. At most n options and at most one per distinct threshold.
RefundMenu menu_from_allocation(const DiscreteInstance& inst,
                                const ThresholdAllocation& alloc);

// Expected upfront payments minus expected refunds, exactly:
// (1/m) * sum_i [ p_i - v_{S[i]} * P(v < v_{S[i]}) ].
Rat revenue(const DiscreteInstance& inst, const ThresholdAllocation& alloc);

// Expected revenue of an arbitrary menu when every type truthfully takes its
// assigned option: average over types of price minus the refund mass paid
// back (values strictly below the refund return the item).
Rat menu_revenue(const DiscreteInstance& inst, const RefundMenu& menu);

ReturnPolicyTable return_policy_table(const DiscreteInstance& inst,
                                      const ThresholdAllocation& alloc);

}  // namespace refund
