// Probability-weighted virtual values.
//
// w[i][j] recasts per-(type, value) revenue so that for every monotone
// threshold allocation S, (1/m) * sum_i suffix[i][S[i]] equals the exact
// mechanism revenue. Each entry is the buyer's value weighted by its
// probability minus an information-rent term coupling the type's cdf with the
// next type's over the gap to the next grid value:
//
//   w[i][j] = v_j g_i(v_j) - (m-1-i) (v_{j+1} - v_j) (G_i(v_j) - G_{i+1}(v_j))
//
// with the rent term vanishing at the top value (both cdfs are 1) and for the
// top type (no higher type to pay rent to). Working with the weighted form
// avoids dividing by zero-probability cells. The revenue identity, not the
// formula, is the contract; the oracle tests enforce it for every monotone S.

#pragma once

#include "refund/instance.hpp"
#include "refund/mechanism.hpp"

#include <vector>

namespace refund {

struct VirtualTable {
    std::vector<std::vector<Rat>> w;       // m x n weighted virtual values
    std::vector<std::vector<Rat>> suffix;  // m x (n+1); suffix[i][j] = sum_{j' >= j} w[i][j']
};

VirtualTable weighted_virtual(const DiscreteInstance& inst);

// (1/m) * sum_i suffix[i][S[i]]; exactly revenue(inst, alloc).
Rat virtual_welfare(const DiscreteInstance& inst, const ThresholdAllocation& alloc);
Rat virtual_welfare(const VirtualTable& table, const ThresholdAllocation& alloc, int m);

}  // namespace refund
