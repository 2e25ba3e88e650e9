// Problem instances: a buyer with a private type drawn uniformly from m types,
// and a value for the item drawn from a per-type discrete distribution.
//
// DiscreteInstance is the general form: a strictly ascending value grid and one
// pmf row per type. Types are ordered: every higher type's value distribution
// first-order stochastically dominates every lower type's (validated, never
// repaired). OrderedItemInstance / UniformItemInstance describe the item-type
// structured settings (a value table over k item qualities) and reduce to
// DiscreteInstance for solving.
//
// Indices are 0-based everywhere in code; type 0 is the lowest type.

#pragma once

#include "refund/rational.hpp"

#include <string>
#include <vector>

namespace refund {

struct DiscreteInstance {
    std::vector<Rat> values;             // n strictly ascending grid values
    std::vector<std::vector<Rat>> pmf;   // m rows of n probabilities each

    int m() const { return static_cast<int>(pmf.size()); }
    int n() const { return static_cast<int>(values.size()); }
};

struct OrderedItemInstance {
    std::vector<Rat> item_pmf;                  // k item-quality probabilities
    std::vector<std::vector<Rat>> value_table;  // m rows of k values, weakly
                                                // increasing along both axes
    int m() const { return static_cast<int>(value_table.size()); }
    int k() const { return static_cast<int>(item_pmf.size()); }
};

struct UniformItemInstance {
    std::vector<std::vector<Rat>> value_table;  // m rows of k values; item
                                                // quality is uniform 1/k
    int m() const { return static_cast<int>(value_table.size()); }
    int k() const { return value_table.empty() ? 0 : static_cast<int>(value_table[0].size()); }
};

// A single violated constraint, positioned by row/column where applicable
// (-1 when the position does not apply).
struct Violation {
    std::string constraint;  // "pmf-nonneg", "row-sum", "fosd", "value-ordering", ...
    int row = -1;
    int col = -1;
    std::string detail;
};

struct ValidationReport {
    bool pass = true;
    std::vector<Violation> violations;

    void add(std::string constraint, int row, int col, std::string detail) {
        pass = false;
        violations.push_back({std::move(constraint), row, col, std::move(detail)});
    }
};

// Checks shape, pmf nonnegativity, exact row sums, strict value ordering, and
// first-order stochastic dominance of higher types over lower ones.
// Violations are data, not exceptions.
ValidationReport validate_discrete(const DiscreteInstance& inst);

// G_i(value) = P[v <= value] for type i; cdf_strict is P[v < value].
// The strict variant matters because a buyer returns the item exactly when her
// value is strictly below the refund.
Rat cdf(const DiscreteInstance& inst, int type_index, const Rat& value);
Rat cdf_strict(const DiscreteInstance& inst, int type_index, const Rat& value);

// Checks the ordered-item invariants: item_pmf nonnegative and summing to 1,
// value table rectangular and weakly increasing along both qualities and
// types. Violations are data, not exceptions.
ValidationReport validate_ordered(const OrderedItemInstance& inst);

// Collapses an ordered-item instance onto the sorted union of its table
// entries; equal values within a row aggregate their item probability mass.
// The result always passes validate_discrete when the input satisfies the
// ordered-item invariants.
DiscreteInstance to_discrete(const OrderedItemInstance& inst);

struct SortRowsResult {
    OrderedItemInstance ordered;
    // sigma[t][s] = original column of the entry now at sorted position s.
    std::vector<std::vector<int>> sigma;
    // Fails when the row-sorted table is not weakly increasing in the type
    // index (the instance then violates ordered types).
    ValidationReport report;
};

// Sorts each row ascending (stable, so ties keep their original column order)
// and sets the item distribution to uniform 1/k.
SortRowsResult sort_rows(const UniformItemInstance& inst);

}  // namespace refund
