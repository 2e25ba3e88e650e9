// Seeded random instance generators.
//
// All generators are deterministic functions of their seed (SplitMix64
// streams) and produce instances that satisfy their structural invariants by
// construction: discrete instances get dominance-ordered types by sorting cdf
// columns, ordered tables are built from nonnegative increments, and uniform
// tables are ordered tables with independently shuffled rows.

#pragma once

#include "refund/instance.hpp"

#include <cstdint>

namespace refund {

// Knobs for the random discrete instance: values are distinct numerators drawn
// from [1, numerator_range] (default 4n) over value_denominator; pmfs are
// sorted-cut-point draws with the fixed pmf_denominator.
struct GridSpec {
    long value_denominator = 4;
    long numerator_range = 0;  // 0 means 4 * n
    long pmf_denominator = 64;
};

DiscreteInstance gen_random(std::uint64_t seed, int m, int n,
                            const GridSpec& spec = GridSpec{});

OrderedItemInstance gen_random_ordered(std::uint64_t seed, int m, int k,
                                       const GridSpec& spec = GridSpec{});

UniformItemInstance gen_random_uniform(std::uint64_t seed, int m, int k,
                                       const GridSpec& spec = GridSpec{});

}  // namespace refund
