// Small worked instances shared across the test suite. Every golden number
// asserted against these was derived by hand (enumerating all monotone
// threshold vectors and evaluating payments directly) before the solver
// existed, so the tests are independent of the code they check.
#pragma once

#include "refund/instance.hpp"
#include "refund/rational.hpp"

namespace fixtures {

using refund::DiscreteInstance;
using refund::OrderedItemInstance;
using refund::Rat;
using refund::rat;

// Two types, values (1, 2), pmf rows (1/2, 1/2) and (1/4, 3/4).
// Optimal: both types at refund 1, single option (3/2, 1), revenue 3/2.
// All three monotone vectors: (0,0) -> 3/2, (1,0) -> 11/8, (1,1) -> 5/4.
inline DiscreteInstance instance_a() {
    DiscreteInstance d;
    d.values = {rat(1), rat(2)};
    d.pmf = {{rat(1, 2), rat(1, 2)}, {rat(1, 4), rat(3, 4)}};
    return d;
}

// Two types, values (1, 10), pmf rows (9/10, 1/10) and (1/10, 9/10).
// Optimal: options ((10, 10), (91/10, 1)), revenue 101/20; the other
// monotone vectors give 19/10 at (0,0) and 5 at (1,1).
inline DiscreteInstance instance_b() {
    DiscreteInstance d;
    d.values = {rat(1), rat(10)};
    d.pmf = {{rat(9, 10), rat(1, 10)}, {rat(1, 10), rat(9, 10)}};
    return d;
}

// Three types over two equally likely items, rows (0,12), (4,16), (13,17).
// On the union value grid the optimum is revenue 8 (every type at refund
// 12); restricting refunds to each type's own row values is strictly worse,
// which is exactly what this table exists to pin down.
inline OrderedItemInstance ordered_counterexample() {
    OrderedItemInstance o;
    o.item_pmf = {rat(1, 2), rat(1, 2)};
    o.value_table = {{rat(0), rat(12)}, {rat(4), rat(16)}, {rat(13), rat(17)}};
    return o;
}

}  // namespace fixtures
