#include "refund/virtual_values.hpp"

#include <stdexcept>

namespace refund {

VirtualTable weighted_virtual(const DiscreteInstance& inst) {
    const int m = inst.m();
    const int n = inst.n();
    VirtualTable table;
    table.w.assign(m, std::vector<Rat>(n));
    table.suffix.assign(m, std::vector<Rat>(n + 1, Rat(0)));

    // cdf_row holds G_i as running prefix sums; cdf_next holds G_{i+1}.
    std::vector<Rat> cdf_row(n), cdf_next(n);
    for (int i = 0; i < m; ++i) {
        Rat acc = 0;
        for (int j = 0; j < n; ++j) {
            acc += inst.pmf[i][j];
            cdf_row[j] = acc;
        }
        if (i + 1 < m) {
            acc = 0;
            for (int j = 0; j < n; ++j) {
                acc += inst.pmf[i + 1][j];
                cdf_next[j] = acc;
            }
        }
        const long rent_weight = m - 1 - i;  // no rent above the top type
        for (int j = 0; j < n; ++j) {
            Rat w = inst.values[j] * inst.pmf[i][j];
            if (rent_weight > 0 && j + 1 < n)  // both cdfs are 1 at the top value
                w -= rent_weight * (inst.values[j + 1] - inst.values[j]) *
                     (cdf_row[j] - cdf_next[j]);
            table.w[i][j] = w;
        }
        for (int j = n - 1; j >= 0; --j)
            table.suffix[i][j] = table.suffix[i][j + 1] + table.w[i][j];
    }
    return table;
}

Rat virtual_welfare(const VirtualTable& table, const ThresholdAllocation& alloc, int m) {
    if (static_cast<int>(alloc.S.size()) != m)
        throw std::invalid_argument("allocation/type-count mismatch");
    if (!alloc.monotone())
        throw std::invalid_argument("thresholds must be weakly decreasing in the type index");
    Rat total = 0;
    for (int i = 0; i < m; ++i) total += table.suffix[i][alloc.S[i]];
    return total / m;
}

Rat virtual_welfare(const DiscreteInstance& inst, const ThresholdAllocation& alloc) {
    return virtual_welfare(weighted_virtual(inst), alloc, inst.m());
}

}  // namespace refund
