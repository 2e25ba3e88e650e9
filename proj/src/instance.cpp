#include "refund/instance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace refund {

ValidationReport validate_discrete(const DiscreteInstance& inst) {
    ValidationReport report;
    const int m = inst.m();
    const int n = inst.n();

    if (m < 1) report.add("shape", -1, -1, "at least one type required");
    if (n < 1) report.add("shape", -1, -1, "at least one value required");

    for (int j = 0; j + 1 < n; ++j) {
        if (!(inst.values[j] < inst.values[j + 1]))
            report.add("value-ordering", -1, j,
                       "values must be strictly ascending at column " + std::to_string(j));
    }

    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(inst.pmf[i].size()) != n) {
            report.add("shape", i, -1, "pmf row " + std::to_string(i) + " has " +
                                           std::to_string(inst.pmf[i].size()) +
                                           " entries, expected " + std::to_string(n));
            continue;
        }
        Rat sum = 0;
        for (int j = 0; j < n; ++j) {
            if (inst.pmf[i][j] < 0)
                report.add("pmf-nonneg", i, j, "negative probability");
            sum += inst.pmf[i][j];
        }
        if (sum != 1)
            report.add("row-sum", i, -1,
                       "row sums to " + rat_to_string(sum) + ", expected 1");
    }
    if (!report.pass) return report;

    // Dominance: the cdf of a higher type never exceeds the cdf of a lower
    // type at any grid point. Running per-row prefix sums keep this O(mn).
    for (int i = 0; i + 1 < m; ++i) {
        Rat acc_lo = 0, acc_hi = 0;
        for (int j = 0; j < n; ++j) {
            acc_lo += inst.pmf[i][j];
            acc_hi += inst.pmf[i + 1][j];
            if (acc_hi > acc_lo)
                report.add("fosd", i + 1, j,
                           "cdf of type " + std::to_string(i + 1) + " exceeds type " +
                               std::to_string(i) + " at column " + std::to_string(j) +
                               " (" + rat_to_string(acc_hi) + " > " + rat_to_string(acc_lo) + ")");
        }
    }
    return report;
}

ValidationReport validate_ordered(const OrderedItemInstance& inst) {
    ValidationReport report;
    const int m = inst.m();
    const int k = inst.k();
    if (m < 1 || k < 1) {
        report.add("shape", -1, -1, "at least one type and one quality required");
        return report;
    }
    Rat pmf_sum = 0;
    for (int s = 0; s < k; ++s) {
        if (inst.item_pmf[s] < 0) report.add("pmf-nonneg", -1, s, "negative item probability");
        pmf_sum += inst.item_pmf[s];
    }
    if (pmf_sum != 1)
        report.add("pmf-sum", -1, -1,
                   "item pmf sums to " + rat_to_string(pmf_sum) + ", expected 1");
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(inst.value_table[i].size()) != k) {
            report.add("shape", i, -1,
                       "value table row " + std::to_string(i) + " has inconsistent length");
            return report;
        }
        for (int s = 0; s < k; ++s) {
            if (s + 1 < k && inst.value_table[i][s] > inst.value_table[i][s + 1])
                report.add("row-monotone", i, s, "values must not decrease along qualities");
            if (i + 1 < m && inst.value_table[i][s] > inst.value_table[i + 1][s])
                report.add("type-monotone", i + 1, s, "values must not decrease along types");
        }
    }
    return report;
}

namespace {

void check_type_index(const DiscreteInstance& inst, int type_index) {
    if (type_index < 0 || type_index >= inst.m())
        throw std::out_of_range("type index " + std::to_string(type_index) +
                                " out of range [0, " + std::to_string(inst.m()) + ")");
}

}  // namespace

Rat cdf(const DiscreteInstance& inst, int type_index, const Rat& value) {
    check_type_index(inst, type_index);
    Rat acc = 0;
    for (int j = 0; j < inst.n() && inst.values[j] <= value; ++j)
        acc += inst.pmf[type_index][j];
    return acc;
}

Rat cdf_strict(const DiscreteInstance& inst, int type_index, const Rat& value) {
    check_type_index(inst, type_index);
    Rat acc = 0;
    for (int j = 0; j < inst.n() && inst.values[j] < value; ++j)
        acc += inst.pmf[type_index][j];
    return acc;
}

DiscreteInstance to_discrete(const OrderedItemInstance& inst) {
    const int m = inst.m();
    const int k = inst.k();

    std::vector<Rat> grid;
    grid.reserve(static_cast<std::size_t>(m) * k);
    for (const auto& row : inst.value_table)
        for (const auto& v : row) grid.push_back(v);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    DiscreteInstance out;
    out.values = std::move(grid);
    out.pmf.assign(m, std::vector<Rat>(out.values.size(), Rat(0)));
    for (int i = 0; i < m; ++i) {
        for (int s = 0; s < k; ++s) {
            auto it = std::lower_bound(out.values.begin(), out.values.end(),
                                       inst.value_table[i][s]);
            out.pmf[i][it - out.values.begin()] += inst.item_pmf[s];
        }
    }
    return out;
}

SortRowsResult sort_rows(const UniformItemInstance& inst) {
    const int m = inst.m();
    const int k = inst.k();
    SortRowsResult result;

    result.ordered.value_table.assign(m, std::vector<Rat>());
    result.sigma.assign(m, std::vector<int>(k));
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(inst.value_table[i].size()) != k) {
            result.report.add("shape", i, -1, "value table row " + std::to_string(i) +
                                                  " has inconsistent length");
            return result;
        }
        std::vector<int>& perm = result.sigma[i];
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
            return inst.value_table[i][a] < inst.value_table[i][b];
        });
        auto& row = result.ordered.value_table[i];
        row.reserve(k);
        for (int s = 0; s < k; ++s) row.push_back(inst.value_table[i][perm[s]]);
    }
    if (k > 0)
        result.ordered.item_pmf.assign(k, rat(1, k));

    // Ordered types require the sorted table to be weakly increasing in the
    // type index, column by column.
    for (int i = 0; i + 1 < m; ++i)
        for (int s = 0; s < k; ++s)
            if (result.ordered.value_table[i][s] > result.ordered.value_table[i + 1][s])
                result.report.add("ordered-types", i + 1, s,
                                  "sorted value of type " + std::to_string(i + 1) +
                                      " at quality " + std::to_string(s) +
                                      " is below type " + std::to_string(i) + "'s");
    return result;
}

}  // namespace refund
