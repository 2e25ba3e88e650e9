#include "refund/mechanism.hpp"

#include <stdexcept>
#include <string>

namespace refund {

namespace {

void require_allocation(const DiscreteInstance& inst, const ThresholdAllocation& alloc) {
    if (static_cast<int>(alloc.S.size()) != inst.m())
        throw std::invalid_argument("allocation has " + std::to_string(alloc.S.size()) +
                                    " thresholds, instance has " + std::to_string(inst.m()) +
                                    " types");
    for (int s : alloc.S)
        if (s < 0 || s >= inst.n())
            throw std::invalid_argument("threshold index " + std::to_string(s) +
                                        " outside the value grid");
    if (!alloc.monotone())
        throw std::invalid_argument("thresholds must be weakly decreasing in the type index");
}

}  // namespace

Rat q_value(const DiscreteInstance& inst, int type_index, const Rat& refund) {
    if (type_index < 0 || type_index >= inst.m())
        throw std::out_of_range("type index " + std::to_string(type_index) + " out of range");
    Rat acc = 0;
    for (int j = 0; j < inst.n(); ++j)
        acc += inst.pmf[type_index][j] * std::max(inst.values[j], refund);
    return acc;
}

std::vector<Rat> payments_from_allocation(const DiscreteInstance& inst,
                                          const ThresholdAllocation& alloc) {
    require_allocation(inst, alloc);
    const int m = inst.m();
    std::vector<Rat> p(m);
    p[0] = q_value(inst, 0, inst.values[alloc.S[0]]);
    for (int i = 1; i < m; ++i)
        p[i] = p[i - 1] + q_value(inst, i, inst.values[alloc.S[i]]) -
               q_value(inst, i, inst.values[alloc.S[i - 1]]);
    return p;
}

RefundMenu menu_from_allocation(const DiscreteInstance& inst,
                                const ThresholdAllocation& alloc) {
    const std::vector<Rat> prices = payments_from_allocation(inst, alloc);
    RefundMenu menu;
    menu.assignment.resize(inst.m());
    for (int i = 0; i < inst.m(); ++i) {
        const Rat& refund = inst.values[alloc.S[i]];
        // Prices and refunds both weakly decrease along types, so identical
        // options are always adjacent; merging neighbors dedups globally.
        if (menu.options.empty() || menu.options.back().price != prices[i] ||
            menu.options.back().refund != refund)
            menu.options.push_back({prices[i], refund});
        menu.assignment[i] = static_cast<int>(menu.options.size()) - 1;
    }
    return menu;
}

Rat revenue(const DiscreteInstance& inst, const ThresholdAllocation& alloc) {
    const std::vector<Rat> prices = payments_from_allocation(inst, alloc);
    Rat total = 0;
    for (int i = 0; i < inst.m(); ++i) {
        const Rat& refund = inst.values[alloc.S[i]];
        total += prices[i] - refund * cdf_strict(inst, i, refund);
    }
    return total / inst.m();
}

Rat menu_revenue(const DiscreteInstance& inst, const RefundMenu& menu) {
    if (menu.options.empty()) throw std::invalid_argument("menu has no options");
    if (static_cast<int>(menu.assignment.size()) != inst.m())
        throw std::invalid_argument("menu assigns " + std::to_string(menu.assignment.size()) +
                                    " types but the instance has " + std::to_string(inst.m()));
    Rat total = 0;
    for (int i = 0; i < inst.m(); ++i) {
        const int a = menu.assignment[i];
        if (a < 0 || a >= static_cast<int>(menu.options.size()))
            throw std::invalid_argument("menu assignment references option " +
                                        std::to_string(a) + " out of range");
        const MenuOption& opt = menu.options[a];
        total += opt.price - opt.refund * cdf_strict(inst, i, opt.refund);
    }
    return total / inst.m();
}

ReturnPolicyTable return_policy_table(const DiscreteInstance& inst,
                                      const ThresholdAllocation& alloc) {
    require_allocation(inst, alloc);
    const int m = inst.m();
    const int n = inst.n();
    ReturnPolicyTable table;
    table.z.assign(m, std::vector<int>(n, 0));
    table.r.assign(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) table.z[i][j] = j >= alloc.S[i] ? 1 : 0;

        // Anchor: the transfer at the lowest value is the refund if that value
        // is actually returned, zero otherwise.
        const Rat& refund = inst.values[alloc.S[i]];
        Rat anchor = inst.values[0] < refund ? refund : Rat(0);

        // Telescoped transfer identity:
        // r(i, v_j) = anchor + z(i, v_0) v_0 - z(i, v_j) v_j
        //             + sum_{x=1..j} z(i, v_x) (v_x - v_{x-1}).
        Rat increments = 0;
        for (int j = 0; j < n; ++j) {
            if (j > 0 && table.z[i][j])
                increments += inst.values[j] - inst.values[j - 1];
            table.r[i][j] = anchor + Rat(table.z[i][0]) * inst.values[0] -
                            Rat(table.z[i][j]) * inst.values[j] + increments;
        }
    }
    return table;
}

}  // namespace refund
