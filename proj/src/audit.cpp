#include "refund/audit.hpp"

#include <algorithm>
#include <set>
#include <thread>
#include <utility>

#include "refund/rng.hpp"

namespace refund {

using nlohmann::json;

namespace {

void require_menu(const DiscreteInstance& inst, const RefundMenu& menu) {
    if (menu.options.empty()) throw std::invalid_argument("menu has no options");
    if (static_cast<int>(menu.assignment.size()) != inst.m())
        throw std::invalid_argument("menu assigns " + std::to_string(menu.assignment.size()) +
                                    " types but the instance has " + std::to_string(inst.m()));
    for (int a : menu.assignment)
        if (a < 0 || a >= static_cast<int>(menu.options.size()))
            throw std::invalid_argument("menu assignment references option " + std::to_string(a) +
                                        " out of range");
}

void require_allocation(const DiscreteInstance& inst, const ThresholdAllocation& alloc) {
    if (static_cast<int>(alloc.S.size()) != inst.m())
        throw std::invalid_argument("allocation covers " + std::to_string(alloc.S.size()) +
                                    " types but the instance has " + std::to_string(inst.m()));
    for (int j : alloc.S)
        if (j < 0 || j >= inst.n())
            throw std::invalid_argument("allocation threshold " + std::to_string(j) +
                                        " out of range");
}

// Buyer utility from purchasing an option: expected keep-or-return value
// under its refund, minus its price.
Rat option_utility(const DiscreteInstance& inst, int type, const MenuOption& opt) {
    return q_value(inst, type, opt.refund) - opt.price;
}

// Seller's expected net take from a type on an option: price paid minus the
// refund mass handed back (values strictly below the refund return).
Rat seller_net(const DiscreteInstance& inst, int type, const MenuOption& opt) {
    return opt.price - opt.refund * cdf_strict(inst, type, opt.refund);
}

// Exact count of weakly decreasing vectors in {0..n-1}^m, optionally with at
// most `cap` distinct values: sum over d of C(n,d) * C(m-1,d-1).
mpz_class count_monotone_vectors(int m, int n, int cap) {
    const int dmax = cap > 0 ? std::min({cap, n, m}) : std::min(n, m);
    mpz_class total = 0;
    for (int d = 1; d <= dmax; ++d) {
        mpz_class choose_values, choose_cuts;
        mpz_bin_uiui(choose_values.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(d));
        mpz_bin_uiui(choose_cuts.get_mpz_t(), static_cast<unsigned long>(m - 1),
                     static_cast<unsigned long>(d - 1));
        total += choose_values * choose_cuts;
    }
    return total;
}

// Precomputed per-type tables over the value grid: Qtab[i][j] is type i's
// keep value under refund v_j, Rv[i][j] is the refund mass v_j * F_i(v_j^-).
// Both follow from one suffix sweep per row.
struct EvalTables {
    std::vector<std::vector<Rat>> Qtab, Rv;
};

EvalTables make_tables(const DiscreteInstance& inst) {
    const int m = inst.m();
    const int n = inst.n();
    EvalTables t;
    t.Qtab.assign(m, std::vector<Rat>(n));
    t.Rv.assign(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i) {
        Rat below = 0;         // probability mass strictly below v_j
        Rat above_value = 0;   // sum of pmf * value at and above v_j
        for (int j = 0; j < n; ++j) above_value += inst.pmf[i][j] * inst.values[j];
        for (int j = 0; j < n; ++j) {
            t.Qtab[i][j] = above_value + inst.values[j] * below;
            t.Rv[i][j] = inst.values[j] * below;
            below += inst.pmf[i][j];
            above_value -= inst.pmf[i][j] * inst.values[j];
        }
    }
    return t;
}

struct SearchBest {
    Rat acc;  // m * revenue of the best vector found
    std::vector<int> S;
    long long evaluated = 0;
    bool found = false;

    void offer(const Rat& candidate, const std::vector<int>& vec) {
        if (!found || candidate > acc) {
            acc = candidate;
            S = vec;
            found = true;
        }
    }
};

// Depth-first enumeration in lexicographically ascending order; strict
// improvement keeps the first (lex-smallest) maximizer. `distinct` counts
// the distinct thresholds used so far; cap = 0 means unrestricted.
void search(const DiscreteInstance& inst, const EvalTables& t, int cap, int level, int prev,
            int distinct, const Rat& p_prev, const Rat& acc, std::vector<int>& cur,
            SearchBest& best) {
    const int m = inst.m();
    const bool must_stay = cap > 0 && distinct == cap;
    const int hi = prev;
    for (int j = must_stay ? prev : 0; j <= hi; ++j) {
        Rat p = level == 0 ? t.Qtab[0][j] : p_prev + t.Qtab[level][j] - t.Qtab[level][prev];
        Rat a = acc + p - t.Rv[level][j];
        cur[level] = j;
        if (level + 1 == m) {
            ++best.evaluated;
            best.offer(a, cur);
        } else {
            search(inst, t, cap, level + 1, j, distinct + (j < prev ? 1 : 0), p, a, cur, best);
        }
    }
}

SearchBest search_from_first(const DiscreteInstance& inst, const EvalTables& t, int cap,
                             int first) {
    SearchBest best;
    std::vector<int> cur(inst.m());
    cur[0] = first;
    Rat p = t.Qtab[0][first];
    Rat a = p - t.Rv[0][first];
    if (inst.m() == 1) {
        best.evaluated = 1;
        best.offer(a, cur);
    } else {
        search(inst, t, cap, 1, first, 1, p, a, cur, best);
    }
    return best;
}

json allocation_witness(const std::vector<int>& S) { return json(S); }

}  // namespace

json AuditReport::to_json() const {
    json doc;
    doc["checks"] = json::array();
    for (const AuditCheck& c : checks)
        doc["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    return doc;
}

AuditReport check_ic(const DiscreteInstance& inst, const RefundMenu& menu) {
    require_menu(inst, menu);
    AuditReport report;
    const int m = inst.m();
    const int count = static_cast<int>(menu.options.size());

    bool ic_pass = true;
    json ic_witness = nullptr;
    bool seller_pass = true;
    json seller_witness = nullptr;

    for (int i = 0; i < m && (ic_pass || seller_pass); ++i) {
        std::vector<Rat> u(count);
        for (int o = 0; o < count; ++o) u[o] = option_utility(inst, i, menu.options[o]);
        const int assigned = menu.assignment[i];

        int best = 0;
        for (int o = 1; o < count; ++o)
            if (u[o] > u[best]) best = o;
        if (ic_pass && u[assigned] < u[best]) {
            ic_pass = false;
            ic_witness = {{"type", i},
                          {"assigned", assigned},
                          {"better_option", best},
                          {"utility_gap", rat_to_string(u[best] - u[assigned])}};
        }
        if (seller_pass && u[assigned] == u[best]) {
            // Among the type's utility-maximizing options, the assignment
            // should be the one the seller nets the most from.
            Rat assigned_net = seller_net(inst, i, menu.options[assigned]);
            for (int o = 0; o < count; ++o) {
                if (u[o] != u[best]) continue;
                Rat net = seller_net(inst, i, menu.options[o]);
                if (net > assigned_net) {
                    seller_pass = false;
                    seller_witness = {{"type", i},
                                      {"assigned", assigned},
                                      {"seller_preferred", o},
                                      {"net_gap", rat_to_string(net - assigned_net)}};
                    break;
                }
            }
        }
    }
    report.add("ic", ic_pass, std::move(ic_witness));
    report.add("ic_seller_preferred", seller_pass, std::move(seller_witness));
    return report;
}

AuditReport check_ir(const DiscreteInstance& inst, const RefundMenu& menu) {
    require_menu(inst, menu);
    AuditReport report;
    for (int i = 0; i < inst.m(); ++i) {
        Rat u = option_utility(inst, i, menu.options[menu.assignment[i]]);
        if (u < 0) {
            report.add("ir", false,
                       {{"type", i},
                        {"assigned", menu.assignment[i]},
                        {"utility", rat_to_string(u)}});
            return report;
        }
    }
    report.add("ir", true);
    return report;
}

AuditReport check_monotonicity(const ThresholdAllocation& alloc) {
    AuditReport report;
    for (std::size_t i = 0; i + 1 < alloc.S.size(); ++i) {
        if (alloc.S[i] < alloc.S[i + 1]) {
            report.add("monotone", false,
                       {{"types", {static_cast<int>(i), static_cast<int>(i + 1)}},
                        {"thresholds", {alloc.S[i], alloc.S[i + 1]}}});
            return report;
        }
    }
    report.add("monotone", true);
    return report;
}

AuditReport check_q_condition(const DiscreteInstance& inst, const ThresholdAllocation& alloc) {
    require_allocation(inst, alloc);
    AuditReport report;
    const int m = inst.m();
    // Q(t, t') = keep value of type t under the refund assigned to type t'.
    std::vector<std::vector<Rat>> Q(m, std::vector<Rat>(m));
    for (int t = 0; t < m; ++t)
        for (int s = 0; s < m; ++s) Q[t][s] = q_value(inst, t, inst.values[alloc.S[s]]);
    for (int t = 0; t < m; ++t) {
        for (int s = t + 1; s < m; ++s) {
            Rat lhs = Q[t][t] + Q[s][s];
            Rat rhs = Q[t][s] + Q[s][t];
            if (lhs < rhs) {
                report.add("q_supermodular", false,
                           {{"types", {t, s}},
                            {"diagonal", rat_to_string(lhs)},
                            {"crossed", rat_to_string(rhs)}});
                return report;
            }
        }
    }
    report.add("q_supermodular", true);
    return report;
}

BruteForceResult brute_force(const DiscreteInstance& inst, int cap, long long budget,
                             int threads) {
    if (cap < 0) throw std::invalid_argument("cap must be non-negative");
    const int m = inst.m();
    const int n = inst.n();
    const mpz_class total = count_monotone_vectors(m, n, cap);
    if (total > static_cast<long>(budget))
        throw BudgetExceeded("enumeration of " + total.get_str() +
                             " threshold vectors exceeds the budget of " +
                             std::to_string(budget));

    const EvalTables tables = make_tables(inst);
    const int workers = std::max(1, std::min(threads, n));

    std::vector<SearchBest> results(n);
    if (workers == 1) {
        for (int first = 0; first < n; ++first)
            results[first] = search_from_first(inst, tables, cap, first);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int first = w; first < n; first += workers)
                    results[first] = search_from_first(inst, tables, cap, first);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    BruteForceResult out;
    bool found = false;
    Rat best_acc;
    for (int first = 0; first < n; ++first) {
        const SearchBest& r = results[first];
        out.evaluated += r.evaluated;
        if (!r.found) continue;
        // Shards are visited in ascending first-threshold order, so a strict
        // improvement keeps the lexicographically smallest overall argmax.
        if (!found || r.acc > best_acc) {
            best_acc = r.acc;
            out.allocation.S = r.S;
            found = true;
        }
    }
    out.revenue = best_acc / m;
    return out;
}

AuditReport check_virtual_identity(const DiscreteInstance& inst, long long exhaustive_limit,
                                   int samples) {
    return check_virtual_identity(inst, weighted_virtual(inst), exhaustive_limit, samples);
}

AuditReport check_virtual_identity(const DiscreteInstance& inst, const VirtualTable& table,
                                   long long exhaustive_limit, int samples) {
    AuditReport report;
    const int m = inst.m();
    const int n = inst.n();
    const EvalTables tables = make_tables(inst);

    json witness = nullptr;
    auto identity_holds = [&](const std::vector<int>& S) {
        Rat pay_acc, vw_acc;
        Rat p;
        for (int i = 0; i < m; ++i) {
            p = i == 0 ? tables.Qtab[0][S[0]]
                       : p + tables.Qtab[i][S[i]] - tables.Qtab[i][S[i - 1]];
            pay_acc += p - tables.Rv[i][S[i]];
            vw_acc += table.suffix[i][S[i]];
        }
        if (pay_acc == vw_acc) return true;
        witness = {{"allocation", allocation_witness(S)},
                   {"revenue", rat_to_string(pay_acc / m)},
                   {"virtual_welfare", rat_to_string(vw_acc / m)}};
        return false;
    };

    bool pass = true;
    if (count_monotone_vectors(m, n, 0) <= static_cast<long>(exhaustive_limit)) {
        std::vector<int> cur(m);
        // Enumerate every weakly decreasing vector by recursion on the type.
        auto rec = [&](auto&& self, int level, int prev) -> bool {
            if (level == m) return identity_holds(cur);
            for (int j = 0; j <= prev; ++j) {
                cur[level] = j;
                if (!self(self, level + 1, j)) return false;
            }
            return true;
        };
        pass = rec(rec, 0, n - 1);
    } else {
        SplitMix64 rng = SplitMix64::stream(0, 5);
        std::vector<int> S(m);
        for (int trial = 0; trial < samples && pass; ++trial) {
            for (int i = 0; i < m; ++i) S[i] = static_cast<int>(rng.below(n));
            std::sort(S.begin(), S.end(), std::greater<int>());
            pass = identity_holds(S);
        }
    }
    report.add("virtual_identity", pass, std::move(witness));
    return report;
}

AuditReport check_menu_size(const RefundMenu& menu, int bound) {
    AuditReport report;
    std::set<std::pair<Rat, Rat>> distinct;
    for (const MenuOption& opt : menu.options) distinct.emplace(opt.price, opt.refund);
    const int count = static_cast<int>(distinct.size());
    if (count <= bound) {
        report.add("menu_size", true);
    } else {
        report.add("menu_size", false, {{"distinct_options", count}, {"bound", bound}});
    }
    return report;
}

}  // namespace refund
