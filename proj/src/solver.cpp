#include "refund/solver.hpp"

#include "refund/virtual_values.hpp"

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace refund {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Backward DP over types. D[i][j] = suffix[i][j] + max_{j' <= j} D[i+1][j'];
// the answer is max_j D[0][j]. P[i][j] records the arg of max_{j' <= j}
// D[i][j'] under the requested tie preference (smallest index for the
// oracle-matching lex-smallest vector, largest for lex-greatest), so the
// optimal vector traces forward as S[0] = P[0][n-1], S[i] = P[i][S[i-1]].
ThresholdAllocation optimize(const VirtualTable& vt, int m, int n, bool prefer_large,
                             Rat& best_value) {
    std::vector<std::vector<std::int32_t>> P(m, std::vector<std::int32_t>(n));
    std::vector<Rat> D(n), M(n), M_next(n);

    for (int i = m - 1; i >= 0; --i) {
        for (int j = 0; j < n; ++j) {
            D[j] = vt.suffix[i][j];
            if (i + 1 < m) D[j] += M_next[j];
        }
        P[i][0] = 0;
        M[0] = D[0];
        for (int j = 1; j < n; ++j) {
            bool take = prefer_large ? !(D[j] < M[j - 1]) : D[j] > M[j - 1];
            P[i][j] = take ? j : P[i][j - 1];
            M[j] = take ? D[j] : M[j - 1];
        }
        std::swap(M, M_next);
    }
    best_value = M_next[n - 1];

    ThresholdAllocation alloc;
    alloc.S.resize(m);
    alloc.S[0] = P[0][n - 1];
    for (int i = 1; i < m; ++i) alloc.S[i] = P[i][alloc.S[i - 1]];
    return alloc;
}

SolveResult finish(const DiscreteInstance& inst, ThresholdAllocation alloc, const Rat& total,
                   int cap, long long cells, Clock::time_point start) {
    SolveResult res;
    res.menu = menu_from_allocation(inst, alloc);
    res.allocation = std::move(alloc);
    res.revenue = total / inst.m();
    res.stats.m = inst.m();
    res.stats.n = inst.n();
    res.stats.cap = cap;
    res.stats.table_cells = cells;
    res.stats.seconds = seconds_since(start);
    return res;
}

SolveResult solve_grid(const DiscreteInstance& inst, bool prefer_large) {
    const auto start = Clock::now();
    const int m = inst.m();
    const int n = inst.n();
    const VirtualTable vt = weighted_virtual(inst);
    Rat total;
    ThresholdAllocation alloc = optimize(vt, m, n, prefer_large, total);
    return finish(inst, std::move(alloc), total, 0, static_cast<long long>(m) * n, start);
}

// Capped DP. State (type i, threshold j, budget of d+1 distinct thresholds
// left for types i..m-1):
//   D[i][j][d] = suffix[i][j] + max( D[i+1][j][d],                  "stay"
//                                    max_{j' < j} D[i+1][j'][d-1] ) "open"
// Prefix maxima over j make each transition O(1), so the table costs O(mnc).
// step[i][j][d] records the chosen next threshold for the trace. On value
// ties the lex-smallest trace opens (the next threshold is then strictly
// smaller), the lex-greatest trace stays.
SolveResult solve_grid_capped(const DiscreteInstance& inst, int cap, bool prefer_large) {
    if (cap < 1) throw std::invalid_argument("menu size cap must be at least 1");
    const auto start = Clock::now();
    const int m = inst.m();
    const int n = inst.n();
    const int c = std::min({cap, n, m});
    const long long cells = static_cast<long long>(m) * n * c;
    if (cells > 50'000'000LL)
        throw std::length_error("capped dynamic program needs " + std::to_string(cells) +
                                " cells; reduce the cap or the instance");

    const VirtualTable vt = weighted_virtual(inst);
    const std::size_t plane = static_cast<std::size_t>(n) * c;
    auto idx = [n](int j, int d) { return static_cast<std::size_t>(d) * n + j; };

    std::vector<Rat> D(plane), D_next(plane), M(plane), M_next(plane);
    std::vector<std::int32_t> A(plane), A_next(plane);
    std::vector<std::vector<std::int32_t>> step(m > 1 ? m - 1 : 0,
                                                std::vector<std::int32_t>(plane));

    for (int i = m - 1; i >= 0; --i) {
        for (int d = 0; d < c; ++d) {
            for (int j = 0; j < n; ++j) {
                Rat& cell = D[idx(j, d)];
                cell = vt.suffix[i][j];
                if (i + 1 == m) continue;

                const Rat& stay = D_next[idx(j, d)];
                const bool can_open = d >= 1 && j >= 1;
                std::int32_t next_threshold = j;
                if (can_open) {
                    const Rat& open = M_next[idx(j - 1, d - 1)];
                    const bool do_open = prefer_large ? open > stay : !(open < stay);
                    if (do_open) {
                        next_threshold = A_next[idx(j - 1, d - 1)];
                        cell += open;
                    } else {
                        cell += stay;
                    }
                } else {
                    cell += stay;
                }
                step[i][idx(j, d)] = next_threshold;
            }
            // Prefix max/argmax over j for this budget level.
            M[idx(0, d)] = D[idx(0, d)];
            A[idx(0, d)] = 0;
            for (int j = 1; j < n; ++j) {
                bool take = prefer_large ? !(D[idx(j, d)] < M[idx(j - 1, d)])
                                         : D[idx(j, d)] > M[idx(j - 1, d)];
                M[idx(j, d)] = take ? D[idx(j, d)] : M[idx(j - 1, d)];
                A[idx(j, d)] = take ? j : A[idx(j - 1, d)];
            }
        }
        std::swap(D, D_next);
        std::swap(M, M_next);
        std::swap(A, A_next);
    }

    const Rat total = M_next[idx(n - 1, c - 1)];
    ThresholdAllocation alloc;
    alloc.S.resize(m);
    alloc.S[0] = A_next[idx(n - 1, c - 1)];
    int budget = c;
    for (int i = 0; i + 1 < m; ++i) {
        const std::int32_t next = step[i][idx(alloc.S[i], budget - 1)];
        if (next != alloc.S[i]) --budget;
        alloc.S[i + 1] = next;
    }
    return finish(inst, std::move(alloc), total, cap, cells, start);
}

ValidationReport validate_grid_or_throw(const DiscreteInstance& grid, const char* who) {
    ValidationReport report = validate_discrete(grid);
    if (!report.pass)
        throw std::invalid_argument(std::string(who) + ": induced grid instance is invalid: " +
                                    report.violations.front().detail);
    return report;
}

// Smallest quality index the type keeps under its assigned refund (k when the
// refund exceeds the whole row, i.e. the type effectively keeps nothing).
std::vector<int> quality_thresholds(const OrderedItemInstance& inst,
                                    const DiscreteInstance& grid,
                                    const ThresholdAllocation& alloc) {
    std::vector<int> q(inst.m());
    for (int i = 0; i < inst.m(); ++i) {
        const Rat& refund = grid.values[alloc.S[i]];
        int s = 0;
        while (s < inst.k() && inst.value_table[i][s] < refund) ++s;
        q[i] = s;
    }
    return q;
}

OrderedSolveResult solve_ordered_impl(const OrderedItemInstance& inst, int cap) {
    ValidationReport report = validate_ordered(inst);
    if (!report.pass)
        throw std::invalid_argument("ordered instance invalid: " +
                                    report.violations.front().detail);
    OrderedSolveResult out;
    out.grid = to_discrete(inst);
    validate_grid_or_throw(out.grid, "solve_ordered");
    out.result = cap > 0 ? solve_grid_capped(out.grid, cap, /*prefer_large=*/true)
                         : solve_grid(out.grid, /*prefer_large=*/true);
    out.quality_thresholds = quality_thresholds(inst, out.grid, out.result.allocation);
    return out;
}

}  // namespace

SolveResult solve_general(const DiscreteInstance& inst) {
    return solve_grid(inst, /*prefer_large=*/false);
}

SolveResult solve_capped(const DiscreteInstance& inst, int max_menu_size) {
    return solve_grid_capped(inst, max_menu_size, /*prefer_large=*/false);
}

SolveResult solve_on_grid_lex_greatest(const DiscreteInstance& grid) {
    return solve_grid(grid, /*prefer_large=*/true);
}

OrderedSolveResult solve_ordered(const OrderedItemInstance& inst) {
    return solve_ordered_impl(inst, 0);
}

OrderedSolveResult solve_ordered_capped(const OrderedItemInstance& inst, int max_menu_size) {
    if (max_menu_size < 1) throw std::invalid_argument("menu size cap must be at least 1");
    return solve_ordered_impl(inst, max_menu_size);
}

UniformSolveResult solve_uniform(const UniformItemInstance& inst) {
    SortRowsResult sorted = sort_rows(inst);
    if (!sorted.report.pass)
        throw std::invalid_argument("uniform instance violates ordered types: " +
                                    sorted.report.violations.front().detail);
    UniformSolveResult out;
    out.ordered = solve_ordered_impl(sorted.ordered, 0);
    out.sigma = std::move(sorted.sigma);
    return out;
}

UniformSolveResult solve_uniform_capped(const UniformItemInstance& inst, int max_menu_size) {
    if (max_menu_size < 1) throw std::invalid_argument("menu size cap must be at least 1");
    SortRowsResult sorted = sort_rows(inst);
    if (!sorted.report.pass)
        throw std::invalid_argument("uniform instance violates ordered types: " +
                                    sorted.report.violations.front().detail);
    UniformSolveResult out;
    out.ordered = solve_ordered_impl(sorted.ordered, max_menu_size);
    out.sigma = std::move(sorted.sigma);
    return out;
}

}  // namespace refund
