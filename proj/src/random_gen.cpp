#include "refund/random_gen.hpp"

#include "refund/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace refund {

namespace {

void check_spec(const GridSpec& spec) {
    if (spec.value_denominator < 1 || spec.pmf_denominator < 1 || spec.numerator_range < 0)
        throw std::invalid_argument("grid spec requires positive denominators");
}

// n distinct integers from [1, range], ascending.
std::vector<long> distinct_numerators(SplitMix64& rng, int n, long range) {
    std::vector<long> picked;
    picked.reserve(n);
    while (static_cast<int>(picked.size()) < n) {
        long c = 1 + static_cast<long>(rng.below(std::uint64_t(range)));
        if (std::find(picked.begin(), picked.end(), c) == picked.end())
            picked.push_back(c);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

// A random pmf over n cells with denominator D: n-1 sorted cut points in
// [0, D] split the unit mass into n nonnegative parts summing to exactly 1.
std::vector<Rat> random_pmf(SplitMix64& rng, int n, long D) {
    std::vector<long> cuts;
    cuts.reserve(n + 1);
    cuts.push_back(0);
    for (int c = 0; c < n - 1; ++c)
        cuts.push_back(static_cast<long>(rng.below(std::uint64_t(D + 1))));
    cuts.push_back(D);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rat> pmf(n);
    for (int j = 0; j < n; ++j) pmf[j] = rat(cuts[j + 1] - cuts[j], D);
    return pmf;
}

}  // namespace

DiscreteInstance gen_random(std::uint64_t seed, int m, int n, const GridSpec& spec) {
    if (m < 1 || n < 1) throw std::invalid_argument("gen_random requires m, n >= 1");
    check_spec(spec);
    const long range = spec.numerator_range > 0 ? spec.numerator_range : 4L * n;
    if (range < n) throw std::invalid_argument("numerator range too small for n distinct values");

    SplitMix64 vals_rng = SplitMix64::stream(seed, 0);
    SplitMix64 pmf_rng = SplitMix64::stream(seed, 1);

    DiscreteInstance inst;
    inst.values.reserve(n);
    for (long num : distinct_numerators(vals_rng, n, range))
        inst.values.push_back(rat(num, spec.value_denominator));

    // Draw independent pmfs, then impose the dominance order: sorting each cdf
    // column descending across types keeps every row a valid cdf (column-wise
    // order statistics of nondecreasing rows are nondecreasing) and makes
    // higher rows dominate lower ones by construction.
    std::vector<std::vector<Rat>> cdfs(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i) {
        std::vector<Rat> pmf = random_pmf(pmf_rng, n, spec.pmf_denominator);
        Rat acc = 0;
        for (int j = 0; j < n; ++j) {
            acc += pmf[j];
            cdfs[i][j] = acc;
        }
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Rat> column(m);
        for (int i = 0; i < m; ++i) column[i] = cdfs[i][j];
        std::sort(column.begin(), column.end(), [](const Rat& a, const Rat& b) { return b < a; });
        for (int i = 0; i < m; ++i) cdfs[i][j] = column[i];
    }

    inst.pmf.assign(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i) {
        Rat prev = 0;
        for (int j = 0; j < n; ++j) {
            inst.pmf[i][j] = cdfs[i][j] - prev;
            prev = cdfs[i][j];
        }
    }
    return inst;
}

OrderedItemInstance gen_random_ordered(std::uint64_t seed, int m, int k, const GridSpec& spec) {
    if (m < 1 || k < 1) throw std::invalid_argument("gen_random_ordered requires m, k >= 1");
    check_spec(spec);

    SplitMix64 table_rng = SplitMix64::stream(seed, 2);
    SplitMix64 pmf_rng = SplitMix64::stream(seed, 3);

    OrderedItemInstance inst;
    inst.item_pmf = random_pmf(pmf_rng, k, spec.pmf_denominator);

    // Weakly increasing along both axes by construction: every cell is the max
    // of its upper/left neighbors plus a nonnegative increment. Any monotone
    // table decomposes this way, so nothing structural is lost.
    inst.value_table.assign(m, std::vector<Rat>(k));
    for (int i = 0; i < m; ++i) {
        for (int s = 0; s < k; ++s) {
            Rat base = 0;
            if (i > 0) base = inst.value_table[i - 1][s];
            if (s > 0) base = std::max(base, inst.value_table[i][s - 1]);
            long inc = static_cast<long>(table_rng.below(std::uint64_t(4)));
            if (i == 0 && s == 0) inc += 1;  // keep values positive
            inst.value_table[i][s] = base + rat(inc, spec.value_denominator);
        }
    }
    return inst;
}

UniformItemInstance gen_random_uniform(std::uint64_t seed, int m, int k, const GridSpec& spec) {
    OrderedItemInstance ordered = gen_random_ordered(seed, m, k, spec);
    SplitMix64 shuffle_rng = SplitMix64::stream(seed, 4);

    UniformItemInstance inst;
    inst.value_table = std::move(ordered.value_table);
    for (auto& row : inst.value_table) {
        for (int s = k - 1; s > 0; --s) {
            int t = static_cast<int>(shuffle_rng.below(std::uint64_t(s + 1)));
            std::swap(row[s], row[t]);
        }
    }
    return inst;
}

}  // namespace refund
