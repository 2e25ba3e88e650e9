#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "refund/instance.hpp"
#include "refund/random_gen.hpp"
#include "refund/rng.hpp"

using namespace refund;
using fixtures::instance_a;
using fixtures::instance_b;

namespace {

bool has_violation(const ValidationReport& r, const std::string& constraint) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const Violation& v) { return v.constraint == constraint; });
}

}  // namespace

TEST_CASE("worked instances validate") {
    CHECK(validate_discrete(instance_a()).pass);
    CHECK(validate_discrete(instance_b()).pass);
}

TEST_CASE("validation pinpoints each violated constraint") {
    SUBCASE("negative pmf entry") {
        DiscreteInstance d = instance_a();
        d.pmf[1][0] = rat(-1, 4);
        d.pmf[1][1] = rat(5, 4);
        const ValidationReport r = validate_discrete(d);
        CHECK_FALSE(r.pass);
        CHECK(has_violation(r, "pmf-nonneg"));
        const Violation& v = r.violations.front();
        CHECK(v.row == 1);
        CHECK(v.col == 0);
    }
    SUBCASE("row does not sum to one") {
        DiscreteInstance d = instance_a();
        d.pmf[0][1] = rat(1, 3);
        const ValidationReport r = validate_discrete(d);
        CHECK_FALSE(r.pass);
        CHECK(has_violation(r, "row-sum"));
    }
    SUBCASE("values out of order") {
        DiscreteInstance d = instance_a();
        std::swap(d.values[0], d.values[1]);
        CHECK(has_violation(validate_discrete(d), "value-ordering"));
    }
    SUBCASE("duplicate value") {
        DiscreteInstance d = instance_a();
        d.values[1] = d.values[0];
        CHECK(has_violation(validate_discrete(d), "value-ordering"));
    }
    SUBCASE("dominance ordering broken by swapping type rows") {
        DiscreteInstance d = instance_a();
        std::swap(d.pmf[0], d.pmf[1]);  // higher type first
        const ValidationReport r = validate_discrete(d);
        CHECK_FALSE(r.pass);
        CHECK(has_violation(r, "fosd"));
    }
    SUBCASE("ragged pmf matrix") {
        DiscreteInstance d = instance_a();
        d.pmf[1].pop_back();
        CHECK(has_violation(validate_discrete(d), "shape"));
    }
}

TEST_CASE("cdf and strict cdf at and between grid points") {
    const DiscreteInstance a = instance_a();
    const DiscreteInstance b = instance_b();
    CHECK(cdf(a, 0, rat(1)) == rat(1, 2));
    CHECK(cdf_strict(a, 0, rat(1)) == 0);
    CHECK(cdf(a, 1, rat(3, 2)) == rat(1, 4));
    CHECK(cdf_strict(b, 0, rat(10)) == rat(9, 10));
    CHECK(cdf(b, 0, rat(10)) == 1);
    CHECK(cdf(a, 0, rat(1, 2)) == 0);
    CHECK(cdf(a, 0, rat(100)) == 1);
    CHECK_THROWS_AS(cdf(a, 2, rat(1)), std::out_of_range);
    CHECK_THROWS_AS(cdf_strict(a, -1, rat(1)), std::out_of_range);
}

TEST_CASE("ordered table reduces to the union value grid") {
    OrderedItemInstance o;
    o.item_pmf = {rat(1, 2), rat(1, 2)};
    o.value_table = {{rat(1), rat(2)}, {rat(2), rat(4)}};
    const DiscreteInstance d = to_discrete(o);
    REQUIRE(d.values == std::vector<Rat>{rat(1), rat(2), rat(4)});
    CHECK(d.pmf[0] == std::vector<Rat>{rat(1, 2), rat(1, 2), rat(0)});
    CHECK(d.pmf[1] == std::vector<Rat>{rat(0), rat(1, 2), rat(1, 2)});
    CHECK(validate_discrete(d).pass);
}

TEST_CASE("duplicate cell values aggregate their item mass") {
    OrderedItemInstance o;
    o.item_pmf = {rat(1, 4), rat(1, 4), rat(1, 2)};
    o.value_table = {{rat(3), rat(3), rat(5)}};
    const DiscreteInstance d = to_discrete(o);
    REQUIRE(d.values == std::vector<Rat>{rat(3), rat(5)});
    CHECK(d.pmf[0] == std::vector<Rat>{rat(1, 2), rat(1, 2)});
}

TEST_CASE("sort_rows recovers an ordered table from shuffled rows") {
    UniformItemInstance u;
    u.value_table = {{rat(12), rat(0)}, {rat(4), rat(16)}, {rat(17), rat(13)}};
    const SortRowsResult s = sort_rows(u);
    REQUIRE(s.report.pass);
    CHECK(s.ordered.value_table ==
          std::vector<std::vector<Rat>>{{rat(0), rat(12)}, {rat(4), rat(16)}, {rat(13), rat(17)}});
    CHECK(s.ordered.item_pmf == std::vector<Rat>{rat(1, 2), rat(1, 2)});
    // sigma maps sorted position -> original column
    CHECK(s.sigma[0] == std::vector<int>{1, 0});
    CHECK(s.sigma[1] == std::vector<int>{0, 1});
    CHECK(s.sigma[2] == std::vector<int>{1, 0});
}

TEST_CASE("sort_rows flags tables no permutation can order") {
    UniformItemInstance u;
    u.value_table = {{rat(5), rat(1)}, {rat(10), rat(0)}};
    const SortRowsResult s = sort_rows(u);
    CHECK_FALSE(s.report.pass);
    CHECK(has_violation(s.report, "ordered-types"));
}

TEST_CASE("generated discrete instances always validate") {
    SplitMix64 sizes = SplitMix64::stream(99, 0);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int m = 1 + static_cast<int>(sizes.below(8));
        const int n = 1 + static_cast<int>(sizes.below(8));
        const DiscreteInstance d = gen_random(seed, m, n);
        CAPTURE(seed);
        CAPTURE(m);
        CAPTURE(n);
        REQUIRE(validate_discrete(d).pass);
        CHECK(d.m() == m);
        CHECK(d.n() == n);
    }
}

TEST_CASE("generated item instances respect their orderings") {
    SplitMix64 sizes = SplitMix64::stream(77, 0);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const int m = 1 + static_cast<int>(sizes.below(6));
        const int k = 1 + static_cast<int>(sizes.below(5));
        CAPTURE(seed);
        REQUIRE(validate_ordered(gen_random_ordered(seed, m, k)).pass);
        const UniformItemInstance u = gen_random_uniform(seed, m, k);
        REQUIRE(sort_rows(u).report.pass);
    }
}

TEST_CASE("generation is a pure function of the seed") {
    const DiscreteInstance d1 = gen_random(7, 4, 4);
    const DiscreteInstance d2 = gen_random(7, 4, 4);
    CHECK(d1.values == d2.values);
    CHECK(d1.pmf == d2.pmf);
    const DiscreteInstance d3 = gen_random(8, 4, 4);
    CHECK(d1.pmf != d3.pmf);
}
