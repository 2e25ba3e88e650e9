#include "refund/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "refund/audit.hpp"
#include "refund/rng.hpp"

namespace refund {

using nlohmann::json;

namespace {

// Exact sampler for one type's value distribution: weights are the pmf
// entries scaled to a common denominator, so a single integer draw in
// [0, denom) maps to a value index without any rounding.
struct RowSampler {
    mpz_class denom;
    std::vector<mpz_class> cumulative;  // strictly increasing, back() == denom

    explicit RowSampler(const std::vector<Rat>& pmf) {
        denom = 1;
        for (const Rat& p : pmf) {
            mpz_class d = p.get_den();
            denom = denom / gcd(denom, d) * d;
        }
        mpz_class acc = 0;
        cumulative.reserve(pmf.size());
        for (const Rat& p : pmf) {
            acc += p.get_num() * (denom / p.get_den());
            cumulative.push_back(acc);
        }
    }

    int draw(SplitMix64& rng) const {
        const mpz_class r = rng.below(denom);
        int lo = 0, hi = static_cast<int>(cumulative.size()) - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (r < cumulative[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }
};

// Per-option trial counts; outcomes are reconstructed exactly from these,
// which makes merged statistics independent of trial execution order.
struct Counts {
    std::vector<long long> kept, returned;
    long long opted_out = 0;

    explicit Counts(std::size_t options) : kept(options, 0), returned(options, 0) {}
    void merge(const Counts& other) {
        for (std::size_t o = 0; o < kept.size(); ++o) {
            kept[o] += other.kept[o];
            returned[o] += other.returned[o];
        }
        opted_out += other.opted_out;
    }
};

std::string decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

json SimResult::to_json() const {
    json doc;
    doc["trials"] = trials;
    doc["empirical_revenue"] = decimal(empirical_revenue);
    doc["std_error"] = decimal(std_error);
    doc["per_option_take_rates"] = json::array();
    for (double r : per_option_take_rates) doc["per_option_take_rates"].push_back(decimal(r));
    doc["opt_out_rate"] = decimal(opt_out_rate);
    doc["return_rates"] = json::array();
    for (double r : return_rates) doc["return_rates"].push_back(decimal(r));
    return doc;
}

SimResult simulate(const DiscreteInstance& inst, const RefundMenu& menu, long long trials,
                   std::uint64_t seed, bool force, int threads) {
    if (trials <= 0) throw std::invalid_argument("trials must be positive");
    if (menu.options.empty()) throw std::invalid_argument("menu has no options");
    if (!force) {
        const AuditReport ic = check_ic(inst, menu);
        for (const AuditCheck& c : ic.checks)
            if (c.name == "ic" && !c.pass)
                throw std::invalid_argument(
                    "menu is not incentive-compatible; pass force to simulate anyway");
    }

    const int m = inst.m();
    const int count = static_cast<int>(menu.options.size());

    // Buyer best response per type, fixed across trials: maximize exact
    // utility, break ties toward the option the seller nets the most from,
    // then toward the lowest index; opt out when the best utility is < 0.
    std::vector<int> choice(m, -1);
    for (int i = 0; i < m; ++i) {
        int best = -1;
        Rat best_u, best_net;
        for (int o = 0; o < count; ++o) {
            const Rat u = q_value(inst, i, menu.options[o].refund) - menu.options[o].price;
            const Rat net =
                menu.options[o].price -
                menu.options[o].refund * cdf_strict(inst, i, menu.options[o].refund);
            if (best < 0 || u > best_u || (u == best_u && net > best_net)) {
                best = o;
                best_u = u;
                best_net = net;
            }
        }
        if (best_u >= 0) choice[i] = best;
    }

    std::vector<RowSampler> samplers;
    samplers.reserve(m);
    for (int i = 0; i < m; ++i) samplers.emplace_back(inst.pmf[i]);

    auto run_range = [&](long long lo, long long step, Counts& counts) {
        for (long long t = lo; t < trials; t += step) {
            SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(t));
            const int type = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            const int o = choice[type];
            if (o < 0) {
                ++counts.opted_out;
                continue;
            }
            const int v = samplers[type].draw(rng);
            if (inst.values[v] < menu.options[o].refund)
                ++counts.returned[o];
            else
                ++counts.kept[o];
        }
    };

    Counts counts(menu.options.size());
    const int workers =
        static_cast<int>(std::min<long long>(std::max(threads, 1), trials));
    if (workers == 1) {
        run_range(0, 1, counts);
    } else {
        std::vector<Counts> shard(workers, Counts(menu.options.size()));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { run_range(w, workers, shard[w]); });
        for (std::thread& th : pool) th.join();
        for (const Counts& c : shard) counts.merge(c);
    }

    // Exact mean and sample variance over the (few) distinct outcomes, then
    // one rounding at the end.
    const Rat N(static_cast<long>(trials));
    Rat sum = 0;
    for (int o = 0; o < count; ++o) {
        sum += Rat(static_cast<long>(counts.kept[o])) * menu.options[o].price;
        sum += Rat(static_cast<long>(counts.returned[o])) *
               (menu.options[o].price - menu.options[o].refund);
    }
    const Rat mean = sum / N;
    Rat ssq = Rat(static_cast<long>(counts.opted_out)) * mean * mean;
    for (int o = 0; o < count; ++o) {
        const Rat dk = menu.options[o].price - mean;
        const Rat dr = menu.options[o].price - menu.options[o].refund - mean;
        ssq += Rat(static_cast<long>(counts.kept[o])) * dk * dk;
        ssq += Rat(static_cast<long>(counts.returned[o])) * dr * dr;
    }

    SimResult res;
    res.trials = trials;
    res.empirical_revenue = rat_to_double(mean);
    if (trials > 1) {
        const Rat var = ssq / (N - 1);
        res.std_error = std::sqrt(rat_to_double(var) / static_cast<double>(trials));
    }
    res.per_option_take_rates.resize(count);
    res.return_rates.resize(count);
    for (int o = 0; o < count; ++o) {
        const long long taken = counts.kept[o] + counts.returned[o];
        res.per_option_take_rates[o] = static_cast<double>(taken) / static_cast<double>(trials);
        res.return_rates[o] =
            taken == 0 ? 0.0 : static_cast<double>(counts.returned[o]) / static_cast<double>(taken);
    }
    res.opt_out_rate = static_cast<double>(counts.opted_out) / static_cast<double>(trials);
    return res;
}

}  // namespace refund
