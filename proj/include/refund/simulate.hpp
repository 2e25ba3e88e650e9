// Monte Carlo simulation of buyer behavior against a refund menu.
//
// Each trial draws a type uniformly, lets the buyer pick the option that
// maximizes her exact rational utility (ties resolved in the seller's favor,
// opting out when every option has negative utility), draws her value from
// the type's pmf, returns the item when the value is strictly below the
// refund, and records the seller's net take. Trial t consumes its own
// PRNG stream, stream(seed, t) of the shared 64-bit generator, so results
// are reproducible and independent of execution order or thread count.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "refund/instance.hpp"
#include "refund/mechanism.hpp"

namespace refund {

struct SimResult {
    long long trials = 0;
    double empirical_revenue = 0.0;
    double std_error = 0.0;                     // sample std dev / sqrt(trials)
    std::vector<double> per_option_take_rates;  // fraction of trials taking each option
    double opt_out_rate = 0.0;                  // completes the unit sum with the above
    std::vector<double> return_rates;           // per option: returns among its takers

    nlohmann::json to_json() const;
};

// Runs `trials` independent trials. Refuses menus that fail the weak
// incentive-compatibility audit unless `force` is set (the sampler computes
// buyer best responses itself, so a non-IC assignment would silently be
// overridden; forcing makes that explicit). Throws std::invalid_argument on
// zero trials or a malformed menu.
SimResult simulate(const DiscreteInstance& inst, const RefundMenu& menu, long long trials,
                   std::uint64_t seed, bool force = false, int threads = 1);

}  // namespace refund
