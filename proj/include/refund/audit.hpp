// Independent verification of menus and allocations: direct IC/IR checks,
// threshold monotonicity, the keep-value two-cycle condition, the virtual
// welfare identity, menu-size bounds, and an exhaustive brute-force oracle.
//
// Every failing check carries a witness object with the concrete violating
// tuple, so a reported failure can be reproduced by re-evaluating the cited
// quantities by hand.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "refund/instance.hpp"
#include "refund/mechanism.hpp"
#include "refund/virtual_values.hpp"

namespace refund {

struct AuditCheck {
    std::string name;
    bool pass = true;
    nlohmann::json witness;  // null unless the check failed
};

struct AuditReport {
    std::vector<AuditCheck> checks;

    bool all_pass() const {
        for (const AuditCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, nlohmann::json witness = nullptr) {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }
    void extend(AuditReport other) {
        for (AuditCheck& c : other.checks) checks.push_back(std::move(c));
    }
    nlohmann::json to_json() const;
};

// Thrown when an enumeration or table would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Weak incentive compatibility: each type's assigned option maximizes
// q_value(type, refund) - price over the menu. Emits a second check entry
// recording whether the assignment is also seller-preferred within the
// type's set of utility-maximizing options (largest price - refund * mass
// returned), the tie-break a revenue-optimal seller relies on.
AuditReport check_ic(const DiscreteInstance& inst, const RefundMenu& menu);

// Individual rationality: every assigned option yields non-negative utility.
AuditReport check_ir(const DiscreteInstance& inst, const RefundMenu& menu);

// Thresholds weakly decreasing across types (the allocation-feasibility
// shape every implementable deterministic policy must have).
AuditReport check_monotonicity(const ThresholdAllocation& alloc);

// Two-cycle condition on keep values: for all type pairs t < t',
// Q(t,t) + Q(t',t') >= Q(t,t') + Q(t',t) with Q(t,t') the keep value of
// type t under the refund assigned to t'.
AuditReport check_q_condition(const DiscreteInstance& inst, const ThresholdAllocation& alloc);

struct BruteForceResult {
    ThresholdAllocation allocation;  // lexicographically smallest argmax
    Rat revenue;
    long long evaluated = 0;  // threshold vectors scored
};

// Exhaustive oracle: enumerates every weakly decreasing threshold vector
// (restricted to at most `cap` distinct values when cap > 0), scores each
// through the payment identities, and returns the exact maximum. Throws
// BudgetExceeded when the enumeration would exceed `budget` vectors.
// threads > 1 shards the search by the first type's threshold.
BruteForceResult brute_force(const DiscreteInstance& inst, int cap = 0,
                             long long budget = 10'000'000, int threads = 1);

// Virtual welfare equals payment-identity revenue on every monotone
// allocation (all of them when there are at most `exhaustive_limit`,
// otherwise on `samples` seeded random ones).
AuditReport check_virtual_identity(const DiscreteInstance& inst,
                                   long long exhaustive_limit = 10'000, int samples = 1'000);

// Same identity evaluated against a caller-supplied virtual table instead of
// a freshly computed one; lets tests run corrupted tables as negative
// controls through the production code path.
AuditReport check_virtual_identity(const DiscreteInstance& inst, const VirtualTable& table,
                                   long long exhaustive_limit = 10'000, int samples = 1'000);

// Number of distinct (price, refund) options is at most `bound`.
AuditReport check_menu_size(const RefundMenu& menu, int bound);

}  // namespace refund
