// JSON serialization for instances, menus, and solver results.
//
// All model quantities (values, probabilities, prices, refunds, revenue)
// travel as exact rational strings "a/b" or "a"; bare JSON integers are
// accepted on input as a convenience, floating-point numbers are rejected.
// Parse errors throw std::invalid_argument with a positional message.
#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "refund/instance.hpp"
#include "refund/mechanism.hpp"
#include "refund/solver.hpp"

namespace refund {

using AnyInstance = std::variant<DiscreteInstance, OrderedItemInstance, UniformItemInstance>;

// Rational <-> JSON value ("where" names the field in error messages).
nlohmann::json rat_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& v, const std::string& where);

AnyInstance parse_instance(const std::string& text);

nlohmann::json instance_json(const DiscreteInstance& inst);
nlohmann::json instance_json(const OrderedItemInstance& inst);
nlohmann::json instance_json(const UniformItemInstance& inst);
nlohmann::json instance_json(const AnyInstance& inst);
std::string emit_instance(const AnyInstance& inst);

// Menu documents. parse_menu also accepts a full solver-result document and
// reads its embedded menu, so audits can consume either artifact directly.
struct ParsedMenu {
    RefundMenu menu;
    bool has_revenue = false;
    Rat revenue;
    std::vector<int> allocation;  // thresholds from a solver result, empty otherwise
};
ParsedMenu parse_menu(const std::string& text);
nlohmann::json menu_json(const RefundMenu& menu, const Rat& revenue);

nlohmann::json solve_result_json(const SolveResult& res);
nlohmann::json solve_result_json(const OrderedSolveResult& res);
nlohmann::json solve_result_json(const UniformSolveResult& res);

}  // namespace refund
