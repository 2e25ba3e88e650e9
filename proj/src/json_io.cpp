#include "refund/json_io.hpp"

#include <stdexcept>

namespace refund {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

const json& require(const json& doc, const char* key, const std::string& where) {
    if (!doc.is_object() || !doc.contains(key))
        fail(where + ": missing required field \"" + key + "\"");
    return doc.at(key);
}

std::vector<Rat> rat_array(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where + ": expected a non-empty array");
    std::vector<Rat> out;
    out.reserve(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out.push_back(rat_from_json(v[j], where + " entry " + std::to_string(j)));
    return out;
}

std::vector<std::vector<Rat>> rat_matrix(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where + ": expected a non-empty array of rows");
    std::vector<std::vector<Rat>> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(rat_array(v[i], where + " row " + std::to_string(i)));
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].size() != out[0].size())
            fail(where + " row " + std::to_string(i) + ": has " +
                 std::to_string(out[i].size()) + " entries, row 0 has " +
                 std::to_string(out[0].size()));
    return out;
}

json rat_array_json(const std::vector<Rat>& xs) {
    json out = json::array();
    for (const Rat& x : xs) out.push_back(rat_json(x));
    return out;
}

json rat_matrix_json(const std::vector<std::vector<Rat>>& rows) {
    json out = json::array();
    for (const auto& row : rows) out.push_back(rat_array_json(row));
    return out;
}

void check_ascending_values(const std::vector<Rat>& values) {
    for (std::size_t j = 1; j < values.size(); ++j)
        if (!(values[j - 1] < values[j]))
            fail("values entry " + std::to_string(j) + ": grid must be strictly ascending (" +
                 rat_to_string(values[j - 1]) + " then " + rat_to_string(values[j]) + ")");
}

}  // namespace

json rat_json(const Rat& q) { return json(rat_to_string(q)); }

Rat rat_from_json(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return rat_from_string(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number_unsigned()) return Rat(static_cast<unsigned long>(v.get<std::uint64_t>()));
    if (v.is_number_float())
        fail(where + ": floating-point numbers are not accepted; write the exact "
                     "rational as a string like \"1/3\"");
    fail(where + ": expected a rational string \"a/b\" or an integer");
}

AnyInstance parse_instance(const std::string& text) {
    const json doc = parse_text(text);
    if (!doc.is_object()) fail("instance document: expected a JSON object");
    const json& kind = require(doc, "kind", "instance document");
    if (!kind.is_string()) fail("kind: expected a string");
    const std::string k = kind.get<std::string>();

    if (k == "discrete") {
        DiscreteInstance inst;
        inst.values = rat_array(require(doc, "values", "discrete instance"), "values");
        check_ascending_values(inst.values);
        inst.pmf = rat_matrix(require(doc, "pmf", "discrete instance"), "pmf");
        if (inst.pmf[0].size() != inst.values.size())
            fail("pmf row 0: has " + std::to_string(inst.pmf[0].size()) +
                 " entries but values has " + std::to_string(inst.values.size()));
        return inst;
    }
    if (k == "ordered_items") {
        OrderedItemInstance inst;
        inst.item_pmf = rat_array(require(doc, "item_pmf", "ordered instance"), "item_pmf");
        inst.value_table =
            rat_matrix(require(doc, "value_table", "ordered instance"), "value_table");
        if (inst.value_table[0].size() != inst.item_pmf.size())
            fail("value_table row 0: has " + std::to_string(inst.value_table[0].size()) +
                 " entries but item_pmf has " + std::to_string(inst.item_pmf.size()));
        return inst;
    }
    if (k == "uniform_items") {
        UniformItemInstance inst;
        inst.value_table =
            rat_matrix(require(doc, "value_table", "uniform instance"), "value_table");
        return inst;
    }
    fail("kind: unknown instance kind \"" + k +
         "\" (expected discrete, ordered_items, or uniform_items)");
}

json instance_json(const DiscreteInstance& inst) {
    json doc;
    doc["kind"] = "discrete";
    doc["values"] = rat_array_json(inst.values);
    doc["pmf"] = rat_matrix_json(inst.pmf);
    return doc;
}

json instance_json(const OrderedItemInstance& inst) {
    json doc;
    doc["kind"] = "ordered_items";
    doc["item_pmf"] = rat_array_json(inst.item_pmf);
    doc["value_table"] = rat_matrix_json(inst.value_table);
    return doc;
}

json instance_json(const UniformItemInstance& inst) {
    json doc;
    doc["kind"] = "uniform_items";
    doc["value_table"] = rat_matrix_json(inst.value_table);
    return doc;
}

json instance_json(const AnyInstance& inst) {
    return std::visit([](const auto& v) { return instance_json(v); }, inst);
}

std::string emit_instance(const AnyInstance& inst) { return instance_json(inst).dump(2) + "\n"; }

ParsedMenu parse_menu(const std::string& text) {
    const json outer = parse_text(text);
    if (!outer.is_object()) fail("menu document: expected a JSON object");
    // A solver-result document nests the menu one level down and carries the
    // threshold allocation alongside it.
    const json& doc = outer.contains("menu") ? outer.at("menu") : outer;

    ParsedMenu out;
    if (outer.contains("allocation")) {
        const json& alloc = outer.at("allocation");
        if (!alloc.is_array()) fail("allocation: expected an array of value indices");
        for (std::size_t i = 0; i < alloc.size(); ++i) {
            if (!alloc[i].is_number_integer() && !alloc[i].is_number_unsigned())
                fail("allocation entry " + std::to_string(i) + ": expected an integer");
            out.allocation.push_back(alloc[i].get<int>());
        }
    }
    const json& options = require(doc, "options", "menu document");
    if (!options.is_array() || options.empty())
        fail("options: expected a non-empty array of menu options");
    for (std::size_t o = 0; o < options.size(); ++o) {
        const std::string where = "options entry " + std::to_string(o);
        MenuOption opt;
        opt.price = rat_from_json(require(options[o], "price", where), where + " price");
        opt.refund = rat_from_json(require(options[o], "refund", where), where + " refund");
        out.menu.options.push_back(std::move(opt));
    }
    const json& assignment = require(doc, "assignment", "menu document");
    if (!assignment.is_array() || assignment.empty())
        fail("assignment: expected a non-empty array of option indices");
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const json& a = assignment[i];
        if (!a.is_number_integer() && !a.is_number_unsigned())
            fail("assignment entry " + std::to_string(i) + ": expected an integer");
        const long long v = a.get<long long>();
        if (v < 0 || v >= static_cast<long long>(out.menu.options.size()))
            fail("assignment entry " + std::to_string(i) + ": option index " +
                 std::to_string(v) + " out of range for " +
                 std::to_string(out.menu.options.size()) + " options");
        out.menu.assignment.push_back(static_cast<int>(v));
    }
    if (doc.contains("revenue")) {
        out.revenue = rat_from_json(doc.at("revenue"), "revenue");
        out.has_revenue = true;
    }
    return out;
}

json menu_json(const RefundMenu& menu, const Rat& revenue) {
    json doc;
    doc["options"] = json::array();
    for (const MenuOption& opt : menu.options)
        doc["options"].push_back({{"price", rat_json(opt.price)}, {"refund", rat_json(opt.refund)}});
    doc["assignment"] = menu.assignment;
    doc["revenue"] = rat_json(revenue);
    return doc;
}

json solve_result_json(const SolveResult& res) {
    json doc;
    doc["menu"] = menu_json(res.menu, res.revenue);
    doc["allocation"] = res.allocation.S;
    doc["revenue"] = rat_json(res.revenue);
    doc["stats"] = {{"m", res.stats.m},
                    {"n", res.stats.n},
                    {"cap", res.stats.cap},
                    {"table_cells", res.stats.table_cells},
                    {"seconds", res.stats.seconds}};
    return doc;
}

json solve_result_json(const OrderedSolveResult& res) {
    json doc = solve_result_json(res.result);
    doc["grid_values"] = rat_array_json(res.grid.values);
    doc["quality_thresholds"] = res.quality_thresholds;
    return doc;
}

json solve_result_json(const UniformSolveResult& res) {
    json doc = solve_result_json(res.ordered);
    doc["sigma"] = res.sigma;
    return doc;
}

}  // namespace refund
