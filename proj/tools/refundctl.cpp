// refundctl: command-line driver for the refund-mechanism toolkit.
//
// Subcommands: gen | solve | audit | oracle | simulate | bench.
// Machine-readable output (JSON or CSV) goes to stdout or --out; progress
// and summaries go to stderr. Exit codes: 0 success / all checks pass,
// 1 check failure, 2 usage or IO error, 3 enumeration or table budget
// exceeded.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "refund/audit.hpp"
#include "refund/instance.hpp"
#include "refund/json_io.hpp"
#include "refund/random_gen.hpp"
#include "refund/simulate.hpp"
#include "refund/solver.hpp"

namespace {

using refund::AnyInstance;
using refund::AuditReport;
using refund::DiscreteInstance;
using refund::OrderedItemInstance;
using refund::Rat;
using refund::UniformItemInstance;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

bool g_quiet = false;  // --json: suppress stderr prose

void note(const std::string& line) {
    if (!g_quiet) std::cerr << line << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + out_path + " for writing");
    out << text;
    if (!out) throw std::invalid_argument("failed writing " + out_path);
}

void write_json(const std::string& out_path, const nlohmann::json& doc) {
    write_output(out_path, doc.dump(2) + "\n");
}

// Report validation violations on stderr and signal a usage error.
void require_valid(const refund::ValidationReport& report, const std::string& what) {
    if (report.pass) return;
    for (const refund::Violation& v : report.violations) {
        std::ostringstream line;
        line << what << ": " << v.constraint;
        if (v.row >= 0) line << " at row " << v.row;
        if (v.col >= 0) line << " col " << v.col;
        line << ": " << v.detail;
        std::cerr << line.str() << "\n";
    }
    throw std::invalid_argument(what + " failed validation");
}

AnyInstance load_instance(const std::string& path) {
    AnyInstance inst = refund::parse_instance(read_file(path));
    if (const auto* d = std::get_if<DiscreteInstance>(&inst))
        require_valid(refund::validate_discrete(*d), path);
    else if (const auto* o = std::get_if<OrderedItemInstance>(&inst))
        require_valid(refund::validate_ordered(*o), path);
    // Uniform instances are validated by sort_rows when first reduced.
    return inst;
}

// Audits, oracle runs, and simulations operate on the discrete value grid a
// menu prices against; item-type instances reduce to their union grid.
struct GridView {
    DiscreteInstance grid;
    int menu_bound;  // n for native discrete, k+1 for item types
};

GridView to_grid(const AnyInstance& inst) {
    if (const auto* d = std::get_if<DiscreteInstance>(&inst)) return {*d, d->n()};
    if (const auto* o = std::get_if<OrderedItemInstance>(&inst))
        return {refund::to_discrete(*o), o->k() + 1};
    const auto& u = std::get<UniformItemInstance>(inst);
    refund::SortRowsResult sorted = refund::sort_rows(u);
    require_valid(sorted.report, "uniform instance");
    return {refund::to_discrete(sorted.ordered), u.k() + 1};
}

nlohmann::json virtual_table_json(const DiscreteInstance& grid) {
    const refund::VirtualTable vt = refund::weighted_virtual(grid);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : vt.w) {
        nlohmann::json r = nlohmann::json::array();
        for (const Rat& x : row) r.push_back(refund::rat_to_string(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

struct GenArgs {
    std::string kind = "discrete";
    int m = 0, n = 0, k = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& a) {
    AnyInstance inst;
    if (a.kind == "discrete") {
        if (a.n <= 0) throw std::invalid_argument("gen discrete requires -n > 0");
        DiscreteInstance d = refund::gen_random(a.seed, a.m, a.n);
        require_valid(refund::validate_discrete(d), "generated instance");
        inst = std::move(d);
    } else if (a.kind == "ordered" || a.kind == "ordered_items") {
        if (a.k <= 0) throw std::invalid_argument("gen ordered requires -k > 0");
        OrderedItemInstance o = refund::gen_random_ordered(a.seed, a.m, a.k);
        require_valid(refund::validate_ordered(o), "generated instance");
        inst = std::move(o);
    } else if (a.kind == "uniform" || a.kind == "uniform_items") {
        if (a.k <= 0) throw std::invalid_argument("gen uniform requires -k > 0");
        inst = refund::gen_random_uniform(a.seed, a.m, a.k);
    } else {
        throw std::invalid_argument("unknown kind '" + a.kind +
                                    "' (expected discrete, ordered, or uniform)");
    }
    write_output(a.out, refund::emit_instance(inst));
    note("wrote " + a.kind + " instance (seed " + std::to_string(a.seed) + ")" +
         (a.out.empty() ? "" : " to " + a.out));
    return kExitOk;
}

struct SolveArgs {
    std::string instance_path;
    int cap = 0;
    bool emit_virtual = false;
    std::string out;
};

int run_solve(const SolveArgs& a) {
    const AnyInstance inst = load_instance(a.instance_path);
    nlohmann::json doc;
    Rat rev;
    std::size_t options = 0;
    double seconds = 0.0;

    if (const auto* d = std::get_if<DiscreteInstance>(&inst)) {
        refund::SolveResult res =
            a.cap > 0 ? refund::solve_capped(*d, a.cap) : refund::solve_general(*d);
        rev = res.revenue;
        options = res.menu.options.size();
        seconds = res.stats.seconds;
        doc = refund::solve_result_json(res);
        if (a.emit_virtual) doc["virtual_table"] = virtual_table_json(*d);
    } else if (const auto* o = std::get_if<OrderedItemInstance>(&inst)) {
        refund::OrderedSolveResult res =
            a.cap > 0 ? refund::solve_ordered_capped(*o, a.cap) : refund::solve_ordered(*o);
        rev = res.result.revenue;
        options = res.result.menu.options.size();
        seconds = res.result.stats.seconds;
        doc = refund::solve_result_json(res);
        if (a.emit_virtual) doc["virtual_table"] = virtual_table_json(res.grid);
    } else {
        const auto& u = std::get<UniformItemInstance>(inst);
        refund::UniformSolveResult res =
            a.cap > 0 ? refund::solve_uniform_capped(u, a.cap) : refund::solve_uniform(u);
        rev = res.ordered.result.revenue;
        options = res.ordered.result.menu.options.size();
        seconds = res.ordered.result.stats.seconds;
        doc = refund::solve_result_json(res);
        if (a.emit_virtual) doc["virtual_table"] = virtual_table_json(res.ordered.grid);
    }

    write_json(a.out, doc);
    std::ostringstream line;
    line << "revenue " << refund::rat_to_string(rev) << " with " << options << " menu option"
         << (options == 1 ? "" : "s");
    if (a.cap > 0) line << " (cap " << a.cap << ")";
    char timing[32];
    std::snprintf(timing, sizeof timing, " in %.4fs", seconds);
    line << timing;
    note(line.str());
    return kExitOk;
}

struct AuditArgs {
    std::string instance_path, menu_path;
    std::string out;
};

int run_audit(const AuditArgs& a) {
    const GridView view = to_grid(load_instance(a.instance_path));
    const refund::ParsedMenu pm = refund::parse_menu(read_file(a.menu_path));

    AuditReport report;
    report.extend(refund::check_ic(view.grid, pm.menu));
    report.extend(refund::check_ir(view.grid, pm.menu));
    report.extend(refund::check_menu_size(pm.menu, view.menu_bound));
    if (!pm.allocation.empty()) {
        refund::ThresholdAllocation alloc;
        alloc.S = pm.allocation;
        report.extend(refund::check_monotonicity(alloc));
        report.extend(refund::check_q_condition(view.grid, alloc));
        report.extend(refund::check_virtual_identity(view.grid));
    }

    write_json(a.out, report.to_json());
    int failed = 0;
    for (const refund::AuditCheck& c : report.checks) {
        note(c.name + ": " + (c.pass ? "pass" : "FAIL"));
        if (!c.pass) ++failed;
    }
    note(failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed");
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

struct OracleArgs {
    std::string instance_path, menu_path;
    int cap = 0;
    long long budget = 10'000'000;
    int threads = 1;
    std::string out;
};

int run_oracle(const OracleArgs& a) {
    const GridView view = to_grid(load_instance(a.instance_path));
    const refund::BruteForceResult bf =
        refund::brute_force(view.grid, a.cap, a.budget, a.threads);

    nlohmann::json doc;
    doc["allocation"] = bf.allocation.S;
    doc["revenue"] = refund::rat_to_string(bf.revenue);
    doc["evaluated"] = bf.evaluated;
    note("brute force revenue " + refund::rat_to_string(bf.revenue) + " over " +
         std::to_string(bf.evaluated) + " threshold vectors");

    bool match = true;
    if (!a.menu_path.empty()) {
        const refund::ParsedMenu pm = refund::parse_menu(read_file(a.menu_path));
        const Rat provided = refund::menu_revenue(view.grid, pm.menu);
        match = provided == bf.revenue;
        doc["provided_revenue"] = refund::rat_to_string(provided);
        doc["match"] = match;
        note("provided menu revenue " + refund::rat_to_string(provided) +
             (match ? " (match)" : " (MISMATCH)"));
    }
    write_json(a.out, doc);
    return match ? kExitOk : kExitCheckFailed;
}

struct SimArgs {
    std::string instance_path, menu_path;
    long long trials = 100'000;
    std::uint64_t seed = 0;
    bool force = false;
    int threads = 1;
    std::string out;
};

int run_simulate(const SimArgs& a) {
    const GridView view = to_grid(load_instance(a.instance_path));
    const refund::ParsedMenu pm = refund::parse_menu(read_file(a.menu_path));

    if (!a.force) {
        const AuditReport ic = refund::check_ic(view.grid, pm.menu);
        for (const refund::AuditCheck& c : ic.checks) {
            if (c.name == "ic" && !c.pass) {
                write_json(a.out, ic.to_json());
                note("menu is not incentive-compatible; rerun with --force to simulate anyway");
                return kExitCheckFailed;
            }
        }
    }

    const refund::SimResult res =
        refund::simulate(view.grid, pm.menu, a.trials, a.seed, /*force=*/true, a.threads);
    write_json(a.out, res.to_json());
    char line[128];
    std::snprintf(line, sizeof line, "empirical revenue %.6g (std error %.3g) over %lld trials",
                  res.empirical_revenue, res.std_error, res.trials);
    note(line);
    return kExitOk;
}

struct BenchArgs {
    std::vector<int> ms, ns;
    int seeds = 5;
    std::string out;
};

int run_bench(const BenchArgs& a) {
    std::ostringstream csv;
    csv << "m,n,seconds\n";
    int rows = 0;
    for (int m : a.ms) {
        for (int n : a.ns) {
            for (int s = 1; s <= a.seeds; ++s) {
                // Generation happens outside the timed region; the solver
                // reports its own wall time.
                const DiscreteInstance inst =
                    refund::gen_random(static_cast<std::uint64_t>(s), m, n);
                const refund::SolveResult res = refund::solve_general(inst);
                char line[64];
                std::snprintf(line, sizeof line, "%d,%d,%.6f\n", m, n, res.stats.seconds);
                csv << line;
                ++rows;
            }
        }
    }
    write_output(a.out, csv.str());
    note("benchmarked " + std::to_string(rows) + " solver run(s)");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"refund mechanism toolkit: generate, solve, audit, and simulate "
                 "deterministic refund menus over discrete value distributions"};
    app.require_subcommand(1);
    app.add_flag("--json", g_quiet, "machine output only; suppress stderr summaries");

    GenArgs gen;
    CLI::App* cgen = app.add_subcommand("gen", "generate a random instance document");
    cgen->add_option("--kind", gen.kind, "discrete | ordered | uniform")->capture_default_str();
    cgen->add_option("-m,--types", gen.m, "number of buyer types")->required();
    cgen->add_option("-n,--values", gen.n, "value-grid size (discrete)");
    cgen->add_option("-k,--qualities", gen.k, "item count (ordered/uniform)");
    cgen->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    cgen->add_option("-o,--out", gen.out, "output path (default stdout)");

    SolveArgs solve;
    CLI::App* csolve = app.add_subcommand("solve", "compute a revenue-optimal menu");
    csolve->add_option("instance", solve.instance_path, "instance JSON path")->required();
    csolve->add_option("-c,--max-menu-size", solve.cap, "max distinct menu options");
    csolve->add_flag("--emit-virtual", solve.emit_virtual,
                     "include the weighted virtual-value table in the output");
    csolve->add_option("-o,--out", solve.out, "output path (default stdout)");

    AuditArgs audit;
    CLI::App* caudit = app.add_subcommand("audit", "verify a menu against an instance");
    caudit->add_option("instance", audit.instance_path, "instance JSON path")->required();
    caudit->add_option("menu", audit.menu_path, "menu or solver-result JSON path")->required();
    caudit->add_option("-o,--out", audit.out, "output path (default stdout)");

    OracleArgs oracle;
    CLI::App* coracle = app.add_subcommand("oracle", "exhaustive optimum by enumeration");
    coracle->add_option("instance", oracle.instance_path, "instance JSON path")->required();
    coracle->add_option("menu", oracle.menu_path, "optional menu/result to cross-check");
    coracle->add_option("-c,--cap", oracle.cap, "restrict to menus with <= c distinct options");
    coracle->add_option("--budget", oracle.budget, "max threshold vectors to enumerate")
        ->capture_default_str();
    coracle->add_option("--threads", oracle.threads, "parallel enumeration shards")
        ->capture_default_str();
    coracle->add_option("-o,--out", oracle.out, "output path (default stdout)");

    SimArgs sim;
    CLI::App* csim = app.add_subcommand("simulate", "Monte Carlo revenue estimate for a menu");
    csim->add_option("instance", sim.instance_path, "instance JSON path")->required();
    csim->add_option("menu", sim.menu_path, "menu or solver-result JSON path")->required();
    csim->add_option("--trials", sim.trials, "number of trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    csim->add_option("--seed", sim.seed, "simulation seed")->capture_default_str();
    csim->add_flag("--force", sim.force, "simulate even if the menu fails the IC audit");
    csim->add_option("--threads", sim.threads, "parallel trial shards")->capture_default_str();
    csim->add_option("-o,--out", sim.out, "output path (default stdout)");

    BenchArgs bench;
    CLI::App* cbench = app.add_subcommand("bench", "time the solver across instance sizes");
    cbench->add_option("-m,--m-list", bench.ms, "type counts (comma separated)")
        ->delimiter(',');
    cbench->add_option("-n,--n-list", bench.ns, "grid sizes (comma separated)")->delimiter(',');
    cbench->add_option("--seeds", bench.seeds, "instances per size")->capture_default_str();
    cbench->add_option("-o,--out", bench.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cgen->parsed()) return run_gen(gen);
        if (csolve->parsed()) return run_solve(solve);
        if (caudit->parsed()) return run_audit(audit);
        if (coracle->parsed()) return run_oracle(oracle);
        if (csim->parsed()) return run_simulate(sim);
        if (cbench->parsed()) return run_bench(bench);
    } catch (const refund::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
