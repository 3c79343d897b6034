#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "defset/design_analysis.hpp"
#include "defset/io.hpp"
#include "defset/model.hpp"
#include "defset/oracle.hpp"
#include "defset/rectangle_analysis.hpp"
#include "defset/search.hpp"

namespace {

using namespace defset;

constexpr int exit_ok = 0;
constexpr int exit_not_defining = 1;
constexpr int exit_unknown = 2;
constexpr int exit_input = 3;
constexpr int exit_falsified = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string f6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

bool set_valued(const PartialRectangle& d) {
    for (const Cell& cell : d.cells)
        for (int c : cell.counts)
            if (c > 1) return false;
    return true;
}

int status_exit(OracleStatus s) {
    switch (s) {
        case OracleStatus::defining: return exit_ok;
        case OracleStatus::not_defining: return exit_not_defining;
        case OracleStatus::budget_exhausted: return exit_unknown;
    }
    return exit_unknown;
}

void add_budget_flags(CLI::App* cmd, EnumerationBudget& budget) {
    cmd->add_option("--max-solutions", budget.max_solutions,
                    "stop after this many completions (0 = unlimited)");
    cmd->add_option("--max-nodes", budget.max_nodes, "search-node cap (0 = unlimited)");
    cmd->add_option("--time-cap", budget.time_cap_seconds,
                    "wall-clock cap in seconds (0 = unlimited)");
}

int run_verify(const std::string& rect_file, const std::string& design_file,
               const std::string& mode, const EnumerationBudget& budget, int workers,
               bool allow_large) {
    bool want_certificate = mode == "certificate" || mode == "both";
    bool want_oracle = mode == "oracle" || mode == "both";

    if (!rect_file.empty()) {
        PartialRectangle d = parse_rectangle(read_file(rect_file));
        if (auto viol = validate_partial_rectangle(d)) throw std::invalid_argument(viol->message);
        if (want_certificate) {
            if (!set_valued(d)) {
                std::cout << "certificate: skipped (set-valued cells required)\n";
            } else if (auto cert = rect_certificate(d)) {
                std::cout << "verdict: not-defining\ncertificate:\n" << serialize(*cert);
                return exit_not_defining;
            } else {
                std::cout << "certificate: none\n";
            }
            if (!want_oracle) {
                std::cout << "verdict: unknown\n";
                return exit_unknown;
            }
        }
        RectVerdict verdict = is_defining_rect(d, budget, workers, allow_large);
        std::cout << "verdict: " << to_string(verdict.status) << '\n'
                  << "completions: " << verdict.completions_found << '\n'
                  << "nodes: " << verdict.nodes << '\n'
                  << "stop: " << to_string(verdict.stop) << '\n';
        for (size_t i = 0; i < verdict.witnesses.size(); ++i)
            std::cout << "witness " << (i + 1) << ":\n" << serialize(verdict.witnesses[i]);
        return status_exit(verdict.status);
    }

    DesignFile file = parse_design(read_file(design_file));
    if (!file.simple())
        throw std::invalid_argument("verification input must be a simple block set");
    long long lambda = full_lambda(file.points, file.block_size);
    if (file.lambda_given && *file.lambda_given != lambda)
        throw std::invalid_argument(
            "verification assumes the full-design pair count lambda = " + std::to_string(lambda));
    PartialDesign d = file.as_partial_design();
    if (want_certificate) {
        if (auto cert = design_certificate(d)) {
            std::cout << "verdict: not-defining\ncertificate:\n" << serialize(*cert);
            return exit_not_defining;
        }
        std::cout << "certificate: none\n";
        if (!want_oracle) {
            std::cout << "verdict: unknown\n";
            return exit_unknown;
        }
    }
    DesignVerdict verdict = is_defining_design(d, budget, workers, allow_large);
    std::cout << "verdict: " << to_string(verdict.status) << '\n'
              << "completions: " << verdict.completions_found << '\n'
              << "nodes: " << verdict.nodes << '\n'
              << "stop: " << to_string(verdict.stop) << '\n';
    for (size_t i = 0; i < verdict.witnesses.size(); ++i)
        std::cout << "witness " << (i + 1) << ":\n" << serialize(verdict.witnesses[i]);
    return status_exit(verdict.status);
}

void print_rect_bound(const RectBoundReport& report) {
    const char* variant = report.variant == BoundVariant::verbatim ? "verbatim" : "corrected";
    std::cout << "rect " << report.rows << ' ' << report.cols << ' ' << report.symbols
              << " variant=" << variant << " value=" << f6(report.lower_bound)
              << " ceil=" << report.lower_bound_ceil
              << " lambda_prime=" << f6(report.lambda_prime)
              << " clamped=" << (report.clamped ? 1 : 0) << " ratio=" << f6(report.ratio)
              << '\n';
}

void print_design_bound(const DesignBoundReport& report) {
    const char* kind = "general";
    if (report.kind == DesignBoundKind::triples) kind = "triples";
    if (report.kind == DesignBoundKind::projected) kind = "projected";
    std::cout << "design " << report.points << ' ' << report.block_size << " kind=" << kind
              << " value=" << f6(report.value) << " ceil=" << report.value_ceil
              << " blocks=" << report.block_total
              << " complement_fraction=" << f6(report.complement_fraction)
              << " clamped=" << (report.clamped ? 1 : 0) << '\n';
}

int run_bound(const std::vector<int>& rect, const std::vector<int>& design,
              const std::string& variant) {
    if (!rect.empty()) {
        int m = rect[0], n = rect[1], t = rect[2];
        if (variant == "verbatim" || variant == "all")
            print_rect_bound(rect_lower_bound(m, n, t, BoundVariant::verbatim));
        if (variant == "corrected" || variant == "all")
            print_rect_bound(rect_lower_bound(m, n, t, BoundVariant::corrected));
        return exit_ok;
    }
    int v = design[0], k = design[1];
    if (k == 3 && v >= 4) print_design_bound(triple_design_bound(v));
    if (k > 3) print_design_bound(projected_design_bound(v, k));
    print_design_bound(general_design_bound(v, k));
    return exit_ok;
}

void print_events(const FalsificationMonitor& monitor) {
    std::cout << "checks: " << monitor.checks() << '\n';
    if (monitor.events().empty()) {
        std::cout << "events: none\n";
        return;
    }
    std::cout << "events:\n";
    for (const FalsificationEvent& e : monitor.events()) {
        std::cout << "event: family=" << (e.verbatim ? "verbatim" : "corrected")
                  << " name=" << e.bound_name << " bound=" << f6(e.bound_value)
                  << " size=" << e.set_size << '\n'
                  << "replay: " << e.replay << '\n'
                  << "object:\n"
                  << e.object;
    }
}

int run_search(const std::vector<int>& rect, const std::vector<int>& design,
               const SearchConfig& config, int workers) {
    FalsificationMonitor monitor;
    long long best_size = -1;
    int best_restart = -1;
    std::string best_text;
    std::vector<std::string> trace;
    bool any_aborted = false;

    if (!rect.empty()) {
        RectSearchResult result =
            minimize_rect_defining_set(rect[0], rect[1], rect[2], config, &monitor, workers);
        best_size = result.best_size;
        best_restart = result.best_restart;
        if (best_size >= 0) best_text = serialize(result.best);
        trace = std::move(result.trace);
        any_aborted = result.any_aborted;
    } else {
        DesignSearchResult result =
            minimize_design_defining_set(design[0], design[1], config, &monitor, workers);
        best_size = result.best_size;
        best_restart = result.best_restart;
        if (best_size >= 0) best_text = serialize(result.best);
        trace = std::move(result.trace);
        any_aborted = result.any_aborted;
    }

    for (const std::string& line : trace) std::cout << line << '\n';
    if (best_size >= 0) {
        std::cout << "best: size=" << best_size << " restart=" << best_restart << '\n'
                  << best_text;
    } else {
        std::cout << "best: none\n";
    }
    if (any_aborted) std::cout << "aborted: some restarts ran out of budget\n";
    print_events(monitor);

    if (monitor.verbatim_violation()) return exit_falsified;
    if (best_size < 0) return exit_unknown;
    return exit_ok;
}

int run_tables(bool rect, int max_n, int max_v, int k, bool with_search,
               const SearchConfig& config, int workers) {
    FalsificationMonitor monitor;
    if (rect) {
        std::vector<std::pair<int, long long>> best;
        if (with_search) {
            for (int n = 2; n <= max_n; ++n) {
                if (static_cast<long long>(n) * n * n > 64) continue;
                RectSearchResult result =
                    minimize_rect_defining_set(n, n, n, config, &monitor, workers);
                if (result.best_size >= 0) best.emplace_back(n, result.best_size);
            }
        }
        std::cout << to_tsv(rect_comparison_table(max_n, best));
    } else {
        std::vector<std::pair<int, long long>> best;
        if (with_search) {
            for (int v = std::max(k + 1, 4); v <= max_v; ++v) {
                if (binomial(v, k) > 40) continue;
                DesignSearchResult result =
                    minimize_design_defining_set(v, k, config, &monitor, workers);
                if (result.best_size >= 0) best.emplace_back(v, result.best_size);
            }
        }
        std::cout << to_tsv(design_comparison_table(max_v, k, best));
    }
    if (!monitor.events().empty()) {
        for (const FalsificationEvent& e : monitor.events())
            std::cerr << "event: family=" << (e.verbatim ? "verbatim" : "corrected")
                      << " name=" << e.bound_name << " bound=" << f6(e.bound_value)
                      << " size=" << e.set_size << " replay=" << e.replay << '\n';
    }
    return monitor.verbatim_violation() ? exit_falsified : exit_ok;
}

int run_oracle(const std::string& action, const std::string& rect_file,
               const std::string& design_file, bool distinct, const EnumerationBudget& budget,
               int workers, bool allow_large) {
    bool stream = action == "stream";
    long long count = 0, nodes = 0, shown = 0;
    StopReason stop = StopReason::complete;

    if (!rect_file.empty()) {
        PartialRectangle d = parse_rectangle(read_file(rect_file));
        RectEnumeration e = enumerate_rect_completions(d, budget, workers, allow_large);
        count = static_cast<long long>(e.completions.size());
        nodes = e.nodes;
        stop = e.stop;
        for (const BalancedRectangle& r : e.completions) {
            if (distinct && !census_canonical(r)) continue;
            ++shown;
            if (stream) {
                if (shown > 1) std::cout << "---\n";
                std::cout << serialize(r);
            }
        }
    } else {
        DesignFile file = parse_design(read_file(design_file));
        PartialDesign d = file.as_partial_design();
        DesignEnumeration e =
            enumerate_design_candidates(d, file.lambda(), budget, workers, allow_large);
        count = static_cast<long long>(e.candidates.size());
        nodes = e.nodes;
        stop = e.stop;
        for (const DesignCandidate& c : e.candidates) {
            if (distinct && !census_canonical(c)) continue;
            ++shown;
            if (stream) {
                if (shown > 1) std::cout << "---\n";
                std::cout << serialize(c);
            }
        }
    }

    if (stream && shown > 0) std::cout << "---\n";
    std::cout << "count: " << count << '\n';
    if (distinct) std::cout << "distinct: " << shown << '\n';
    std::cout << "nodes: " << nodes << '\n' << "stop: " << to_string(stop) << '\n';
    return stop == StopReason::complete ? exit_ok : exit_unknown;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"defining-set toolkit: verification, bounds, search, tables, enumeration"};
    app.require_subcommand(1);

    // verify
    std::string verify_rect, verify_design, verify_mode = "both";
    EnumerationBudget verify_budget;
    int verify_workers = 1;
    bool verify_allow_large = false;
    CLI::App* verify = app.add_subcommand("verify", "decide whether a partial object is defining");
    CLI::Option* vr = verify->add_option("--rect", verify_rect, "partial rectangle file");
    CLI::Option* vd = verify->add_option("--design", verify_design, "partial design file");
    vr->excludes(vd);
    vd->excludes(vr);
    verify->add_option("--mode", verify_mode, "certificate | oracle | both")
        ->check(CLI::IsMember({"certificate", "oracle", "both"}));
    add_budget_flags(verify, verify_budget);
    verify->add_option("--workers", verify_workers, "worker threads")->check(CLI::PositiveNumber);
    verify->add_flag("--allow-large", verify_allow_large, "lift the instance-size guard");

    // bound
    std::vector<int> bound_rect, bound_design;
    std::string bound_variant = "all";
    CLI::App* bound = app.add_subcommand("bound", "evaluate defining-set lower bounds");
    CLI::Option* br = bound->add_option("--rect", bound_rect, "m n t")->expected(3);
    CLI::Option* bd = bound->add_option("--design", bound_design, "v k")->expected(2);
    br->excludes(bd);
    bd->excludes(br);
    bound->add_option("--variant", bound_variant, "verbatim | corrected | all (rectangles)")
        ->check(CLI::IsMember({"verbatim", "corrected", "all"}));

    // search
    std::vector<int> search_rect, search_design;
    SearchConfig search_config;
    std::string search_order = "random";
    int search_workers = 1;
    CLI::App* search = app.add_subcommand("search", "minimize a defining set by greedy deletion");
    CLI::Option* sr = search->add_option("--rect", search_rect, "m n t")->expected(3);
    CLI::Option* sd = search->add_option("--design", search_design, "v k")->expected(2);
    sr->excludes(sd);
    sd->excludes(sr);
    search->add_option("--seed", search_config.seed, "RNG seed (default 0)");
    search->add_option("--restarts", search_config.restarts, "independent restarts")
        ->check(CLI::PositiveNumber);
    search->add_option("--order", search_order, "random | size-greedy")
        ->check(CLI::IsMember({"random", "size-greedy"}));
    add_budget_flags(search, search_config.budget);
    search->add_option("--workers", search_workers, "worker threads")->check(CLI::PositiveNumber);

    // tables
    bool tables_rect = false, tables_design = false, tables_search = false;
    int tables_max_n = 6, tables_max_v = 9, tables_k = 3, tables_workers = 1;
    SearchConfig tables_config;
    CLI::App* tables = app.add_subcommand("tables", "bound-vs-construction comparison TSV");
    CLI::Option* tr = tables->add_flag("--rect", tables_rect, "square rectangles");
    CLI::Option* td = tables->add_flag("--design", tables_design, "designs");
    tr->excludes(td);
    td->excludes(tr);
    tables->add_option("--max-n", tables_max_n, "largest n (rectangles)");
    tables->add_option("--max-v", tables_max_v, "largest v (designs)");
    tables->add_option("--k", tables_k, "block size (designs)");
    tables->add_flag("--search", tables_search, "fill best_search by seeded greedy search");
    tables->add_option("--seed", tables_config.seed, "RNG seed for --search");
    tables->add_option("--restarts", tables_config.restarts, "restarts for --search")
        ->check(CLI::PositiveNumber);
    add_budget_flags(tables, tables_config.budget);
    tables->add_option("--workers", tables_workers, "worker threads")->check(CLI::PositiveNumber);

    // oracle
    std::string oracle_action, oracle_rect, oracle_design;
    bool oracle_distinct = false, oracle_allow_large = false;
    EnumerationBudget oracle_budget{0, 10'000'000, 60.0};
    int oracle_workers = 1;
    CLI::App* oracle = app.add_subcommand("oracle", "enumerate completions");
    oracle->add_option("action", oracle_action, "count | stream")
        ->required()
        ->check(CLI::IsMember({"count", "stream"}));
    CLI::Option* orc = oracle->add_option("--rect", oracle_rect, "partial rectangle file");
    CLI::Option* od = oracle->add_option("--design", oracle_design, "partial design file");
    orc->excludes(od);
    od->excludes(orc);
    oracle->add_flag("--distinct", oracle_distinct,
                     "report only lexicographically least relabelings");
    add_budget_flags(oracle, oracle_budget);
    oracle->add_option("--workers", oracle_workers, "worker threads")->check(CLI::PositiveNumber);
    oracle->add_flag("--allow-large", oracle_allow_large, "lift the instance-size guard");

    try {
        app.parse(argc, argv);

        if (verify->parsed()) {
            if (verify_rect.empty() && verify_design.empty())
                throw std::invalid_argument("verify needs --rect or --design");
            return run_verify(verify_rect, verify_design, verify_mode, verify_budget,
                              verify_workers, verify_allow_large);
        }
        if (bound->parsed()) {
            if (bound_rect.empty() && bound_design.empty())
                throw std::invalid_argument("bound needs --rect or --design");
            return run_bound(bound_rect, bound_design, bound_variant);
        }
        if (search->parsed()) {
            if (search_rect.empty() && search_design.empty())
                throw std::invalid_argument("search needs --rect or --design");
            search_config.deletion_order = search_order == "random" ? DeletionOrder::random
                                                                    : DeletionOrder::size_greedy;
            return run_search(search_rect, search_design, search_config, search_workers);
        }
        if (tables->parsed()) {
            if (tables_rect == tables_design)
                throw std::invalid_argument("tables needs exactly one of --rect or --design");
            return run_tables(tables_rect, tables_max_n, tables_max_v, tables_k, tables_search,
                              tables_config, tables_workers);
        }
        if (oracle->parsed()) {
            if (oracle_rect.empty() && oracle_design.empty())
                throw std::invalid_argument("oracle needs --rect or --design");
            return run_oracle(oracle_action, oracle_rect, oracle_design, oracle_distinct,
                              oracle_budget, oracle_workers, oracle_allow_large);
        }
        return exit_input;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
