#include "defset/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "defset/design_analysis.hpp"
#include "defset/exact.hpp"
#include "defset/io.hpp"
#include "defset/rectangle_analysis.hpp"

namespace defset {

std::uint64_t splitmix_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t SplitMix64::next() {
    state += 0x9E3779B97F4A7C15ULL;
    return splitmix_mix(state);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
}

SplitMix64 restart_stream(std::uint64_t seed, std::uint64_t restart) {
    return SplitMix64{splitmix_mix(seed ^ splitmix_mix(restart + 1))};
}

const char* to_string(DeletionOrder o) {
    switch (o) {
        case DeletionOrder::random: return "random";
        case DeletionOrder::size_greedy: return "size-greedy";
    }
    return "?";
}

namespace {

template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng.below(i)]);
}

long long rect_size(const PartialRectangle& d) {
    long long size = 0;
    for (const Cell& cell : d.cells)
        for (int c : cell.counts) size += c;
    return size;
}

std::string replay_string(const char* kind, std::initializer_list<int> params,
                          const SearchConfig& cfg, int restart) {
    std::ostringstream os;
    os << kind;
    for (int p : params) os << ' ' << p;
    os << " seed=" << cfg.seed << " restarts=" << cfg.restarts
       << " order=" << to_string(cfg.deletion_order) << " restart=" << restart;
    return os.str();
}

void check_config(const SearchConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("search needs at least one restart");
    if (cfg.budget.max_solutions < 0 || cfg.budget.max_nodes < 0 ||
        cfg.budget.time_cap_seconds < 0)
        throw std::invalid_argument("budget caps must be nonnegative");
}

template <typename Outcome, typename Run>
std::vector<Outcome> run_restarts(int restarts, int workers, Run run) {
    std::vector<Outcome> outs(static_cast<size_t>(restarts));
    std::atomic<int> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= restarts) return;
            try {
                outs[static_cast<size_t>(i)] = run(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    int pool_size = std::clamp(workers, 1, restarts);
    if (pool_size <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(pool_size));
        for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return outs;
}

struct RectRestartOutcome {
    PartialRectangle d;
    long long size = 0;
    int passes = 0;
    bool certified = false;
    bool aborted = false;
    FalsificationMonitor local;
};

RectRestartOutcome run_rect_restart(int m, int n, int t, const SearchConfig& cfg, int restart) {
    RectRestartOutcome out;
    out.d = full_rectangle(m, n, t).grid;
    SplitMix64 rng = restart_stream(cfg.seed, static_cast<std::uint64_t>(restart));
    std::string replay = replay_string("rect", {m, n, t}, cfg, restart);

    RectVerdict start = is_defining_rect(out.d, cfg.budget);
    if (start.status != OracleStatus::defining) {
        out.aborted = true;
        out.size = rect_size(out.d);
        return out;
    }
    out.local.record_rect(out.d, replay);

    while (true) {
        ++out.passes;
        std::vector<std::pair<int, int>> atoms;
        for (int cell = 0; cell < m * n; ++cell)
            for (int s = 0; s < t; ++s)
                if (out.d.cells[static_cast<size_t>(cell)].counts[static_cast<size_t>(s)] > 0)
                    atoms.emplace_back(cell, s);
        if (cfg.deletion_order == DeletionOrder::random) {
            shuffle(atoms, rng);
        } else {
            std::vector<int> totals(static_cast<size_t>(m * n), 0);
            for (int cell = 0; cell < m * n; ++cell)
                totals[static_cast<size_t>(cell)] =
                    out.d.cells[static_cast<size_t>(cell)].total();
            std::stable_sort(atoms.begin(), atoms.end(),
                             [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                                 int ta = totals[static_cast<size_t>(a.first)];
                                 int tb = totals[static_cast<size_t>(b.first)];
                                 if (ta != tb) return ta > tb;
                                 return a < b;
                             });
        }

        bool removed = false;
        for (const auto& [cell, s] : atoms) {
            int& count = out.d.cells[static_cast<size_t>(cell)].counts[static_cast<size_t>(s)];
            if (count == 0) continue;
            --count;
            RectVerdict verdict = is_defining_rect(out.d, cfg.budget);
            if (verdict.status == OracleStatus::budget_exhausted) {
                ++count;
                out.aborted = true;
                out.size = rect_size(out.d);
                return out;
            }
            if (verdict.status == OracleStatus::defining) {
                removed = true;
                out.local.record_rect(out.d, replay);
            } else {
                ++count;
            }
        }
        if (!removed) break;
    }
    out.certified = true;
    out.size = rect_size(out.d);
    return out;
}

struct DesignRestartOutcome {
    PartialDesign d;
    long long size = 0;
    int passes = 0;
    bool certified = false;
    bool aborted = false;
    FalsificationMonitor local;
};

DesignRestartOutcome run_design_restart(int v, int k, const SearchConfig& cfg, int restart) {
    DesignRestartOutcome out;
    out.d.points = v;
    out.d.block_size = k;
    for (const auto& [block, mult] : full_design_candidate(v, k).blocks)
        out.d.blocks.push_back(block);
    SplitMix64 rng = restart_stream(cfg.seed, static_cast<std::uint64_t>(restart));
    std::string replay = replay_string("design", {v, k}, cfg, restart);

    DesignVerdict start = is_defining_design(out.d, cfg.budget);
    if (start.status != OracleStatus::defining) {
        out.aborted = true;
        out.size = static_cast<long long>(out.d.blocks.size());
        return out;
    }
    out.local.record_design(out.d, replay);

    while (true) {
        ++out.passes;
        std::vector<Block> atoms = out.d.blocks;
        if (cfg.deletion_order == DeletionOrder::random) shuffle(atoms, rng);

        bool removed = false;
        for (const Block& block : atoms) {
            auto it = std::lower_bound(out.d.blocks.begin(), out.d.blocks.end(), block);
            if (it == out.d.blocks.end() || !(*it == block)) continue;
            out.d.blocks.erase(it);
            DesignVerdict verdict = is_defining_design(out.d, cfg.budget);
            if (verdict.status == OracleStatus::budget_exhausted) {
                out.d.blocks.insert(
                    std::lower_bound(out.d.blocks.begin(), out.d.blocks.end(), block), block);
                out.aborted = true;
                out.size = static_cast<long long>(out.d.blocks.size());
                return out;
            }
            if (verdict.status == OracleStatus::defining) {
                removed = true;
                out.local.record_design(out.d, replay);
            } else {
                out.d.blocks.insert(
                    std::lower_bound(out.d.blocks.begin(), out.d.blocks.end(), block), block);
            }
        }
        if (!removed) break;
    }
    out.certified = true;
    out.size = static_cast<long long>(out.d.blocks.size());
    return out;
}

std::string trace_line(int restart, long long size, int passes, bool certified, bool aborted) {
    std::ostringstream os;
    os << "restart=" << restart << " size=" << size << " passes=" << passes
       << " certified=" << (certified ? 1 : 0) << " aborted=" << (aborted ? 1 : 0);
    return os.str();
}

std::string f6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string f6(const std::optional<double>& x) { return x ? f6(*x) : "-"; }

std::string int_or_dash(const std::optional<long long>& x) {
    return x ? std::to_string(*x) : "-";
}

} // namespace

void FalsificationMonitor::push(bool verbatim, const char* name, double bound, long long size,
                                std::string object, const std::string& replay) {
    FalsificationEvent event;
    event.verbatim = verbatim;
    event.bound_name = name;
    event.bound_value = bound;
    event.set_size = size;
    event.object = std::move(object);
    event.replay = replay;
    events_.push_back(std::move(event));
}

void FalsificationMonitor::record_rect(const PartialRectangle& d, const std::string& replay) {
    ++checks_;
    long long size = rect_size(d);
    RectBoundReport vb = rect_lower_bound(d.rows, d.cols, d.symbols, BoundVariant::verbatim);
    if (cmp(vb.exact, rat(size)) > 0)
        push(true, "rect-verbatim", vb.lower_bound, size, serialize(d), replay);
    RectBoundReport cb = rect_lower_bound(d.rows, d.cols, d.symbols, BoundVariant::corrected);
    if (cmp(cb.exact, rat(size)) > 0)
        push(false, "rect-corrected", cb.lower_bound, size, serialize(d), replay);
}

void FalsificationMonitor::record_design(const PartialDesign& d, const std::string& replay) {
    ++checks_;
    long long size = static_cast<long long>(d.blocks.size());
    int v = d.points, k = d.block_size;
    if (k == 3 && v >= 4) {
        DesignBoundReport tb = triple_design_bound(v);
        if (cmp(tb.exact, rat(size)) > 0)
            push(true, "design-triples", tb.value, size, serialize(d), replay);
    }
    if (k >= 3 && v >= k) {
        DesignBoundReport gb = general_design_bound(v, k);
        if (cmp(gb.exact, rat(size)) > 0)
            push(true, "design-general", gb.value, size, serialize(d), replay);
    }
    if (k > 3 && binomial(v, k - 3) <= 100000) {
        DesignBoundReport pb = projected_design_bound(v, k);
        std::vector<int> fixed(static_cast<size_t>(k - 3));
        auto sweep = [&](auto&& self, int pos, int low) -> void {
            if (pos == k - 3) {
                long long d_k = blocks_containing(d, fixed);
                if (cmp(pb.exact, rat(d_k)) > 0) {
                    std::ostringstream os;
                    os << replay << " K=";
                    for (size_t i = 0; i < fixed.size(); ++i)
                        os << (i ? "," : "") << fixed[i];
                    push(true, "design-projected", pb.value, d_k, serialize(d), os.str());
                }
                return;
            }
            for (int x = low; x <= v; ++x) {
                fixed[static_cast<size_t>(pos)] = x;
                self(self, pos + 1, x + 1);
            }
        };
        sweep(sweep, 0, 1);
    }
}

void FalsificationMonitor::merge(const FalsificationMonitor& other) {
    events_.insert(events_.end(), other.events_.begin(), other.events_.end());
    checks_ += other.checks_;
}

bool FalsificationMonitor::verbatim_violation() const {
    return std::any_of(events_.begin(), events_.end(),
                       [](const FalsificationEvent& e) { return e.verbatim; });
}

RectSearchResult minimize_rect_defining_set(int m, int n, int t, const SearchConfig& config,
                                            FalsificationMonitor* monitor, int workers) {
    check_config(config);
    RectSearchResult result;
    result.best = empty_rectangle(m, n, t);
    std::vector<RectRestartOutcome> outs = run_restarts<RectRestartOutcome>(
        config.restarts, workers,
        [&](int r) { return run_rect_restart(m, n, t, config, r); });
    for (int r = 0; r < config.restarts; ++r) {
        RectRestartOutcome& out = outs[static_cast<size_t>(r)];
        result.trace.push_back(trace_line(r, out.size, out.passes, out.certified, out.aborted));
        if (monitor) monitor->merge(out.local);
        result.any_aborted = result.any_aborted || out.aborted;
        if (out.certified && (result.best_size < 0 || out.size < result.best_size)) {
            result.best = out.d;
            result.best_size = out.size;
            result.best_restart = r;
            result.certified_minimal = true;
        }
    }
    return result;
}

DesignSearchResult minimize_design_defining_set(int v, int k, const SearchConfig& config,
                                                FalsificationMonitor* monitor, int workers) {
    check_config(config);
    DesignSearchResult result;
    result.best.points = v;
    result.best.block_size = k;
    std::vector<DesignRestartOutcome> outs = run_restarts<DesignRestartOutcome>(
        config.restarts, workers,
        [&](int r) { return run_design_restart(v, k, config, r); });
    for (int r = 0; r < config.restarts; ++r) {
        DesignRestartOutcome& out = outs[static_cast<size_t>(r)];
        result.trace.push_back(trace_line(r, out.size, out.passes, out.certified, out.aborted));
        if (monitor) monitor->merge(out.local);
        result.any_aborted = result.any_aborted || out.aborted;
        if (out.certified && (result.best_size < 0 || out.size < result.best_size)) {
            result.best = out.d;
            result.best_size = out.size;
            result.best_restart = r;
            result.certified_minimal = true;
        }
    }
    return result;
}

std::vector<RectComparisonRow> rect_comparison_table(
    int max_n, const std::vector<std::pair<int, long long>>& best_sizes) {
    if (max_n < 2) throw std::invalid_argument("comparison table needs max n of at least 2");
    std::map<int, long long> best(best_sizes.begin(), best_sizes.end());
    std::vector<RectComparisonRow> rows;
    for (int n = 2; n <= max_n; ++n) {
        RectBoundReport vb = square_lower_bound(n, BoundVariant::verbatim);
        RectBoundReport cb = square_lower_bound(n, BoundVariant::corrected);
        RectComparisonRow row;
        row.n = n;
        row.verbatim = vb.lower_bound;
        row.corrected = cb.lower_bound;
        long long nn = n;
        long long cube = (nn - 1) * (nn - 1) * (nn - 1) + 1;
        row.construction_cube = static_cast<double>(cube);
        row.saturated_critical = static_cast<double>(nn * nn * nn - 2 * nn * nn - nn);
        row.construction_half = static_cast<double>(nn * nn * nn - 2 * nn * nn + 2 * nn) / 2.0;
        row.bound_exceeds_known_construction =
            cmp(vb.exact, rat(cube)) > 0 || cmp(cb.exact, rat(cube)) > 0;
        auto it = best.find(n);
        if (it != best.end()) {
            row.best_search = it->second;
            row.search_below_bound = cmp(vb.exact, rat(it->second)) > 0;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<DesignComparisonRow> design_comparison_table(
    int max_v, int k, const std::vector<std::pair<int, long long>>& best_sizes) {
    if (k < 3) throw std::invalid_argument("comparison table needs block size at least 3");
    int v_start = std::max(k + 1, 4);
    if (max_v < v_start) throw std::invalid_argument("comparison table range is empty");
    std::map<int, long long> best(best_sizes.begin(), best_sizes.end());
    std::vector<DesignComparisonRow> rows;
    for (int v = v_start; v <= max_v; ++v) {
        DesignComparisonRow row;
        row.v = v;
        row.k = k;
        DesignBoundReport gb = general_design_bound(v, k);
        row.general = gb.value;
        std::optional<DesignBoundReport> tb;
        long long vv = v;
        std::vector<long long> constructions;
        if (k == 3) {
            tb = triple_design_bound(v);
            row.triples = tb->value;
            row.prior_bound = 3.0 * static_cast<double>(binomial(v, 3)) / 7.0;
            long long cubic = (vv * vv * vv - 6 * vv * vv + 5 * vv + 6) / 6;
            row.construction_cubic = static_cast<double>(cubic);
            constructions.push_back(cubic);
        }
        long long kk = k;
        long long blocks = binomial(v, k);
        long long defect_a = blocks - (vv * vv + 3 * vv - 2 * vv * kk + 2 * kk * kk - 8) / 2;
        long long defect_b = blocks - (vv * vv - vv - kk * kk + kk + 2) / 2;
        long long offset = blocks + (kk - 1) * (kk + 2) / 2 - kk * vv;
        row.construction_defect_a = static_cast<double>(defect_a);
        row.construction_defect_b = static_cast<double>(defect_b);
        row.construction_offset = static_cast<double>(offset);
        constructions.push_back(defect_a);
        constructions.push_back(defect_b);
        constructions.push_back(offset);

        // Formula values at or below zero are outside the cited ranges
        // and never count as known constructions.
        long long smallest = 0;
        bool have = false;
        for (long long c : constructions)
            if (c > 0 && (!have || c < smallest)) {
                smallest = c;
                have = true;
            }
        if (have) {
            row.bound_exceeds_known_construction = cmp(gb.exact, rat(smallest)) > 0 ||
                                                   (tb && cmp(tb->exact, rat(smallest)) > 0);
        }
        auto it = best.find(v);
        if (it != best.end()) {
            row.best_search = it->second;
            row.search_below_bound = cmp(gb.exact, rat(it->second)) > 0 ||
                                     (tb && cmp(tb->exact, rat(it->second)) > 0);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string to_tsv(const std::vector<RectComparisonRow>& rows) {
    std::ostringstream os;
    os << "n\tverbatim\tcorrected\tconstruction_cube\tsaturated_critical\tconstruction_half"
          "\tbest_search\tbound_exceeds_known_construction\tsearch_below_bound\n";
    for (const RectComparisonRow& row : rows) {
        os << row.n << '\t' << f6(row.verbatim) << '\t' << f6(row.corrected) << '\t'
           << f6(row.construction_cube) << '\t' << f6(row.saturated_critical) << '\t'
           << f6(row.construction_half) << '\t' << int_or_dash(row.best_search) << '\t'
           << (row.bound_exceeds_known_construction ? 1 : 0) << '\t'
           << (row.search_below_bound ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string to_tsv(const std::vector<DesignComparisonRow>& rows) {
    std::ostringstream os;
    os << "v\tk\ttriples\tgeneral\tprior_bound\tconstruction_cubic\tconstruction_defect_a"
          "\tconstruction_defect_b\tconstruction_offset\tbest_search"
          "\tbound_exceeds_known_construction\tsearch_below_bound\n";
    for (const DesignComparisonRow& row : rows) {
        os << row.v << '\t' << row.k << '\t' << f6(row.triples) << '\t' << f6(row.general)
           << '\t' << f6(row.prior_bound) << '\t' << f6(row.construction_cubic) << '\t'
           << f6(row.construction_defect_a) << '\t' << f6(row.construction_defect_b) << '\t'
           << f6(row.construction_offset) << '\t' << int_or_dash(row.best_search) << '\t'
           << (row.bound_exceeds_known_construction ? 1 : 0) << '\t'
           << (row.search_below_bound ? 1 : 0) << '\n';
    }
    return os.str();
}

IntersectionReport intersection_check(const PartialRectangle& d, const EnumerationBudget& budget) {
    if (auto viol = validate_partial_rectangle(d)) throw std::invalid_argument(viol->message);
    if (d.rows != d.cols || d.cols != d.symbols)
        throw std::invalid_argument("intersection check needs a square with t = n");
    int n = d.rows;
    if (n > 3)
        throw std::invalid_argument("intersection check is supported for order at most 3");
    for (const Cell& cell : d.cells)
        for (int c : cell.counts)
            if (c > 1)
                throw std::invalid_argument(
                    "intersection check needs a subset of the full square");

    RectVerdict verdict = is_defining_rect(d, budget);
    if (verdict.status != OracleStatus::defining)
        throw std::invalid_argument("intersection check needs an oracle-verified defining set");

    EnumerationBudget all = budget;
    all.max_solutions = 0;
    if (all.max_nodes == 0 && all.time_cap_seconds == 0) all.max_nodes = 10'000'000;
    LatinEnumeration squares = latin_completions(empty_latin(n), all, true);
    if (squares.stop != StopReason::complete)
        throw std::runtime_error("intersection check ran out of budget enumerating squares");

    EnumerationBudget unique = budget;
    unique.max_solutions = 2;

    IntersectionReport report;
    report.order = n;
    for (size_t i = 0; i < squares.squares.size(); ++i) {
        const PartialLatin& latin = squares.squares[i];
        PartialLatin meet = empty_latin(n);
        for (int cell = 0; cell < n * n; ++cell) {
            int s = latin.grid[static_cast<size_t>(cell)];
            if (d.cells[static_cast<size_t>(cell)].counts[static_cast<size_t>(s - 1)] == 1)
                meet.grid[static_cast<size_t>(cell)] = s;
        }
        LatinEnumeration completions = latin_completions(meet, unique, true);
        if (completions.stop != StopReason::complete &&
            completions.stop != StopReason::solution_cap)
            throw std::runtime_error("intersection check ran out of budget on a completion");
        ++report.squares_checked;
        std::ostringstream os;
        bool ok = completions.count == 1 && completions.squares.size() == 1 &&
                  completions.squares[0].grid == latin.grid;
        if (ok) {
            os << "square " << (i + 1) << ": ok";
        } else {
            os << "square " << (i + 1) << ": violation completions=" << completions.count;
            ++report.violations;
        }
        report.details.push_back(os.str());
    }
    return report;
}

} // namespace defset
