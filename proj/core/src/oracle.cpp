#include "defset/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

namespace defset {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::complete: return "complete";
        case StopReason::solution_cap: return "solution-cap";
        case StopReason::node_cap: return "node-cap";
        case StopReason::time_cap: return "time-cap";
    }
    return "?";
}

const char* to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::defining: return "defining";
        case OracleStatus::not_defining: return "not-defining";
        case OracleStatus::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

void check_budget(const EnumerationBudget& b) {
    if (b.max_solutions < 0 || b.max_nodes < 0 || b.time_cap_seconds < 0)
        throw std::invalid_argument("budget caps must be nonnegative");
    if (b.max_solutions == 0 && b.max_nodes == 0 && b.time_cap_seconds == 0)
        throw std::invalid_argument("budget needs at least one finite cap");
}

int clamp_workers(int workers) {
    if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
    return std::min(workers, 16);
}

// Per-branch budget bookkeeping. Node ids are branch-local and start at
// 1; the merge below shifts them into the global sequence.
struct Gate {
    long long max_nodes = 0;
    long long max_solutions = 0;
    std::optional<Clock::time_point> deadline;
    long long nodes = 0;
    long long solutions = 0;
    StopReason stop = StopReason::complete;
    bool stopping = false;

    bool accept_node() {
        ++nodes;
        if (max_nodes && nodes > max_nodes) {
            stop = StopReason::node_cap;
            stopping = true;
            return false;
        }
        if (deadline && (nodes & 1023) == 0 && Clock::now() > *deadline) {
            stop = StopReason::time_cap;
            stopping = true;
            return false;
        }
        return true;
    }

    void accept_solution() {
        ++solutions;
        if (max_solutions && solutions >= max_solutions) {
            stop = StopReason::solution_cap;
            stopping = true;
        }
    }
};

template <typename Sol>
struct BranchOutcome {
    // (branch-local node id, solution) in discovery order.
    std::vector<std::pair<long long, Sol>> found;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

template <typename Sol>
struct Merged {
    std::vector<Sol> solutions;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

// Replays branch outcomes in canonical branch order against the global
// budget, reconstructing exactly where a single sequential search would
// have stopped. Branches explore with the full global caps, so nothing
// below the reconstructed cutoff is ever missing.
template <typename Sol>
struct MergeState {
    EnumerationBudget budget;
    Merged<Sol> out;
    long long cum = 0;
    bool stopped = false;

    void add(BranchOutcome<Sol>& br) {
        if (stopped) return;
        for (auto& [local, sol] : br.found) {
            if (budget.max_nodes && cum + local > budget.max_nodes) {
                finish(StopReason::node_cap, budget.max_nodes + 1);
                return;
            }
            out.solutions.push_back(std::move(sol));
            if (budget.max_solutions &&
                static_cast<long long>(out.solutions.size()) >= budget.max_solutions) {
                finish(StopReason::solution_cap, cum + local);
                return;
            }
        }
        if (budget.max_nodes && cum + br.nodes > budget.max_nodes) {
            finish(StopReason::node_cap, budget.max_nodes + 1);
            return;
        }
        cum += br.nodes;
        if (br.stop == StopReason::time_cap) finish(StopReason::time_cap, cum);
    }

    void finish(StopReason reason, long long nodes) {
        out.stop = reason;
        out.nodes = nodes;
        stopped = true;
    }

    Merged<Sol> take() {
        if (!stopped) out.nodes = cum;
        return std::move(out);
    }
};

// Runs one branch per first-level choice, merging results in branch
// order as they complete; once the merged prefix hits a cap, no further
// branches are issued. With workers = 1 this degenerates to an in-order
// scan that stops early, i.e. a plain sequential search.
template <typename Sol, typename RunBranch>
Merged<Sol> run_branches(size_t branch_count, int workers, const EnumerationBudget& budget,
                         RunBranch run) {
    std::mutex mu;
    size_t next_branch = 0;
    size_t frontier = 0;
    bool stop_issuing = false;
    std::vector<std::optional<BranchOutcome<Sol>>> slots(branch_count);
    MergeState<Sol> merge{budget, {}, 0, false};

    auto worker = [&] {
        while (true) {
            size_t mine;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (stop_issuing || next_branch == branch_count) return;
                mine = next_branch++;
            }
            BranchOutcome<Sol> out = run(mine);
            {
                std::lock_guard<std::mutex> lock(mu);
                slots[mine] = std::move(out);
                while (frontier < branch_count && slots[frontier]) {
                    merge.add(*slots[frontier]);
                    slots[frontier].reset();
                    ++frontier;
                    if (merge.stopped) {
                        stop_issuing = true;
                        break;
                    }
                }
            }
        }
    };

    size_t pool_size = std::min(static_cast<size_t>(workers), std::max<size_t>(branch_count, 1));
    if (pool_size <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(pool_size);
        for (size_t i = 0; i < pool_size; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return merge.take();
}

std::optional<Clock::time_point> make_deadline(const EnumerationBudget& b) {
    if (b.time_cap_seconds == 0) return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(b.time_cap_seconds));
}

// ---------------------------------------------------------------------
// Balanced-rectangle completions.

class RectSearch {
public:
    RectSearch(const PartialRectangle& d, const std::optional<Clock::time_point>& deadline,
               const EnumerationBudget& budget)
        : d_(d), m_(d.rows), n_(d.cols), t_(d.symbols), cells_(m_ * n_) {
        gate_.max_nodes = budget.max_nodes;
        gate_.max_solutions = budget.max_solutions;
        gate_.deadline = deadline;
        row_need_.assign(static_cast<size_t>(m_) * t_, n_);
        col_need_.assign(static_cast<size_t>(n_) * t_, m_);
        row_suffix_.assign(static_cast<size_t>(cells_) * t_, 0);
        col_suffix_.assign(static_cast<size_t>(cells_) * t_, 0);
        lo_.assign(static_cast<size_t>(cells_) * t_, 0);
        for (int i = 0; i < cells_; ++i) {
            const Cell& cell = d.cells[static_cast<size_t>(i)];
            for (int s = 0; s < t_; ++s) lo_[at(i, s)] = cell.counts[static_cast<size_t>(s)];
        }
        for (int i = cells_ - 1; i >= 0; --i) {
            int r = i / n_, c = i % n_;
            for (int s = 0; s < t_; ++s) {
                if (c + 1 < n_) row_suffix_[at(i, s)] = row_suffix_[at(i + 1, s)] + lo_[at(i + 1, s)];
                if (r + 1 < m_) col_suffix_[at(i, s)] = col_suffix_[at(i + n_, s)] + lo_[at(i + n_, s)];
            }
        }
        work_ = empty_rectangle(m_, n_, t_);
    }

    // Candidate count vectors for the first cell, in lexicographic order.
    std::vector<std::vector<int>> root_choices() {
        std::vector<std::vector<int>> out;
        if (cells_ == 0) return out;
        for_each_candidate(0, [&](const std::vector<int>& x) {
            out.push_back(x);
            return true;
        });
        return out;
    }

    BranchOutcome<BalancedRectangle> run_branch(const std::vector<int>& first) {
        BranchOutcome<BalancedRectangle> out;
        apply(0, first);
        if (gate_.accept_node()) {
            if (cells_ == 1)
                record(out);
            else
                dfs(1, out);
        }
        undo(0, first);
        out.nodes = gate_.nodes;
        out.stop = gate_.stop;
        return out;
    }

private:
    size_t at(int cell, int s) const { return static_cast<size_t>(cell) * t_ + s; }

    template <typename F>
    void for_each_candidate(int cell, F&& emit) {
        int r = cell / n_, c = cell % n_;
        std::vector<int> hi(static_cast<size_t>(t_));
        for (int s = 0; s < t_; ++s) {
            int h = std::min(row_need_[static_cast<size_t>(r) * t_ + s] -
                                 row_suffix_[at(cell, s)],
                             col_need_[static_cast<size_t>(c) * t_ + s] -
                                 col_suffix_[at(cell, s)]);
            if (h < lo_[at(cell, s)]) return;
            hi[static_cast<size_t>(s)] = h;
        }
        // Suffix totals of the bounds, for pruning the vector build.
        std::vector<int> lo_tail(static_cast<size_t>(t_) + 1, 0),
            hi_tail(static_cast<size_t>(t_) + 1, 0);
        for (int s = t_ - 1; s >= 0; --s) {
            lo_tail[static_cast<size_t>(s)] = lo_tail[static_cast<size_t>(s) + 1] + lo_[at(cell, s)];
            hi_tail[static_cast<size_t>(s)] =
                hi_tail[static_cast<size_t>(s) + 1] + hi[static_cast<size_t>(s)];
        }
        std::vector<int> x(static_cast<size_t>(t_), 0);
        auto build = [&](auto&& self, int s, int rem) -> bool {
            if (s == t_) return emit(x);
            int lo_s = std::max(lo_[at(cell, s)], rem - hi_tail[static_cast<size_t>(s) + 1]);
            int hi_s = std::min(hi[static_cast<size_t>(s)],
                                rem - lo_tail[static_cast<size_t>(s) + 1]);
            for (int v = lo_s; v <= hi_s; ++v) {
                x[static_cast<size_t>(s)] = v;
                if (!self(self, s + 1, rem - v)) return false;
            }
            x[static_cast<size_t>(s)] = 0;
            return true;
        };
        build(build, 0, t_);
    }

    void apply(int cell, const std::vector<int>& x) {
        int r = cell / n_, c = cell % n_;
        for (int s = 0; s < t_; ++s) {
            row_need_[static_cast<size_t>(r) * t_ + s] -= x[static_cast<size_t>(s)];
            col_need_[static_cast<size_t>(c) * t_ + s] -= x[static_cast<size_t>(s)];
        }
        work_.cells[static_cast<size_t>(cell)].counts = x;
    }

    void undo(int cell, const std::vector<int>& x) {
        int r = cell / n_, c = cell % n_;
        for (int s = 0; s < t_; ++s) {
            row_need_[static_cast<size_t>(r) * t_ + s] += x[static_cast<size_t>(s)];
            col_need_[static_cast<size_t>(c) * t_ + s] += x[static_cast<size_t>(s)];
        }
    }

    void record(BranchOutcome<BalancedRectangle>& out) {
        if (auto viol = validate_balanced_rectangle(work_))
            throw std::logic_error("enumerated completion failed validation: " + viol->message);
        if (!contains(BalancedRectangle{work_}, d_))
            throw std::logic_error("enumerated completion does not contain the input");
        out.found.emplace_back(gate_.nodes, BalancedRectangle{work_});
        gate_.accept_solution();
    }

    void dfs(int cell, BranchOutcome<BalancedRectangle>& out) {
        for_each_candidate(cell, [&](const std::vector<int>& x) {
            apply(cell, x);
            if (gate_.accept_node()) {
                if (cell + 1 == cells_)
                    record(out);
                else
                    dfs(cell + 1, out);
            }
            undo(cell, x);
            return !gate_.stopping;
        });
    }

    const PartialRectangle& d_;
    int m_, n_, t_, cells_;
    Gate gate_;
    std::vector<int> row_need_, col_need_, row_suffix_, col_suffix_, lo_;
    PartialRectangle work_;
};

// ---------------------------------------------------------------------
// Design candidates.

class DesignSearch {
public:
    DesignSearch(const PartialDesign& d, long long lambda,
                 const std::optional<Clock::time_point>& deadline,
                 const EnumerationBudget& budget)
        : d_(d), v_(d.points), k_(d.block_size), lambda_(lambda) {
        gate_.max_nodes = budget.max_nodes;
        gate_.max_solutions = budget.max_solutions;
        gate_.deadline = deadline;

        std::vector<int> pick(static_cast<size_t>(k_));
        for (int i = 0; i < k_; ++i) pick[static_cast<size_t>(i)] = i + 1;
        while (true) {
            blocks_.push_back(Block{pick});
            int i = k_ - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == v_ - (k_ - 1 - i)) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < k_; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }

        lo_.assign(blocks_.size(), 0);
        for (size_t i = 0; i < blocks_.size(); ++i)
            if (std::binary_search(d.blocks.begin(), d.blocks.end(), blocks_[i])) lo_[i] = 1;

        residual_.assign(static_cast<size_t>(v_) * v_, 0);
        last_cover_.assign(static_cast<size_t>(v_) * v_, -1);
        for (int x = 1; x <= v_; ++x)
            for (int y = x + 1; y <= v_; ++y) residual_[pair_at(x, y)] = lambda_;
        block_pairs_.resize(blocks_.size());
        for (size_t i = 0; i < blocks_.size(); ++i) {
            const auto& e = blocks_[i].elements;
            for (size_t p = 0; p < e.size(); ++p)
                for (size_t q = p + 1; q < e.size(); ++q) {
                    size_t idx = pair_at(e[p], e[q]);
                    block_pairs_[i].push_back(idx);
                    last_cover_[idx] = static_cast<int>(i);
                }
        }
        mult_.assign(blocks_.size(), 0);
    }

    std::vector<long long> root_choices() {
        std::vector<long long> out;
        if (blocks_.empty()) return out;
        for_each_candidate(0, [&](long long v) {
            out.push_back(v);
            return true;
        });
        return out;
    }

    BranchOutcome<DesignCandidate> run_branch(long long first) {
        BranchOutcome<DesignCandidate> out;
        if (blocks_.empty()) return out;
        apply(0, first);
        if (gate_.accept_node()) {
            if (blocks_.size() == 1)
                record(out);
            else
                dfs(1, out);
        }
        undo(0, first);
        out.nodes = gate_.nodes;
        out.stop = gate_.stop;
        return out;
    }

private:
    size_t pair_at(int x, int y) const {
        return static_cast<size_t>(x - 1) * v_ + (y - 1);
    }

    template <typename F>
    void for_each_candidate(size_t block, F&& emit) {
        long long lo = lo_[block], hi = lambda_;
        std::optional<long long> forced;
        for (size_t idx : block_pairs_[block]) {
            hi = std::min(hi, residual_[idx]);
            if (last_cover_[idx] == static_cast<int>(block)) {
                if (forced && *forced != residual_[idx]) return;
                forced = residual_[idx];
            }
        }
        if (forced) {
            if (*forced >= lo && *forced <= hi) emit(*forced);
            return;
        }
        for (long long v = lo; v <= hi; ++v)
            if (!emit(v)) return;
    }

    void apply(size_t block, long long v) {
        mult_[block] = v;
        for (size_t idx : block_pairs_[block]) residual_[idx] -= v;
    }

    void undo(size_t block, long long v) {
        mult_[block] = 0;
        for (size_t idx : block_pairs_[block]) residual_[idx] += v;
    }

    void record(BranchOutcome<DesignCandidate>& out) {
        DesignCandidate cand{v_, k_, lambda_, {}};
        for (size_t i = 0; i < blocks_.size(); ++i)
            if (mult_[i] > 0) cand.blocks.emplace(blocks_[i], mult_[i]);
        if (auto viol = validate_design_candidate(cand))
            throw std::logic_error("enumerated candidate failed validation: " + viol->message);
        if (!contains(cand, d_))
            throw std::logic_error("enumerated candidate does not contain the input");
        out.found.emplace_back(gate_.nodes, std::move(cand));
        gate_.accept_solution();
    }

    void dfs(size_t block, BranchOutcome<DesignCandidate>& out) {
        for_each_candidate(block, [&](long long v) {
            apply(block, v);
            if (gate_.accept_node()) {
                if (block + 1 == blocks_.size())
                    record(out);
                else
                    dfs(block + 1, out);
            }
            undo(block, v);
            return !gate_.stopping;
        });
    }

    const PartialDesign& d_;
    int v_, k_;
    long long lambda_;
    Gate gate_;
    std::vector<Block> blocks_;
    std::vector<long long> lo_, mult_, residual_;
    std::vector<int> last_cover_;
    std::vector<std::vector<size_t>> block_pairs_;
};

// ---------------------------------------------------------------------
// Latin-square completions.

class LatinSearch {
public:
    LatinSearch(const PartialLatin& p, bool collect,
                const std::optional<Clock::time_point>& deadline,
                const EnumerationBudget& budget)
        : p_(p), n_(p.order), cells_(n_ * n_), collect_(collect) {
        gate_.max_nodes = budget.max_nodes;
        gate_.max_solutions = budget.max_solutions;
        gate_.deadline = deadline;
        row_mask_.assign(static_cast<size_t>(n_), 0u);
        col_mask_.assign(static_cast<size_t>(n_), 0u);
        work_ = empty_latin(n_);
    }

    std::vector<int> root_choices() {
        std::vector<int> out;
        for_each_candidate(0, [&](int v) {
            out.push_back(v);
            return true;
        });
        return out;
    }

    BranchOutcome<PartialLatin> run_branch(int first) {
        BranchOutcome<PartialLatin> out;
        apply(0, first);
        if (gate_.accept_node()) {
            if (cells_ == 1)
                record(out);
            else
                dfs(1, out);
        }
        undo(0, first);
        out.nodes = gate_.nodes;
        out.stop = gate_.stop;
        return out;
    }

private:
    template <typename F>
    void for_each_candidate(int cell, F&& emit) {
        int r = cell / n_, c = cell % n_;
        int preset = p_.grid[static_cast<size_t>(cell)];
        unsigned used = row_mask_[static_cast<size_t>(r)] | col_mask_[static_cast<size_t>(c)];
        if (preset != 0) {
            if (!(used & (1u << preset))) emit(preset);
            return;
        }
        for (int v = 1; v <= n_; ++v) {
            if (used & (1u << v)) continue;
            if (!emit(v)) return;
        }
    }

    void apply(int cell, int v) {
        int r = cell / n_, c = cell % n_;
        row_mask_[static_cast<size_t>(r)] |= 1u << v;
        col_mask_[static_cast<size_t>(c)] |= 1u << v;
        work_.grid[static_cast<size_t>(cell)] = v;
    }

    void undo(int cell, int v) {
        int r = cell / n_, c = cell % n_;
        row_mask_[static_cast<size_t>(r)] &= ~(1u << v);
        col_mask_[static_cast<size_t>(c)] &= ~(1u << v);
        work_.grid[static_cast<size_t>(cell)] = 0;
    }

    void record(BranchOutcome<PartialLatin>& out) {
        out.found.emplace_back(gate_.nodes, collect_ ? work_ : PartialLatin{});
        gate_.accept_solution();
    }

    void dfs(int cell, BranchOutcome<PartialLatin>& out) {
        for_each_candidate(cell, [&](int v) {
            apply(cell, v);
            if (gate_.accept_node()) {
                if (cell + 1 == cells_)
                    record(out);
                else
                    dfs(cell + 1, out);
            }
            undo(cell, v);
            return !gate_.stopping;
        });
    }

    const PartialLatin& p_;
    int n_, cells_;
    bool collect_;
    Gate gate_;
    std::vector<unsigned> row_mask_, col_mask_;
    PartialLatin work_;
};

} // namespace

RectEnumeration enumerate_rect_completions(const PartialRectangle& d,
                                           const EnumerationBudget& budget, int workers,
                                           bool allow_large) {
    if (auto viol = validate_partial_rectangle(d)) throw std::invalid_argument(viol->message);
    check_budget(budget);
    workers = clamp_workers(workers);
    if (!allow_large &&
        static_cast<long long>(d.rows) * d.cols * d.symbols > 64)
        throw std::invalid_argument(
            "rectangle enumeration beyond m*n*t = 64 needs the large-instance override");

    auto deadline = make_deadline(budget);
    RectSearch probe(d, deadline, budget);
    std::vector<std::vector<int>> roots = probe.root_choices();
    Merged<BalancedRectangle> merged = run_branches<BalancedRectangle>(
        roots.size(), workers, budget, [&](size_t i) {
            RectSearch search(d, deadline, budget);
            return search.run_branch(roots[i]);
        });
    return RectEnumeration{std::move(merged.solutions), merged.nodes, merged.stop};
}

RectVerdict is_defining_rect(const PartialRectangle& d, EnumerationBudget budget, int workers,
                             bool allow_large) {
    budget.max_solutions = 2;
    RectEnumeration e = enumerate_rect_completions(d, budget, workers, allow_large);
    RectVerdict verdict;
    verdict.completions_found = static_cast<long long>(e.completions.size());
    verdict.nodes = e.nodes;
    verdict.stop = e.stop;
    BalancedRectangle full = full_rectangle(d.rows, d.cols, d.symbols);
    bool non_full_witness =
        std::any_of(e.completions.begin(), e.completions.end(),
                    [&](const BalancedRectangle& r) { return !(r.grid == full.grid); });
    if (verdict.completions_found >= 2 || non_full_witness)
        verdict.status = OracleStatus::not_defining;
    else if (e.stop == StopReason::complete)
        verdict.status = verdict.completions_found == 1 ? OracleStatus::defining
                                                        : OracleStatus::not_defining;
    else
        verdict.status = OracleStatus::budget_exhausted;
    verdict.witnesses = std::move(e.completions);
    return verdict;
}

DesignEnumeration enumerate_design_candidates(const PartialDesign& d, long long lambda,
                                              const EnumerationBudget& budget, int workers,
                                              bool allow_large) {
    if (auto viol = validate_partial_design(d)) throw std::invalid_argument(viol->message);
    if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
    check_budget(budget);
    workers = clamp_workers(workers);
    if (!allow_large && binomial(d.points, d.block_size) > 40)
        throw std::invalid_argument(
            "design enumeration beyond C(v,k) = 40 blocks needs the large-instance override");

    auto deadline = make_deadline(budget);
    DesignSearch probe(d, lambda, deadline, budget);
    std::vector<long long> roots = probe.root_choices();
    Merged<DesignCandidate> merged = run_branches<DesignCandidate>(
        roots.size(), workers, budget, [&](size_t i) {
            DesignSearch search(d, lambda, deadline, budget);
            return search.run_branch(roots[i]);
        });
    return DesignEnumeration{std::move(merged.solutions), merged.nodes, merged.stop};
}

DesignVerdict is_defining_design(const PartialDesign& d, EnumerationBudget budget, int workers,
                                 bool allow_large) {
    budget.max_solutions = 2;
    long long lambda = full_lambda(d.points, d.block_size);
    DesignEnumeration e = enumerate_design_candidates(d, lambda, budget, workers, allow_large);
    DesignVerdict verdict;
    verdict.completions_found = static_cast<long long>(e.candidates.size());
    verdict.nodes = e.nodes;
    verdict.stop = e.stop;
    DesignCandidate full = full_design_candidate(d.points, d.block_size);
    bool non_full_witness =
        std::any_of(e.candidates.begin(), e.candidates.end(), [&](const DesignCandidate& c) {
            return c.blocks != full.blocks;
        });
    if (verdict.completions_found >= 2 || non_full_witness)
        verdict.status = OracleStatus::not_defining;
    else if (e.stop == StopReason::complete)
        verdict.status = verdict.completions_found == 1 ? OracleStatus::defining
                                                        : OracleStatus::not_defining;
    else
        verdict.status = OracleStatus::budget_exhausted;
    verdict.witnesses = std::move(e.candidates);
    return verdict;
}

LatinEnumeration latin_completions(const PartialLatin& p, const EnumerationBudget& budget,
                                   bool collect, int workers, bool allow_large) {
    if (auto viol = validate_partial_latin(p)) throw std::invalid_argument(viol->message);
    check_budget(budget);
    workers = clamp_workers(workers);
    if (!allow_large && p.order > 5)
        throw std::invalid_argument("Latin enumeration beyond order 5 needs the large-instance override");

    auto deadline = make_deadline(budget);
    LatinSearch probe(p, collect, deadline, budget);
    std::vector<int> roots = probe.root_choices();
    Merged<PartialLatin> merged =
        run_branches<PartialLatin>(roots.size(), workers, budget, [&](size_t i) {
            LatinSearch search(p, collect, deadline, budget);
            return search.run_branch(roots[i]);
        });
    LatinEnumeration out;
    out.count = static_cast<long long>(merged.solutions.size());
    out.nodes = merged.nodes;
    out.stop = merged.stop;
    if (collect) out.squares = std::move(merged.solutions);
    return out;
}

bool census_canonical(const BalancedRectangle& r) {
    int t = r.grid.symbols;
    if (t > 6)
        throw std::invalid_argument("census canonicalization beyond 6 symbols is not supported");
    std::vector<int> perm(static_cast<size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Cell> relabeled(r.grid.cells.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (size_t i = 0; i < r.grid.cells.size(); ++i) {
            relabeled[i].counts.assign(static_cast<size_t>(t), 0);
            for (int s = 0; s < t; ++s)
                relabeled[i].counts[static_cast<size_t>(perm[static_cast<size_t>(s)])] =
                    r.grid.cells[i].counts[static_cast<size_t>(s)];
        }
        if (relabeled < r.grid.cells) return false;
    }
    return true;
}

bool census_canonical(const DesignCandidate& d) {
    if (d.points > 8)
        throw std::invalid_argument("census canonicalization beyond 8 points is not supported");
    std::vector<int> perm(static_cast<size_t>(d.points));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::pair<Block, long long>> original(d.blocks.begin(), d.blocks.end());
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::map<Block, long long> relabeled;
        for (const auto& [b, mult] : d.blocks) {
            Block nb;
            nb.elements.reserve(b.elements.size());
            for (int x : b.elements)
                nb.elements.push_back(perm[static_cast<size_t>(x) - 1]);
            std::sort(nb.elements.begin(), nb.elements.end());
            relabeled[std::move(nb)] += mult;
        }
        std::vector<std::pair<Block, long long>> flat(relabeled.begin(), relabeled.end());
        if (flat < original) return false;
    }
    return true;
}

bool census_canonical(const PartialLatin& p) {
    if (p.order > 5)
        throw std::invalid_argument("census canonicalization beyond order 5 is not supported");
    std::vector<int> perm(static_cast<size_t>(p.order));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<int> relabeled(p.grid.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (size_t i = 0; i < p.grid.size(); ++i)
            relabeled[i] = p.grid[i] == 0 ? 0 : perm[static_cast<size_t>(p.grid[i]) - 1];
        if (relabeled < p.grid) return false;
    }
    return true;
}

} // namespace defset
