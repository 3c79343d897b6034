#pragma once

#include <vector>

#include "defset/model.hpp"

namespace defset {

// 0 means unlimited for each cap; at least one cap must be finite.
struct EnumerationBudget {
    long long max_solutions = 2;
    long long max_nodes = 10'000'000;
    double time_cap_seconds = 60.0;
};

enum class StopReason { complete, solution_cap, node_cap, time_cap };
const char* to_string(StopReason r);

// A node is one accepted assignment (cell vector, block multiplicity or
// Latin entry) entering the search; nodes are counted identically for
// every worker count, so budget cutoffs land on the same node.
struct RectEnumeration {
    std::vector<BalancedRectangle> completions;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

// All balanced rectangles containing d, in row-major cell /
// lexicographic count-vector order, up to the budget. Guarded to
// m*n*t <= 64 unless allow_large. Throws std::invalid_argument on an
// invalid rectangle, a degenerate budget or a guard violation.
RectEnumeration enumerate_rect_completions(const PartialRectangle& d,
                                           const EnumerationBudget& budget,
                                           int workers = 1, bool allow_large = false);

enum class OracleStatus { defining, not_defining, budget_exhausted };
const char* to_string(OracleStatus s);

struct RectVerdict {
    OracleStatus status = OracleStatus::budget_exhausted;
    long long completions_found = 0;
    // Up to two completions; a single witness equal to the full
    // rectangle accompanies a defining verdict.
    std::vector<BalancedRectangle> witnesses;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

// Runs the enumerator capped at two solutions. defining: the search
// completed with exactly one completion, the full rectangle. not
// defining: two completions found, a completion other than the full
// rectangle found, or a completed search found none. Anything cut short
// of those conclusions is budget_exhausted.
RectVerdict is_defining_rect(const PartialRectangle& d,
                             EnumerationBudget budget = EnumerationBudget{},
                             int workers = 1, bool allow_large = false);

struct DesignEnumeration {
    std::vector<DesignCandidate> candidates;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

// All block multisets containing d with every pair covered exactly
// lambda times, assigning multiplicities in lexicographic block order.
// Guarded to C(v,k) <= 40 unless allow_large.
DesignEnumeration enumerate_design_candidates(const PartialDesign& d, long long lambda,
                                              const EnumerationBudget& budget,
                                              int workers = 1, bool allow_large = false);

struct DesignVerdict {
    OracleStatus status = OracleStatus::budget_exhausted;
    long long completions_found = 0;
    std::vector<DesignCandidate> witnesses;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

// Verdict against the full design's lambda = C(v-2, k-2).
DesignVerdict is_defining_design(const PartialDesign& d,
                                 EnumerationBudget budget = EnumerationBudget{},
                                 int workers = 1, bool allow_large = false);

struct LatinEnumeration {
    long long count = 0;
    // Filled only when collect is set.
    std::vector<PartialLatin> squares;
    long long nodes = 0;
    StopReason stop = StopReason::complete;
};

// Latin squares of order n extending p, row-major cells with symbols
// tried in increasing order. Guarded to n <= 5 unless allow_large.
LatinEnumeration latin_completions(const PartialLatin& p, const EnumerationBudget& budget,
                                   bool collect = false, int workers = 1,
                                   bool allow_large = false);

// Census deduplication: keeps one representative per relabeling orbit
// (symbol permutations for rectangles and Latin squares, point
// permutations for designs), the lexicographically least. Changes
// counts; meant for the empty-set census only.
bool census_canonical(const BalancedRectangle& r);
bool census_canonical(const DesignCandidate& d);
bool census_canonical(const PartialLatin& p);

} // namespace defset
