#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace defset {

// C(n, k) as exact int64; 0 for k < 0 or k > n. All call sites stay far
// below the int64 range.
long long binomial(int n, int k);

// One cell of a rectangle: a multiset over symbols 1..t stored as
// per-symbol counts; counts[s-1] is the multiplicity of symbol s.
struct Cell {
    std::vector<int> counts;

    long long total() const;
    bool empty_cell() const { return total() == 0; }
    // No symbol occurs more than once.
    bool is_set() const;

    auto operator<=>(const Cell&) const = default;
};

// A partial (m,n,t)-balanced rectangle: an m*n grid of multiset cells over
// symbols 1..t, each cell holding at most t entries, each symbol occurring
// at most n times per row and at most m times per column. Cells are stored
// row-major; rows, columns and symbols are 1-based at the API surface.
// "Partial" only promises shape; the caps are checked separately.
struct PartialRectangle {
    int rows = 0;    // m
    int cols = 0;    // n
    int symbols = 0; // t, also the cell capacity

    std::vector<Cell> cells;

    Cell& cell(int r, int c) {
        return cells[static_cast<size_t>(r - 1) * cols + (c - 1)];
    }
    const Cell& cell(int r, int c) const {
        return cells[static_cast<size_t>(r - 1) * cols + (c - 1)];
    }

    // Sum of all multiplicities over all cells.
    long long size() const;

    bool operator==(const PartialRectangle&) const = default;
};

// All-empty m*n grid over t symbols.
PartialRectangle empty_rectangle(int m, int n, int t);

struct Violation {
    enum class Kind { structural, constraint };
    Kind kind;
    std::string message;
};

// Shape first (positive parameters, m*n cells, count vectors of length t,
// nonnegative counts), then the caps: cell total <= t, row symbol counts
// <= n, column symbol counts <= m. Returns the first violation found.
std::optional<Violation> validate_partial_rectangle(const PartialRectangle& p);

// On top of the partial checks: every cell total = t, every row symbol
// count = n, every column symbol count = m.
std::optional<Violation> validate_balanced_rectangle(const PartialRectangle& p);

// A completely balanced rectangle. Only as_balanced and the library's own
// generators construct these, so the invariant is established once.
struct BalancedRectangle {
    PartialRectangle grid;

    bool operator==(const BalancedRectangle&) const = default;
};

// Throws std::invalid_argument with the violation message when p is not
// balanced.
BalancedRectangle as_balanced(const PartialRectangle& p);

// The full rectangle: every cell holds each of 1..t exactly once.
BalancedRectangle full_rectangle(int m, int n, int t);

// inner fits inside outer cellwise (same shape, multiplicities <=).
bool contains(const PartialRectangle& outer, const PartialRectangle& inner);
inline bool contains(const BalancedRectangle& outer, const PartialRectangle& inner) {
    return contains(outer.grid, inner);
}

// Every cell is either empty or holds each symbol exactly once.
bool is_saturated(const PartialRectangle& p);

// A block of a design: a k-subset of 1..v, stored strictly increasing.
struct Block {
    std::vector<int> elements;
    auto operator<=>(const Block&) const = default;
};

// A simple partial design: distinct blocks, kept sorted.
struct PartialDesign {
    int points = 0;     // v
    int block_size = 0; // k
    std::vector<Block> blocks;

    long long size() const { return static_cast<long long>(blocks.size()); }
    bool operator==(const PartialDesign&) const = default;
};

// A design candidate with block multiplicities: every unordered point pair
// must be covered exactly lambda times, repeated blocks allowed.
struct DesignCandidate {
    int points = 0;
    int block_size = 0;
    long long lambda = 0;
    std::map<Block, long long> blocks;

    // Sum of multiplicities.
    long long size() const;
    bool operator==(const DesignCandidate&) const = default;
};

// Pair count of the full design: C(v-2, k-2).
long long full_lambda(int v, int k);

// All C(v,k) blocks, each once.
PartialDesign full_design(int v, int k);
DesignCandidate full_design_candidate(int v, int k);

std::optional<Violation> validate_partial_design(const PartialDesign& d);
// Shape checks plus the exact pair-coverage test: every unordered pair
// from 1..v lies in exactly lambda blocks counted with multiplicity.
std::optional<Violation> validate_design_candidate(const DesignCandidate& d);

// Every block of inner appears in outer (inner is simple).
bool contains(const DesignCandidate& outer, const PartialDesign& inner);

// A partial Latin square; 0 marks an empty cell.
struct PartialLatin {
    int order = 0;
    std::vector<int> grid;

    int& at(int r, int c) { return grid[static_cast<size_t>(r - 1) * order + (c - 1)]; }
    int at(int r, int c) const { return grid[static_cast<size_t>(r - 1) * order + (c - 1)]; }

    bool operator==(const PartialLatin&) const = default;
};

PartialLatin empty_latin(int n);

std::optional<Violation> validate_partial_latin(const PartialLatin& p);

} // namespace defset
