#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defset/exact.hpp"
#include "defset/graph.hpp"
#include "defset/model.hpp"

namespace defset {

// Cells of a partial rectangle containing neither symbol of a pair.
struct CellSet {
    int a = 0, b = 0;
    // (row, column), 1-based, row-major order.
    std::vector<std::pair<int, int>> cells;

    long long count() const { return static_cast<long long>(cells.size()); }
};

// All cells with no occurrence of a and none of b; empty cells qualify.
// Throws std::invalid_argument on a = b or a symbol out of range.
CellSet cells_avoiding(const PartialRectangle& d, int a, int b);

// Witness that a partial rectangle extends to at least two balanced
// rectangles: a cycle in the bipartite row/column graph over the cells
// avoiding {a,b}, split into the two perfect matchings of the cycle.
struct RectSwapCertificate {
    int rows = 0, cols = 0, symbols = 0;
    int a = 0, b = 0;
    // Vertices 1..rows are rows, rows+1..rows+cols are columns.
    ClosedTrail cycle;
    // Cells of the cycle's edges in traversal order: m1 takes the even
    // positions (0, 2, ...), m2 the odd ones. Each is a matching.
    std::vector<std::pair<int, int>> m1, m2;
};

// Scans symbol pairs {a,b} in lexicographic order and returns a
// certificate built from the least cycle of the first pair whose
// avoidance graph has one; nullopt when every such graph is a forest.
// A certificate proves d completes to more than one balanced rectangle.
// Throws std::invalid_argument when t < 2, d is invalid, or a cell
// repeats a symbol (analysis needs set-valued cells).
std::optional<RectSwapCertificate> rect_certificate(const PartialRectangle& d);

// Starts from the full rectangle and swaps the pair along the cycle:
// m1 cells lose one a and gain one b, m2 cells the reverse. The result
// is balanced, differs from the full rectangle, and contains every
// rectangle whose avoidance graph produced the certificate.
BalancedRectangle apply_rect_swap(const RectSwapCertificate& cert);

// Header `cert rect <m> <n> <t> pair <a> <b>`, M1:/M2: lines of r,c
// cells in traversal order, then the swapped rectangle.
std::string serialize(const RectSwapCertificate& cert);

// Entry totals against the capacity needed to pin down every symbol pair
// in every cell. A partial rectangle whose missing-pair total exceeds the
// cap cannot be a defining set.
struct DeficiencyStats {
    // Sum of e(i,j), the per-cell entry totals.
    long long entry_total = 0;
    // Sum of (t-e)(t-e-1)/2 over cells.
    long long missing_pair_total = 0;
    // t(t-1)(m+n-1)/2.
    long long missing_pair_cap = 0;
    bool cap_satisfied = false;
};

// Throws std::invalid_argument on an invalid rectangle or a cell with a
// repeated symbol.
DeficiencyStats deficiency_stats(const PartialRectangle& d);

enum class BoundVariant { verbatim, corrected };

// Lower bound on the size of a defining set of the full rectangle.
struct RectBoundReport {
    int rows = 0, cols = 0, symbols = 0;
    BoundVariant variant = BoundVariant::verbatim;
    // Bound before clamping, exactly.
    Surd exact;
    // t - 1/2 - e*, the per-cell entry deficit multiplier.
    Surd lambda_prime_exact;
    double lambda_prime = 0.0;
    double raw_value = 0.0;
    // Clamped to >= 0.
    double lower_bound = 0.0;
    // Smallest integer within 1e-9 of or above lower_bound, >= 0.
    long long lower_bound_ceil = 0;
    bool clamped = false;
    // lower_bound / (m*n*t).
    double ratio = 0.0;
};

// variant = verbatim evaluates m*n*(t - 1/2 - sqrt(t(t-1)(m+n-1)/(2mn) + 1/4)).
// variant = corrected evaluates m*n*e* where e* is the smaller root of
// (t-e)(t-e-1)/2 = t(t-1)(m+n-1)/(2mn), clamped into [0, t-1/2].
// Throws std::invalid_argument when m < 1, n < 1 or t < 2.
RectBoundReport rect_lower_bound(int m, int n, int t, BoundVariant variant);

// rect_lower_bound(n, n, n, variant); requires n >= 2. The ratio field
// tracks lower_bound / n^3.
RectBoundReport square_lower_bound(int n, BoundVariant variant);

} // namespace defset
