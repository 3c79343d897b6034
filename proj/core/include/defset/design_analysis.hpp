#pragma once

#include <optional>
#include <string>
#include <vector>

#include "defset/exact.hpp"
#include "defset/graph.hpp"
#include "defset/model.hpp"

namespace defset {

// Element pairs {i,j} disjoint from {a,b} such that the design contains
// neither {i,j,a} nor {i,j,b}.
struct PairSet {
    int a = 0, b = 0;
    std::vector<Edge> pairs;

    long long count() const { return static_cast<long long>(pairs.size()); }
};

// Block size 3 only; larger blocks go through project_through first.
// Throws std::invalid_argument on k != 3, a = b or out-of-range elements.
PairSet pairs_avoiding(const PartialDesign& d, int a, int b);

// floor((4v - 11) / 3) for v >= 4: a triple system on v points whose
// avoidance count for some pair exceeds this always admits a swap
// certificate (the avoidance graph on v - 2 vertices passes the even
// closed trail threshold).
long long pair_count_threshold(int v);

// Witness that a partial design extends to at least two candidates: an
// even closed trail in the avoidance graph of {a,b}, alternately swapping
// a for b. For block size k > 3 the swap acts on blocks through the
// k - 3 fixed elements of context.
struct DesignSwapCertificate {
    int points = 0, block_size = 0;
    int a = 0, b = 0;
    // Sorted fixed elements, size block_size - 3; empty when k = 3.
    std::vector<int> context;
    // Vertices are the original element labels; a, b and the context
    // never appear on it.
    ClosedTrail trail;
    // Alternating edge classes of the trail, normalized.
    std::vector<Edge> f1, f2;
};

// k = 3: scans pairs {a,b} in lexicographic order and certifies via the
// first avoidance graph holding an even closed trail. k > 3: scans
// contexts K in lexicographic order, projects to a triple system, and
// lifts the first certificate found. nullopt when nothing certifies.
// Throws std::invalid_argument on an invalid design or k < 3.
std::optional<DesignSwapCertificate> design_certificate(const PartialDesign& d);

// Starts from the full design as a multiset; every f1 edge {i,j} removes
// block {i,j,a} (unioned with the context) and adds a second {i,j,b};
// every f2 edge does the reverse. The result has exact pair coverage,
// differs from the full design, and contains every design whose
// avoidance graph produced the certificate. Throws std::logic_error if a
// removal would drive a multiplicity negative.
DesignCandidate apply_design_swap(const DesignSwapCertificate& cert, int v, int k);

// Header `cert design <v> <k> pair <a> <b>` (plus ` K: ...` when lifted),
// F1:/F2: lines of trail-oriented edges, then the swapped candidate.
std::string serialize(const DesignSwapCertificate& cert);

// Blocks containing every element of fixed, with fixed deleted and the
// remaining ground set relabeled 1..v-|fixed| preserving order.
struct Projection {
    PartialDesign design;
    // to_original[i - 1] is the source label of projected element i.
    std::vector<int> to_original;
};

// |fixed| = k - 3 and k > 3 required; fixed must be sorted, distinct,
// in range.
Projection project_through(const PartialDesign& d, const std::vector<int>& fixed);

// Number of blocks containing every element of fixed, with multiplicity.
long long blocks_containing(const PartialDesign& d, const std::vector<int>& fixed);

// C(k,3) * |D| = sum over all (k-3)-subsets K of the count of blocks
// containing K; exact integer check.
bool incidence_identity_holds(const PartialDesign& d);

enum class DesignBoundKind { triples, projected, general };

// Lower bound on the size of a defining set of the full design F(v,k),
// or, for kind = projected, on the number of its blocks through a fixed
// (k-3)-subset.
struct DesignBoundReport {
    int points = 0, block_size = 0;
    DesignBoundKind kind = DesignBoundKind::triples;
    // Bound before clamping, exactly.
    Surd exact;
    double raw_value = 0.0;
    // Clamped to >= 0.
    double value = 0.0;
    // Smallest integer within 1e-9 of or above value, >= 0.
    long long value_ceil = 0;
    bool clamped = false;
    // C(v, k).
    long long block_total = 0;
    // 1 - value / block_total.
    double complement_fraction = 0.0;
};

// v(v-1)(v - 5/2 - sqrt((32v - 85)/12))/6 for v >= 4.
DesignBoundReport triple_design_bound(int v);

// The triple bound evaluated at v - k + 3, reported against (v, k):
// blocks through any fixed (k-3)-subset number at least this many.
// Requires v >= k >= 3.
DesignBoundReport projected_design_bound(int v, int k);

// C(v,k) * (1 - (1 + sqrt((32(v-k) + 11)/3)) / (2(v-k+1))) for
// v >= k >= 3.
DesignBoundReport general_design_bound(int v, int k);

} // namespace defset
