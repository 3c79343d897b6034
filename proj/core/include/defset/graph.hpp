#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace defset {

// Undirected edge, normalized so first < second. Vertices are 1-based.
using Edge = std::pair<int, int>;

// Normalizes; throws std::invalid_argument on a loop.
Edge make_edge(int u, int v);

struct SimpleGraph {
    int vertex_count = 0;
    // Sorted, unique, normalized.
    std::vector<Edge> edges;

    bool has_edge(int u, int v) const;
};

// Normalizes, sorts and checks ranges; throws std::invalid_argument on
// loops, duplicates or out-of-range endpoints.
SimpleGraph make_graph(int vertex_count, std::vector<Edge> edges);

// A closed walk with no repeated edge, stored as its vertex sequence
// v0 v1 ... v_{L-1}; edge i joins walk[i] and walk[(i+1) % L]. Length L is
// the number of edges.
struct ClosedTrail {
    std::vector<int> walk;

    int length() const { return static_cast<int>(walk.size()); }
    bool even() const { return length() % 2 == 0; }
    // Normalized edges in traversal order.
    std::vector<Edge> edges() const;
    // Traversal-oriented vertex pairs, one per edge.
    std::vector<std::pair<int, int>> oriented_edges() const;
};

// Checks that every step is an edge of g and no edge repeats; returns a
// description of the first problem found.
std::optional<std::string> validate_trail(const SimpleGraph& g, const ClosedTrail& t);

// floor((4v - 3) / 3): a simple graph on v vertices with more edges than
// this always has an even closed trail.
long long even_circuit_threshold(int v);

// An even closed trail of g, or nullopt when none exists. Looks for an
// even simple cycle first (lexicographically least by length, then sorted
// edge list); failing that, splices the first pair of edge-disjoint odd
// simple cycles that share a vertex. Deterministic.
std::optional<ClosedTrail> find_even_circuit(const SimpleGraph& g);

// Any simple cycle of a bipartite graph with parts {1..left_count} and
// {left_count+1..vertex_count}; nullopt iff g is a forest. Cycles in a
// bipartite graph are even. Throws std::invalid_argument if an edge fails
// to cross the parts. Deterministic, same tie-break as above.
std::optional<ClosedTrail> find_cycle_bipartite(const SimpleGraph& g, int left_count);

// Edges at odd positions (first, third, ...) and at even positions of an
// even closed trail. The parts have equal size, partition the trail's
// edges, and meet every vertex equally often. Throws std::invalid_argument
// on an odd trail.
std::pair<std::vector<Edge>, std::vector<Edge>> alternate_partition(const ClosedTrail& t);

// True when every vertex touches the same number of f1 and f2 edges.
bool degree_balanced(const std::vector<Edge>& f1, const std::vector<Edge>& f2);

// Exhaustive reference: does g contain any even closed trail? Guarded to
// at most 8 vertices.
bool even_circuit_exists_brute(const SimpleGraph& g);

} // namespace defset
