#include "defset/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace defset {

Edge make_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("loop edge at vertex " + std::to_string(u));
    return u < v ? Edge{u, v} : Edge{v, u};
}

bool SimpleGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    return std::binary_search(edges.begin(), edges.end(), make_edge(u, v));
}

SimpleGraph make_graph(int vertex_count, std::vector<Edge> edges) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    for (Edge& e : edges) {
        e = make_edge(e.first, e.second);
        if (e.first < 1 || e.second > vertex_count)
            throw std::invalid_argument("edge endpoint outside 1.." +
                                        std::to_string(vertex_count));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    return SimpleGraph{vertex_count, std::move(edges)};
}

std::vector<Edge> ClosedTrail::edges() const {
    std::vector<Edge> out;
    out.reserve(walk.size());
    for (size_t i = 0; i < walk.size(); ++i)
        out.push_back(make_edge(walk[i], walk[(i + 1) % walk.size()]));
    return out;
}

std::vector<std::pair<int, int>> ClosedTrail::oriented_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(walk.size());
    for (size_t i = 0; i < walk.size(); ++i)
        out.emplace_back(walk[i], walk[(i + 1) % walk.size()]);
    return out;
}

std::optional<std::string> validate_trail(const SimpleGraph& g, const ClosedTrail& t) {
    if (t.walk.size() < 3) return "trail has fewer than 3 edges";
    std::vector<Edge> seen;
    for (size_t i = 0; i < t.walk.size(); ++i) {
        int u = t.walk[i], v = t.walk[(i + 1) % t.walk.size()];
        if (u == v) return "trail step from a vertex to itself";
        if (!g.has_edge(u, v))
            return "trail step {" + std::to_string(u) + "," + std::to_string(v) +
                   "} is not an edge of the graph";
        seen.push_back(make_edge(u, v));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return "trail repeats an edge";
    return std::nullopt;
}

long long even_circuit_threshold(int v) {
    if (v < 1) throw std::invalid_argument("vertex count must be positive");
    return (4LL * v - 3) / 3;
}

namespace {

std::vector<std::vector<int>> adjacency(const SimpleGraph& g) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(g.vertex_count) + 1);
    for (const Edge& e : g.edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

std::vector<Edge> sorted_edges_of_walk(const std::vector<int>& walk) {
    std::vector<Edge> es;
    es.reserve(walk.size());
    for (size_t i = 0; i < walk.size(); ++i)
        es.push_back(make_edge(walk[i], walk[(i + 1) % walk.size()]));
    std::sort(es.begin(), es.end());
    return es;
}

// Emits every simple cycle of exactly the requested length once, as a walk
// whose first vertex is the cycle's smallest and whose second vertex is
// smaller than its last (canonical direction). Walks are emitted in DFS
// order over ascending starts and ascending neighbors.
void cycles_of_length(const std::vector<std::vector<int>>& adj, int length,
                      const std::function<void(const std::vector<int>&)>& emit) {
    int n = static_cast<int>(adj.size()) - 1;
    std::vector<int> path;
    std::vector<char> on_path(static_cast<size_t>(n) + 1, 0);

    auto dfs = [&](auto&& self, int v) -> void {
        if (static_cast<int>(path.size()) == length) {
            int start = path[0];
            if (path[1] < path.back() &&
                std::binary_search(adj[v].begin(), adj[v].end(), start))
                emit(path);
            return;
        }
        for (int w : adj[v]) {
            if (w <= path[0] || on_path[w]) continue;
            path.push_back(w);
            on_path[w] = 1;
            self(self, w);
            on_path[w] = 0;
            path.pop_back();
        }
    };

    for (int s = 1; s <= n; ++s) {
        path.assign(1, s);
        on_path.assign(static_cast<size_t>(n) + 1, 0);
        on_path[s] = 1;
        dfs(dfs, s);
    }
}

// The walk of the cycle with the least (length, sorted edge list), or
// empty when no cycle of any accepted length exists.
std::vector<int> least_cycle(const std::vector<std::vector<int>>& adj, int max_length,
                             bool even_only) {
    for (int length = even_only ? 4 : 3; length <= max_length;
         length += even_only ? 2 : 1) {
        std::vector<int> best;
        std::vector<Edge> best_key;
        cycles_of_length(adj, length, [&](const std::vector<int>& walk) {
            std::vector<Edge> key = sorted_edges_of_walk(walk);
            if (best.empty() || key < best_key) {
                best = walk;
                best_key = std::move(key);
            }
        });
        if (!best.empty()) return best;
    }
    return {};
}

// Rotates a cycle walk to start at vertex s, stepping first toward the
// smaller of s's two neighbors on the cycle.
std::vector<int> rotate_cycle(const std::vector<int>& walk, int s) {
    size_t n = walk.size();
    size_t i = static_cast<size_t>(std::find(walk.begin(), walk.end(), s) - walk.begin());
    int fwd = walk[(i + 1) % n], bwd = walk[(i + n - 1) % n];
    std::vector<int> out;
    out.reserve(n);
    for (size_t j = 0; j < n; ++j)
        out.push_back(fwd <= bwd ? walk[(i + j) % n] : walk[(i + n - j) % n]);
    return out;
}

} // namespace

std::optional<ClosedTrail> find_even_circuit(const SimpleGraph& g) {
    auto adj = adjacency(g);

    std::vector<int> even = least_cycle(adj, g.vertex_count, /*even_only=*/true);
    if (!even.empty()) return ClosedTrail{std::move(even)};

    // No even simple cycle. An even closed trail still exists exactly when
    // two edge-disjoint odd simple cycles share a vertex: any even trail
    // decomposes into edge-disjoint simple cycles, all odd here, and trail
    // connectivity makes two of them meet. Splice the first such pair.
    std::vector<std::vector<int>> odd;
    for (int length = 3; length <= g.vertex_count; length += 2)
        cycles_of_length(adj, length, [&](const std::vector<int>& walk) { odd.push_back(walk); });
    std::vector<std::vector<Edge>> keys(odd.size());
    for (size_t i = 0; i < odd.size(); ++i) keys[i] = sorted_edges_of_walk(odd[i]);
    std::vector<size_t> order(odd.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (odd[a].size() != odd[b].size()) return odd[a].size() < odd[b].size();
        return keys[a] < keys[b];
    });

    for (size_t ia = 0; ia < order.size(); ++ia) {
        for (size_t ib = ia + 1; ib < order.size(); ++ib) {
            const auto& ka = keys[order[ia]];
            const auto& kb = keys[order[ib]];
            std::vector<Edge> common;
            std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                                  std::back_inserter(common));
            if (!common.empty()) continue;
            std::vector<int> va = odd[order[ia]], vb = odd[order[ib]];
            std::vector<int> sa = va, sb = vb;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            std::vector<int> shared;
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::back_inserter(shared));
            if (shared.empty()) continue;
            int s = shared.front();
            std::vector<int> walk = rotate_cycle(va, s);
            std::vector<int> tail = rotate_cycle(vb, s);
            walk.insert(walk.end(), tail.begin(), tail.end());
            return ClosedTrail{std::move(walk)};
        }
    }
    return std::nullopt;
}

std::optional<ClosedTrail> find_cycle_bipartite(const SimpleGraph& g, int left_count) {
    if (left_count < 0 || left_count > g.vertex_count)
        throw std::invalid_argument("left part size out of range");
    for (const Edge& e : g.edges)
        if ((e.first <= left_count) == (e.second <= left_count))
            throw std::invalid_argument("edge {" + std::to_string(e.first) + "," +
                                        std::to_string(e.second) +
                                        "} does not cross the bipartition");
    auto adj = adjacency(g);
    std::vector<int> walk = least_cycle(adj, g.vertex_count, /*even_only=*/true);
    if (walk.empty()) return std::nullopt;
    return ClosedTrail{std::move(walk)};
}

std::pair<std::vector<Edge>, std::vector<Edge>> alternate_partition(const ClosedTrail& t) {
    if (!t.even()) throw std::invalid_argument("alternating partition needs an even trail");
    std::pair<std::vector<Edge>, std::vector<Edge>> parts;
    std::vector<Edge> es = t.edges();
    for (size_t i = 0; i < es.size(); ++i)
        (i % 2 == 0 ? parts.first : parts.second).push_back(es[i]);
    return parts;
}

bool degree_balanced(const std::vector<Edge>& f1, const std::vector<Edge>& f2) {
    std::map<int, int> delta;
    for (const Edge& e : f1) {
        ++delta[e.first];
        ++delta[e.second];
    }
    for (const Edge& e : f2) {
        --delta[e.first];
        --delta[e.second];
    }
    return std::all_of(delta.begin(), delta.end(),
                       [](const auto& kv) { return kv.second == 0; });
}

bool even_circuit_exists_brute(const SimpleGraph& g) {
    if (g.vertex_count > 8) throw std::invalid_argument("brute force limited to 8 vertices");
    auto adj = adjacency(g);
    // Edge index lookup for the used-edge bitmask.
    std::map<Edge, int> index;
    for (size_t i = 0; i < g.edges.size(); ++i) index[g.edges[i]] = static_cast<int>(i);

    auto dfs = [&](auto&& self, int start, int v, unsigned used, int length) -> bool {
        if (v == start && length > 0 && length % 2 == 0) return true;
        for (int w : adj[v]) {
            int e = index[make_edge(v, w)];
            if (used & (1u << e)) continue;
            if (self(self, start, w, used | (1u << e), length + 1)) return true;
        }
        return false;
    };

    for (int s = 1; s <= g.vertex_count; ++s)
        if (dfs(dfs, s, s, 0u, 0)) return true;
    return false;
}

} // namespace defset
