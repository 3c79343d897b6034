#include "defset/design_analysis.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "defset/io.hpp"

namespace defset {

namespace {

void require_valid(const PartialDesign& d) {
    if (auto v = validate_partial_design(d))
        throw std::invalid_argument(v->message);
}

long long checked_binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<long long>::max())
            throw std::overflow_error("binomial coefficient exceeds 64-bit range");
    }
    return static_cast<long long>(r);
}

bool has_block(const PartialDesign& d, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    return std::binary_search(d.blocks.begin(), d.blocks.end(), Block{std::move(elements)});
}

// Lexicographic scan over the size-subsets of 1..v.
void each_subset(int v, int size, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> pick(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<size_t>(i)] = i + 1;
    if (size > v) return;
    while (true) {
        f(pick);
        int i = size - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == v - (size - 1 - i)) --i;
        if (i < 0) return;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
}

void check_fixed_set(const std::vector<int>& fixed, int points) {
    for (size_t i = 0; i < fixed.size(); ++i) {
        if (fixed[i] < 1 || fixed[i] > points)
            throw std::invalid_argument("fixed element outside 1.." + std::to_string(points));
        if (i > 0 && fixed[i - 1] >= fixed[i])
            throw std::invalid_argument("fixed elements must be sorted and distinct");
    }
}

DesignBoundReport finish_report(DesignBoundReport rep) {
    rep.raw_value = to_double(rep.exact);
    rep.clamped = cmp(rep.exact, rat(0)) < 0;
    rep.value = rep.clamped ? 0.0 : rep.raw_value;
    rep.value_ceil = std::max(0LL, ceil_guarded(rep.exact));
    rep.complement_fraction = 1.0 - rep.value / static_cast<double>(rep.block_total);
    return rep;
}

// x(x-1)(x - 5/2 - sqrt((32x - 85)/12))/6, the defining-set bound for a
// full triple system on x points, as p + q*sqrt(96x - 255).
Surd triple_surd(long long x) {
    return surd(rat(x * (x - 1) * (2 * x - 5), 12), rat(-x * (x - 1), 36), 96 * x - 255);
}

} // namespace

PairSet pairs_avoiding(const PartialDesign& d, int a, int b) {
    require_valid(d);
    if (d.block_size != 3)
        throw std::invalid_argument("pair statistics need block size 3; project first");
    if (a == b) throw std::invalid_argument("element pair needs two distinct elements");
    if (a < 1 || a > d.points || b < 1 || b > d.points)
        throw std::invalid_argument("element outside 1.." + std::to_string(d.points));
    PairSet out{std::min(a, b), std::max(a, b), {}};
    for (int i = 1; i <= d.points; ++i) {
        if (i == out.a || i == out.b) continue;
        for (int j = i + 1; j <= d.points; ++j) {
            if (j == out.a || j == out.b) continue;
            if (!has_block(d, {i, j, out.a}) && !has_block(d, {i, j, out.b}))
                out.pairs.push_back(make_edge(i, j));
        }
    }
    return out;
}

long long pair_count_threshold(int v) {
    if (v < 4) throw std::invalid_argument("pair threshold needs v >= 4");
    return (4LL * v - 11) / 3;
}

std::optional<DesignSwapCertificate> design_certificate(const PartialDesign& d) {
    require_valid(d);
    if (d.block_size < 3)
        throw std::invalid_argument("swap certificates need block size >= 3");
    if (d.block_size == 3) {
        for (int a = 1; a <= d.points; ++a) {
            for (int b = a + 1; b <= d.points; ++b) {
                PairSet ps = pairs_avoiding(d, a, b);
                SimpleGraph g = make_graph(d.points, ps.pairs);
                std::optional<ClosedTrail> trail = find_even_circuit(g);
                if (!trail) continue;
                auto [f1, f2] = alternate_partition(*trail);
                return DesignSwapCertificate{d.points, 3,          a,
                                             b,        {},         std::move(*trail),
                                             std::move(f1), std::move(f2)};
            }
        }
        return std::nullopt;
    }
    std::optional<DesignSwapCertificate> found;
    each_subset(d.points, d.block_size - 3, [&](const std::vector<int>& fixed) {
        if (found) return;
        Projection proj = project_through(d, fixed);
        std::optional<DesignSwapCertificate> inner = design_certificate(proj.design);
        if (!inner) return;
        auto lift = [&](int x) { return proj.to_original[static_cast<size_t>(x) - 1]; };
        DesignSwapCertificate cert;
        cert.points = d.points;
        cert.block_size = d.block_size;
        cert.a = lift(inner->a);
        cert.b = lift(inner->b);
        cert.context = fixed;
        cert.trail.walk.reserve(inner->trail.walk.size());
        for (int x : inner->trail.walk) cert.trail.walk.push_back(lift(x));
        std::tie(cert.f1, cert.f2) = alternate_partition(cert.trail);
        found = std::move(cert);
    });
    return found;
}

DesignCandidate apply_design_swap(const DesignSwapCertificate& cert, int v, int k) {
    if (cert.points != v || cert.block_size != k)
        throw std::invalid_argument("certificate is for different parameters");
    if (k < 3 || v < k) throw std::invalid_argument("parameters must satisfy 3 <= k <= v");
    if (cert.a == cert.b || cert.a < 1 || cert.b < 1 || cert.a > v || cert.b > v)
        throw std::invalid_argument("certificate element pair out of range");
    check_fixed_set(cert.context, v);
    if (static_cast<int>(cert.context.size()) != k - 3)
        throw std::invalid_argument("certificate context size must be k - 3");
    for (int x : cert.context)
        if (x == cert.a || x == cert.b)
            throw std::invalid_argument("certificate context meets the swapped pair");
    if (cert.f1.empty() || cert.f1.size() != cert.f2.size())
        throw std::invalid_argument("certificate edge classes must be nonempty and equal-sized");

    DesignCandidate out = full_design_candidate(v, k);
    auto block_with = [&](const Edge& e, int s) {
        std::vector<int> elements{e.first, e.second, s};
        elements.insert(elements.end(), cert.context.begin(), cert.context.end());
        std::sort(elements.begin(), elements.end());
        return Block{std::move(elements)};
    };
    auto move_one = [&](const Edge& e, int from, int to) {
        Block rm = block_with(e, from);
        auto it = out.blocks.find(rm);
        if (it == out.blocks.end())
            throw std::logic_error("swap removes a block with zero multiplicity");
        if (--it->second == 0) out.blocks.erase(it);
        ++out.blocks[block_with(e, to)];
    };
    for (const Edge& e : cert.f1) move_one(e, cert.a, cert.b);
    for (const Edge& e : cert.f2) move_one(e, cert.b, cert.a);

    if (auto viol = validate_design_candidate(out))
        throw std::logic_error("swap produced an invalid candidate: " + viol->message);
    if (out.blocks == full_design_candidate(v, k).blocks)
        throw std::logic_error("swap produced the full design unchanged");
    return out;
}

std::string serialize(const DesignSwapCertificate& cert) {
    std::ostringstream out;
    out << "cert design " << cert.points << ' ' << cert.block_size << " pair " << cert.a
        << ' ' << cert.b;
    if (!cert.context.empty()) {
        out << " K:";
        for (int x : cert.context) out << ' ' << x;
    }
    out << '\n';
    std::vector<std::pair<int, int>> oriented = cert.trail.oriented_edges();
    auto line = [&](const char* name, size_t parity) {
        out << name << ':';
        for (size_t i = parity; i < oriented.size(); i += 2)
            out << ' ' << oriented[i].first << ',' << oriented[i].second;
        out << '\n';
    };
    line("F1", 0);
    line("F2", 1);
    out << serialize(apply_design_swap(cert, cert.points, cert.block_size));
    return out.str();
}

Projection project_through(const PartialDesign& d, const std::vector<int>& fixed) {
    require_valid(d);
    if (d.block_size <= 3)
        throw std::invalid_argument("projection needs block size > 3");
    if (static_cast<int>(fixed.size()) != d.block_size - 3)
        throw std::invalid_argument("projection needs exactly k - 3 fixed elements");
    check_fixed_set(fixed, d.points);

    Projection proj;
    std::vector<int> new_label(static_cast<size_t>(d.points) + 1, 0);
    for (int x = 1; x <= d.points; ++x) {
        if (std::binary_search(fixed.begin(), fixed.end(), x)) continue;
        proj.to_original.push_back(x);
        new_label[static_cast<size_t>(x)] = static_cast<int>(proj.to_original.size());
    }
    proj.design.points = d.points - d.block_size + 3;
    proj.design.block_size = 3;
    for (const Block& b : d.blocks) {
        if (!std::includes(b.elements.begin(), b.elements.end(), fixed.begin(), fixed.end()))
            continue;
        Block nb;
        for (int x : b.elements)
            if (!std::binary_search(fixed.begin(), fixed.end(), x))
                nb.elements.push_back(new_label[static_cast<size_t>(x)]);
        proj.design.blocks.push_back(std::move(nb));
    }
    std::sort(proj.design.blocks.begin(), proj.design.blocks.end());
    return proj;
}

long long blocks_containing(const PartialDesign& d, const std::vector<int>& fixed) {
    require_valid(d);
    std::vector<int> key = fixed;
    std::sort(key.begin(), key.end());
    check_fixed_set(key, d.points);
    long long count = 0;
    for (const Block& b : d.blocks)
        if (std::includes(b.elements.begin(), b.elements.end(), key.begin(), key.end()))
            ++count;
    return count;
}

bool incidence_identity_holds(const PartialDesign& d) {
    require_valid(d);
    if (d.block_size < 3)
        throw std::invalid_argument("identity needs block size >= 3");
    if (checked_binomial(d.points, d.block_size - 3) > 2'000'000)
        throw std::invalid_argument("identity enumeration too large");
    long long lhs = binomial(d.block_size, 3) * static_cast<long long>(d.blocks.size());
    long long rhs = 0;
    each_subset(d.points, d.block_size - 3,
                [&](const std::vector<int>& fixed) { rhs += blocks_containing(d, fixed); });
    return lhs == rhs;
}

DesignBoundReport triple_design_bound(int v) {
    if (v < 4) throw std::invalid_argument("triple bound needs v >= 4");
    if (v > 100000) throw std::invalid_argument("bound parameters above 100000 are not supported");
    DesignBoundReport rep;
    rep.points = v;
    rep.block_size = 3;
    rep.kind = DesignBoundKind::triples;
    rep.exact = triple_surd(v);
    rep.block_total = checked_binomial(v, 3);
    return finish_report(rep);
}

DesignBoundReport projected_design_bound(int v, int k) {
    if (k < 3 || v < k) throw std::invalid_argument("projected bound needs v >= k >= 3");
    if (v > 100000) throw std::invalid_argument("bound parameters above 100000 are not supported");
    DesignBoundReport rep;
    rep.points = v;
    rep.block_size = k;
    rep.kind = DesignBoundKind::projected;
    rep.exact = triple_surd(v - k + 3);
    rep.block_total = checked_binomial(v, k);
    return finish_report(rep);
}

DesignBoundReport general_design_bound(int v, int k) {
    if (k < 3 || v < k) throw std::invalid_argument("general bound needs v >= k >= 3");
    if (v > 100000) throw std::invalid_argument("bound parameters above 100000 are not supported");
    long long w = v - k;
    long long c = checked_binomial(v, k);
    DesignBoundReport rep;
    rep.points = v;
    rep.block_size = k;
    rep.kind = DesignBoundKind::general;
    rep.exact = surd(mul(rat(c), rat(2 * w + 1, 2 * w + 2)), mul(rat(c), rat(-1, 6 * (w + 1))),
                     96 * w + 33);
    rep.block_total = c;
    return finish_report(rep);
}

} // namespace defset
