#include "defset/rectangle_analysis.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "defset/io.hpp"

namespace defset {

namespace {

void require_valid(const PartialRectangle& d) {
    if (auto v = validate_partial_rectangle(d))
        throw std::invalid_argument(v->message);
}

// The pair-deficiency arguments count absent symbols per cell, which only
// matches pair counts when no cell repeats a symbol.
void require_set_cells(const PartialRectangle& d) {
    for (int r = 1; r <= d.rows; ++r)
        for (int c = 1; c <= d.cols; ++c) {
            const Cell& cell = d.cells[static_cast<size_t>(r - 1) * d.cols + (c - 1)];
            for (int s = 1; s <= d.symbols; ++s)
                if (cell.counts[s - 1] > 1)
                    throw std::invalid_argument(
                        "cell (" + std::to_string(r) + "," + std::to_string(c) +
                        ") repeats symbol " + std::to_string(s) +
                        "; analysis needs set-valued cells");
        }
}

std::pair<int, int> edge_cell(const std::pair<int, int>& oriented, int rows) {
    int u = oriented.first, v = oriented.second;
    if (u > rows) std::swap(u, v);
    return {u, v - rows};
}

} // namespace

CellSet cells_avoiding(const PartialRectangle& d, int a, int b) {
    require_valid(d);
    if (a == b) throw std::invalid_argument("symbol pair needs two distinct symbols");
    if (a < 1 || a > d.symbols || b < 1 || b > d.symbols)
        throw std::invalid_argument("symbol outside 1.." + std::to_string(d.symbols));
    CellSet out{std::min(a, b), std::max(a, b), {}};
    for (int r = 1; r <= d.rows; ++r)
        for (int c = 1; c <= d.cols; ++c) {
            const Cell& cell = d.cells[static_cast<size_t>(r - 1) * d.cols + (c - 1)];
            if (cell.counts[out.a - 1] == 0 && cell.counts[out.b - 1] == 0)
                out.cells.emplace_back(r, c);
        }
    return out;
}

std::optional<RectSwapCertificate> rect_certificate(const PartialRectangle& d) {
    if (d.symbols < 2)
        throw std::invalid_argument("swap certificates need at least two symbols");
    require_valid(d);
    require_set_cells(d);
    for (int a = 1; a <= d.symbols; ++a) {
        for (int b = a + 1; b <= d.symbols; ++b) {
            CellSet cs = cells_avoiding(d, a, b);
            std::vector<Edge> edges;
            edges.reserve(cs.cells.size());
            for (const auto& [r, c] : cs.cells) edges.push_back(make_edge(r, d.rows + c));
            SimpleGraph g = make_graph(d.rows + d.cols, std::move(edges));
            std::optional<ClosedTrail> cycle = find_cycle_bipartite(g, d.rows);
            if (!cycle) continue;
            RectSwapCertificate cert{d.rows, d.cols, d.symbols, a, b, *cycle, {}, {}};
            std::vector<std::pair<int, int>> oriented = cycle->oriented_edges();
            for (size_t i = 0; i < oriented.size(); ++i)
                (i % 2 == 0 ? cert.m1 : cert.m2).push_back(edge_cell(oriented[i], d.rows));
            return cert;
        }
    }
    return std::nullopt;
}

BalancedRectangle apply_rect_swap(const RectSwapCertificate& cert) {
    if (cert.symbols < 2 || cert.a < 1 || cert.b < 1 || cert.a > cert.symbols ||
        cert.b > cert.symbols || cert.a == cert.b)
        throw std::invalid_argument("certificate symbol pair out of range");
    if (cert.m1.empty() || cert.m1.size() != cert.m2.size())
        throw std::invalid_argument("certificate matchings must be nonempty and equal-sized");
    PartialRectangle grid = full_rectangle(cert.rows, cert.cols, cert.symbols).grid;
    auto shift = [&](const std::vector<std::pair<int, int>>& cells, int from, int to) {
        for (const auto& [r, c] : cells) {
            if (r < 1 || r > cert.rows || c < 1 || c > cert.cols)
                throw std::invalid_argument("certificate cell outside the rectangle");
            Cell& cell = grid.cell(r, c);
            if (cell.counts[from - 1] < 1)
                throw std::invalid_argument("certificate swaps a symbol a cell lacks");
            --cell.counts[from - 1];
            ++cell.counts[to - 1];
        }
    };
    shift(cert.m1, cert.a, cert.b);
    shift(cert.m2, cert.b, cert.a);
    return as_balanced(grid);
}

std::string serialize(const RectSwapCertificate& cert) {
    std::ostringstream out;
    out << "cert rect " << cert.rows << ' ' << cert.cols << ' ' << cert.symbols
        << " pair " << cert.a << ' ' << cert.b << '\n';
    auto line = [&](const char* name, const std::vector<std::pair<int, int>>& cells) {
        out << name << ':';
        for (const auto& [r, c] : cells) out << ' ' << r << ',' << c;
        out << '\n';
    };
    line("M1", cert.m1);
    line("M2", cert.m2);
    out << serialize(apply_rect_swap(cert));
    return out.str();
}

DeficiencyStats deficiency_stats(const PartialRectangle& d) {
    require_valid(d);
    require_set_cells(d);
    DeficiencyStats stats;
    long long t = d.symbols;
    for (const Cell& cell : d.cells) {
        long long e = cell.total();
        stats.entry_total += e;
        stats.missing_pair_total += (t - e) * (t - e - 1) / 2;
    }
    stats.missing_pair_cap = t * (t - 1) * (d.rows + d.cols - 1) / 2;
    stats.cap_satisfied = stats.missing_pair_total <= stats.missing_pair_cap;
    return stats;
}

RectBoundReport rect_lower_bound(int m, int n, int t, BoundVariant variant) {
    if (m < 1 || n < 1) throw std::invalid_argument("rectangle dimensions must be positive");
    if (t < 2) throw std::invalid_argument("bound needs t >= 2");
    if (m > 500 || n > 500 || t > 500)
        throw std::invalid_argument("bound parameters above 500 are not supported");

    long long mn = static_cast<long long>(m) * n;
    RectBoundReport rep;
    rep.rows = m;
    rep.cols = n;
    rep.symbols = t;
    rep.variant = variant;

    if (variant == BoundVariant::verbatim) {
        // sqrt(t(t-1)(m+n-1)/(2mn) + 1/4)
        Rat inner = add(rat(static_cast<long long>(t) * (t - 1) * (m + n - 1), 2 * mn),
                        rat(1, 4));
        rep.lambda_prime_exact = surd(rat(0), rat(1, inner.den), inner.num * inner.den);
    } else {
        // Smaller root e* of (t-e)(t-e-1)/2 = t(t-1)(m+n-1)/(2mn) gives
        // e* = t - 1/2 - sqrt(1 + 4C)/2 with C = t(t-1)(m+n-1)/(mn).
        Rat c = rat(static_cast<long long>(t) * (t - 1) * (m + n - 1), mn);
        long long rad = (c.den + 4 * c.num) * c.den;
        rep.lambda_prime_exact = surd(rat(0), rat(1, 2 * c.den), rad);
    }

    rep.exact = add(mul(rep.lambda_prime_exact, rat(-mn)), rat(mn * (2LL * t - 1), 2));
    rep.lambda_prime = to_double(rep.lambda_prime_exact);
    rep.raw_value = to_double(rep.exact);
    rep.clamped = cmp(rep.exact, rat(0)) < 0;
    rep.lower_bound = rep.clamped ? 0.0 : rep.raw_value;
    rep.lower_bound_ceil = std::max(0LL, ceil_guarded(rep.exact));
    rep.ratio = rep.lower_bound / (static_cast<double>(mn) * t);
    return rep;
}

RectBoundReport square_lower_bound(int n, BoundVariant variant) {
    if (n < 2) throw std::invalid_argument("square bound needs n >= 2");
    return rect_lower_bound(n, n, n, variant);
}

} // namespace defset
