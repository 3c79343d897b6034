#include "defset/model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace defset {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

long long Cell::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

bool Cell::is_set() const {
    return std::all_of(counts.begin(), counts.end(), [](int c) { return c <= 1; });
}

long long PartialRectangle::size() const {
    long long s = 0;
    for (const Cell& c : cells) s += c.total();
    return s;
}

PartialRectangle empty_rectangle(int m, int n, int t) {
    PartialRectangle p;
    p.rows = m;
    p.cols = n;
    p.symbols = t;
    p.cells.assign(static_cast<size_t>(m) * n, Cell{std::vector<int>(t, 0)});
    return p;
}

namespace {

std::optional<Violation> structural(std::string msg) {
    return Violation{Violation::Kind::structural, std::move(msg)};
}

std::optional<Violation> constraint(std::string msg) {
    return Violation{Violation::Kind::constraint, std::move(msg)};
}

} // namespace

std::optional<Violation> validate_partial_rectangle(const PartialRectangle& p) {
    if (p.rows < 1 || p.cols < 1 || p.symbols < 1)
        return structural("rectangle parameters must be positive");
    if (p.cells.size() != static_cast<size_t>(p.rows) * p.cols)
        return structural("cell grid is not " + std::to_string(p.rows) + "x" +
                          std::to_string(p.cols));
    for (int r = 1; r <= p.rows; ++r) {
        for (int c = 1; c <= p.cols; ++c) {
            const Cell& cell = p.cell(r, c);
            if (cell.counts.size() != static_cast<size_t>(p.symbols))
                return structural("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") has a count vector of length " +
                                  std::to_string(cell.counts.size()) + ", expected " +
                                  std::to_string(p.symbols));
            for (int s = 1; s <= p.symbols; ++s)
                if (cell.counts[s - 1] < 0)
                    return structural("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                      ") has a negative count for symbol " + std::to_string(s));
            if (cell.total() > p.symbols)
                return constraint("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") holds " + std::to_string(cell.total()) +
                                  " entries, more than t=" + std::to_string(p.symbols));
        }
    }
    for (int r = 1; r <= p.rows; ++r) {
        for (int s = 1; s <= p.symbols; ++s) {
            long long sum = 0;
            for (int c = 1; c <= p.cols; ++c) sum += p.cell(r, c).counts[s - 1];
            if (sum > p.cols)
                return constraint("symbol " + std::to_string(s) + " occurs " +
                                  std::to_string(sum) + " times in row " + std::to_string(r) +
                                  ", more than n=" + std::to_string(p.cols));
        }
    }
    for (int c = 1; c <= p.cols; ++c) {
        for (int s = 1; s <= p.symbols; ++s) {
            long long sum = 0;
            for (int r = 1; r <= p.rows; ++r) sum += p.cell(r, c).counts[s - 1];
            if (sum > p.rows)
                return constraint("symbol " + std::to_string(s) + " occurs " +
                                  std::to_string(sum) + " times in column " + std::to_string(c) +
                                  ", more than m=" + std::to_string(p.rows));
        }
    }
    return std::nullopt;
}

std::optional<Violation> validate_balanced_rectangle(const PartialRectangle& p) {
    if (auto v = validate_partial_rectangle(p)) return v;
    for (int r = 1; r <= p.rows; ++r)
        for (int c = 1; c <= p.cols; ++c)
            if (p.cell(r, c).total() != p.symbols)
                return constraint("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") holds " + std::to_string(p.cell(r, c).total()) +
                                  " entries, expected exactly t=" + std::to_string(p.symbols));
    for (int r = 1; r <= p.rows; ++r) {
        for (int s = 1; s <= p.symbols; ++s) {
            long long sum = 0;
            for (int c = 1; c <= p.cols; ++c) sum += p.cell(r, c).counts[s - 1];
            if (sum != p.cols)
                return constraint("symbol " + std::to_string(s) + " occurs " +
                                  std::to_string(sum) + " times in row " + std::to_string(r) +
                                  ", expected exactly n=" + std::to_string(p.cols));
        }
    }
    for (int c = 1; c <= p.cols; ++c) {
        for (int s = 1; s <= p.symbols; ++s) {
            long long sum = 0;
            for (int r = 1; r <= p.rows; ++r) sum += p.cell(r, c).counts[s - 1];
            if (sum != p.rows)
                return constraint("symbol " + std::to_string(s) + " occurs " +
                                  std::to_string(sum) + " times in column " + std::to_string(c) +
                                  ", expected exactly m=" + std::to_string(p.rows));
        }
    }
    return std::nullopt;
}

BalancedRectangle as_balanced(const PartialRectangle& p) {
    if (auto v = validate_balanced_rectangle(p))
        throw std::invalid_argument("not a balanced rectangle: " + v->message);
    return BalancedRectangle{p};
}

BalancedRectangle full_rectangle(int m, int n, int t) {
    PartialRectangle p;
    p.rows = m;
    p.cols = n;
    p.symbols = t;
    p.cells.assign(static_cast<size_t>(m) * n, Cell{std::vector<int>(t, 1)});
    return BalancedRectangle{std::move(p)};
}

bool contains(const PartialRectangle& outer, const PartialRectangle& inner) {
    if (outer.rows != inner.rows || outer.cols != inner.cols || outer.symbols != inner.symbols)
        return false;
    for (size_t i = 0; i < outer.cells.size(); ++i)
        for (size_t s = 0; s < outer.cells[i].counts.size(); ++s)
            if (inner.cells[i].counts[s] > outer.cells[i].counts[s]) return false;
    return true;
}

bool is_saturated(const PartialRectangle& p) {
    return std::all_of(p.cells.begin(), p.cells.end(), [](const Cell& c) {
        bool empty = true, full = true;
        for (int x : c.counts) {
            if (x != 0) empty = false;
            if (x != 1) full = false;
        }
        return empty || full;
    });
}

long long DesignCandidate::size() const {
    long long s = 0;
    for (const auto& [b, mult] : blocks) s += mult;
    return s;
}

long long full_lambda(int v, int k) {
    return binomial(v - 2, k - 2);
}

namespace {

void each_block(int v, int k, const std::function<void(const Block&)>& fn) {
    Block b;
    b.elements.resize(k);
    // Lexicographic k-subset enumeration.
    for (int i = 0; i < k; ++i) b.elements[i] = i + 1;
    while (true) {
        fn(b);
        int i = k - 1;
        while (i >= 0 && b.elements[i] == v - (k - 1 - i)) --i;
        if (i < 0) break;
        ++b.elements[i];
        for (int j = i + 1; j < k; ++j) b.elements[j] = b.elements[j - 1] + 1;
    }
}

} // namespace

PartialDesign full_design(int v, int k) {
    PartialDesign d;
    d.points = v;
    d.block_size = k;
    each_block(v, k, [&](const Block& b) { d.blocks.push_back(b); });
    return d;
}

DesignCandidate full_design_candidate(int v, int k) {
    DesignCandidate d;
    d.points = v;
    d.block_size = k;
    d.lambda = full_lambda(v, k);
    each_block(v, k, [&](const Block& b) { d.blocks[b] = 1; });
    return d;
}

namespace {

std::optional<Violation> check_block(const Block& b, int v, int k) {
    if (static_cast<int>(b.elements.size()) != k)
        return structural("block has " + std::to_string(b.elements.size()) +
                          " elements, expected k=" + std::to_string(k));
    for (size_t i = 0; i < b.elements.size(); ++i) {
        if (b.elements[i] < 1 || b.elements[i] > v)
            return structural("block element " + std::to_string(b.elements[i]) +
                              " outside 1.." + std::to_string(v));
        if (i > 0 && b.elements[i] <= b.elements[i - 1])
            return structural("block elements not strictly increasing");
    }
    return std::nullopt;
}

} // namespace

std::optional<Violation> validate_partial_design(const PartialDesign& d) {
    if (d.points < 2 || d.block_size < 2 || d.block_size > d.points)
        return structural("design parameters must satisfy 2 <= k <= v");
    for (size_t i = 0; i < d.blocks.size(); ++i) {
        if (auto viol = check_block(d.blocks[i], d.points, d.block_size)) return viol;
        if (i > 0 && !(d.blocks[i - 1] < d.blocks[i]))
            return structural("blocks not sorted strictly increasing");
    }
    return std::nullopt;
}

std::optional<Violation> validate_design_candidate(const DesignCandidate& d) {
    if (d.points < 2 || d.block_size < 2 || d.block_size > d.points)
        return structural("design parameters must satisfy 2 <= k <= v");
    if (d.lambda < 0) return structural("lambda must be nonnegative");
    for (const auto& [b, mult] : d.blocks) {
        if (auto viol = check_block(b, d.points, d.block_size)) return viol;
        if (mult < 1) return structural("block multiplicity must be >= 1");
    }
    // Pair coverage, counted with multiplicity.
    std::vector<long long> cover(static_cast<size_t>(d.points) * d.points, 0);
    for (const auto& [b, mult] : d.blocks)
        for (size_t i = 0; i < b.elements.size(); ++i)
            for (size_t j = i + 1; j < b.elements.size(); ++j)
                cover[static_cast<size_t>(b.elements[i] - 1) * d.points + (b.elements[j] - 1)] +=
                    mult;
    for (int x = 1; x <= d.points; ++x)
        for (int y = x + 1; y <= d.points; ++y) {
            long long got = cover[static_cast<size_t>(x - 1) * d.points + (y - 1)];
            if (got != d.lambda)
                return constraint("pair {" + std::to_string(x) + "," + std::to_string(y) +
                                  "} covered " + std::to_string(got) + " times, expected " +
                                  std::to_string(d.lambda));
        }
    return std::nullopt;
}

bool contains(const DesignCandidate& outer, const PartialDesign& inner) {
    if (outer.points != inner.points || outer.block_size != inner.block_size) return false;
    for (const Block& b : inner.blocks) {
        auto it = outer.blocks.find(b);
        if (it == outer.blocks.end() || it->second < 1) return false;
    }
    return true;
}

PartialLatin empty_latin(int n) {
    PartialLatin p;
    p.order = n;
    p.grid.assign(static_cast<size_t>(n) * n, 0);
    return p;
}

std::optional<Violation> validate_partial_latin(const PartialLatin& p) {
    if (p.order < 1) return structural("order must be positive");
    if (p.grid.size() != static_cast<size_t>(p.order) * p.order)
        return structural("grid is not order x order");
    for (int x : p.grid)
        if (x < 0 || x > p.order) return structural("entry outside 0..order");
    for (int r = 1; r <= p.order; ++r)
        for (int c1 = 1; c1 <= p.order; ++c1)
            for (int c2 = c1 + 1; c2 <= p.order; ++c2)
                if (p.at(r, c1) != 0 && p.at(r, c1) == p.at(r, c2))
                    return constraint("symbol " + std::to_string(p.at(r, c1)) +
                                      " repeated in row " + std::to_string(r));
    for (int c = 1; c <= p.order; ++c)
        for (int r1 = 1; r1 <= p.order; ++r1)
            for (int r2 = r1 + 1; r2 <= p.order; ++r2)
                if (p.at(r1, c) != 0 && p.at(r1, c) == p.at(r2, c))
                    return constraint("symbol " + std::to_string(p.at(r1, c)) +
                                      " repeated in column " + std::to_string(c));
    return std::nullopt;
}

} // namespace defset
