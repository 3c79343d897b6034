#include "defset/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace defset {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

namespace {

// Content lines with their 1-based positions; comments and blanks dropped.
struct Line {
    std::string text;
    int number;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        bool blank = raw.find_first_not_of(" \t") == std::string_view::npos;
        if (!blank && raw[0] != '#') out.push_back({std::string(raw), number});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

// Single-line scanner tracking the 1-based column for error positions.
struct Cursor {
    const std::string& s;
    int line;
    size_t pos = 0;

    int column() const { return static_cast<int>(pos) + 1; }
    bool at_end() const { return pos >= s.size(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, column()); }

    void skip_spaces() {
        while (!at_end() && s[pos] == ' ') ++pos;
    }

    void expect_space() {
        if (at_end() || s[pos] != ' ') fail("expected a space");
        skip_spaces();
    }

    void expect_word(std::string_view w) {
        if (s.compare(pos, w.size(), w) != 0) fail("expected \"" + std::string(w) + "\"");
        pos += w.size();
    }

    long long parse_int() {
        size_t start = pos;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected an integer");
        if (pos - start > 12) fail("integer too large");
        return std::stoll(s.substr(start, pos - start));
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing characters");
    }
};

} // namespace

PartialRectangle parse_rectangle(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty input, expected a rect header", 1, 1);

    Cursor h{lines[0].text, lines[0].number};
    h.expect_word("rect");
    h.expect_space();
    long long m = h.parse_int();
    h.expect_space();
    long long n = h.parse_int();
    h.expect_space();
    long long t = h.parse_int();
    h.expect_end();
    if (m < 1 || n < 1) throw ParseError("m >= 1 and n >= 1 required", lines[0].number, 6);
    if (t < 1) throw ParseError("t >= 1 required", lines[0].number, 6);
    if (m > 64 || n > 64 || t > 64)
        throw ParseError("dimensions larger than 64 are not supported", lines[0].number, 6);

    if (lines.size() != static_cast<size_t>(m) + 1)
        throw ParseError("expected " + std::to_string(m) + " cell lines after the header, got " +
                             std::to_string(lines.size() - 1),
                         lines.back().number, 1);

    PartialRectangle p = empty_rectangle(static_cast<int>(m), static_cast<int>(n),
                                         static_cast<int>(t));
    for (int r = 1; r <= p.rows; ++r) {
        Cursor c{lines[r].text, lines[r].number};
        for (int col = 1; col <= p.cols; ++col) {
            if (col > 1) {
                c.expect_word(" | ");
            }
            if (!c.at_end() && c.s[c.pos] == '.') {
                ++c.pos;
            } else {
                while (true) {
                    int column = c.column();
                    long long s = c.parse_int();
                    if (s < 1 || s > p.symbols)
                        throw ParseError("symbol " + std::to_string(s) + " outside 1.." +
                                             std::to_string(p.symbols),
                                         c.line, column);
                    ++p.cell(r, col).counts[static_cast<size_t>(s - 1)];
                    if (c.at_end() || c.s[c.pos] != ',') break;
                    ++c.pos;
                }
            }
        }
        c.expect_end();
    }
    return p;
}

std::string serialize(const PartialRectangle& p) {
    std::ostringstream out;
    out << "rect " << p.rows << ' ' << p.cols << ' ' << p.symbols << '\n';
    for (int r = 1; r <= p.rows; ++r) {
        for (int c = 1; c <= p.cols; ++c) {
            if (c > 1) out << " | ";
            const Cell& cell = p.cell(r, c);
            if (cell.total() == 0) {
                out << '.';
                continue;
            }
            bool first = true;
            for (int s = 1; s <= p.symbols; ++s)
                for (int i = 0; i < cell.counts[s - 1]; ++i) {
                    if (!first) out << ',';
                    out << s;
                    first = false;
                }
        }
        out << '\n';
    }
    return out.str();
}

std::string serialize(const BalancedRectangle& r) {
    return serialize(r.grid);
}

bool DesignFile::simple() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const auto& kv) { return kv.second == 1; });
}

PartialDesign DesignFile::as_partial_design() const {
    if (!simple())
        throw std::invalid_argument("design has repeated blocks; a partial design must be simple");
    PartialDesign d;
    d.points = points;
    d.block_size = block_size;
    for (const auto& [b, mult] : blocks) d.blocks.push_back(b);
    return d;
}

DesignCandidate DesignFile::as_design_candidate() const {
    DesignCandidate d;
    d.points = points;
    d.block_size = block_size;
    d.lambda = lambda();
    d.blocks = blocks;
    return d;
}

DesignFile parse_design(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty input, expected a design header", 1, 1);

    Cursor h{lines[0].text, lines[0].number};
    h.expect_word("design");
    h.expect_space();
    long long v = h.parse_int();
    h.expect_space();
    long long k = h.parse_int();
    DesignFile d;
    h.skip_spaces();
    if (!h.at_end()) {
        d.lambda_given = h.parse_int();
        h.expect_end();
    }
    if (v < 2 || k < 2 || k > v)
        throw ParseError("design parameters must satisfy 2 <= k <= v", lines[0].number, 8);
    if (v > 64) throw ParseError("v larger than 64 is not supported", lines[0].number, 8);
    d.points = static_cast<int>(v);
    d.block_size = static_cast<int>(k);

    for (size_t i = 1; i < lines.size(); ++i) {
        Cursor c{lines[i].text, lines[i].number};
        long long mult = 1;
        if (!c.at_end() && c.s[c.pos] == 'x') {
            ++c.pos;
            mult = c.parse_int();
            if (mult < 1) c.fail("multiplicity must be >= 1");
            c.expect_space();
        }
        Block b;
        for (int j = 0; j < d.block_size; ++j) {
            if (j > 0) c.expect_space();
            int column = c.column();
            long long e = c.parse_int();
            if (e < 1 || e > d.points)
                throw ParseError("element " + std::to_string(e) + " outside 1.." +
                                     std::to_string(d.points),
                                 c.line, column);
            if (!b.elements.empty() && e <= b.elements.back())
                throw ParseError("block elements must be strictly increasing", c.line, column);
            b.elements.push_back(static_cast<int>(e));
        }
        c.skip_spaces();
        c.expect_end();
        d.blocks[b] += mult;
    }
    return d;
}

namespace {

void write_block(std::ostringstream& out, const Block& b) {
    for (size_t i = 0; i < b.elements.size(); ++i) {
        if (i > 0) out << ' ';
        out << b.elements[i];
    }
    out << '\n';
}

} // namespace

std::string serialize(const PartialDesign& d) {
    std::ostringstream out;
    out << "design " << d.points << ' ' << d.block_size << '\n';
    for (const Block& b : d.blocks) write_block(out, b);
    return out.str();
}

std::string serialize(const DesignCandidate& d) {
    std::ostringstream out;
    out << "design " << d.points << ' ' << d.block_size << ' ' << d.lambda << '\n';
    for (const auto& [b, mult] : d.blocks) {
        if (mult > 1) out << 'x' << mult << ' ';
        write_block(out, b);
    }
    return out.str();
}

} // namespace defset
