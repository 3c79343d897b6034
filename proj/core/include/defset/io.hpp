#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "defset/model.hpp"

namespace defset {

// Parse failure with a 1-based input position.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

// Rectangle text format:
//   rect <m> <n> <t>
// followed by m lines of n cell tokens separated by " | "; a cell token is
// "." (empty) or a comma-separated list of symbols with repetition, e.g.
// "1,1,3". Lines beginning with '#' are comments.
PartialRectangle parse_rectangle(std::string_view text);
std::string serialize(const PartialRectangle& p);
std::string serialize(const BalancedRectangle& r);

// Design text format:
//   design <v> <k> [lambda]
// followed by one block per line: k space-separated increasing integers,
// optionally prefixed "x<count> " to mark multiplicity. lambda defaults to
// C(v-2,k-2). Lines beginning with '#' are comments.
struct DesignFile {
    int points = 0;
    int block_size = 0;
    // As written in the file; absent means the full-design default.
    std::optional<long long> lambda_given;
    std::map<Block, long long> blocks;

    long long lambda() const {
        return lambda_given ? *lambda_given : full_lambda(points, block_size);
    }
    bool simple() const;

    // Throws std::invalid_argument when a multiplicity exceeds 1.
    PartialDesign as_partial_design() const;
    DesignCandidate as_design_candidate() const;
};

DesignFile parse_design(std::string_view text);
std::string serialize(const PartialDesign& d);
std::string serialize(const DesignCandidate& d);

} // namespace defset
