#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "defset/io.hpp"

using namespace defset;

TEST_CASE("rectangle parse round-trip") {
    const std::string text =
        "rect 2 3 3\n"
        "1 | . | .\n"
        ". | 2 | 2,3\n";
    PartialRectangle p = parse_rectangle(text);
    CHECK(p.rows == 2);
    CHECK(p.cols == 3);
    CHECK(p.symbols == 3);
    CHECK(p.cell(1, 1).counts == std::vector<int>{1, 0, 0});
    CHECK(p.cell(1, 2).counts == std::vector<int>{0, 0, 0});
    CHECK(p.cell(2, 2).counts == std::vector<int>{0, 1, 0});
    CHECK(p.cell(2, 3).counts == std::vector<int>{0, 1, 1});
    CHECK(p.size() == 4);
    CHECK(serialize(p) == text);
}

TEST_CASE("rectangle parse accepts comments and repeated symbols") {
    const std::string text =
        "# header comment\n"
        "rect 2 2 2\n"
        "1,1 | 2,2\n"
        "# interior comment\n"
        "2,2 | 1,1\n";
    PartialRectangle p = parse_rectangle(text);
    CHECK(p.cell(1, 1).counts == std::vector<int>{2, 0});
    CHECK(p.cell(2, 2).counts == std::vector<int>{2, 0});
    CHECK(serialize(p) ==
          "rect 2 2 2\n"
          "1,1 | 2,2\n"
          "2,2 | 1,1\n");
}

TEST_CASE("rectangle parse errors carry positions") {
    try {
        parse_rectangle("rect 2 2 2\n1 | 5\n. | .\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 5);
    }

    CHECK_THROWS_AS(parse_rectangle("rect 2 2\n"), ParseError);
    CHECK_THROWS_AS(parse_rectangle("grid 2 2 2\n"), ParseError);
    CHECK_THROWS_AS(parse_rectangle("rect 2 2 2\n1 | 2\n"), ParseError);
    CHECK_THROWS_AS(parse_rectangle("rect 2 2 2\n1 | 2 | 1\n1 | 2\n"), ParseError);
    CHECK_THROWS_AS(parse_rectangle("rect 0 2 2\n"), ParseError);
}

TEST_CASE("balanced rectangle serialization drops nothing") {
    BalancedRectangle f = full_rectangle(2, 2, 2);
    CHECK(serialize(f) ==
          "rect 2 2 2\n"
          "1,2 | 1,2\n"
          "1,2 | 1,2\n");
    CHECK(parse_rectangle(serialize(f)) == f.grid);
}

TEST_CASE("design parse round-trip with default lambda") {
    const std::string text =
        "design 4 3\n"
        "1 2 3\n"
        "1 2 4\n";
    DesignFile d = parse_design(text);
    CHECK(d.points == 4);
    CHECK(d.block_size == 3);
    CHECK(!d.lambda_given);
    CHECK(d.lambda() == 2);
    CHECK(d.simple());
    CHECK(d.blocks.size() == 2);

    PartialDesign pd = d.as_partial_design();
    CHECK(pd.blocks == std::vector<Block>{Block{{1, 2, 3}}, Block{{1, 2, 4}}});
    CHECK(serialize(pd) == text);
}

TEST_CASE("design parse with multiplicities and explicit lambda") {
    const std::string text =
        "design 5 3 4\n"
        "x2 1 2 3\n"
        "1 4 5\n";
    DesignFile d = parse_design(text);
    REQUIRE(d.lambda_given);
    CHECK(*d.lambda_given == 4);
    CHECK(!d.simple());
    CHECK(d.blocks.at(Block{{1, 2, 3}}) == 2);
    CHECK_THROWS_AS(d.as_partial_design(), std::invalid_argument);

    DesignCandidate c = d.as_design_candidate();
    CHECK(c.lambda == 4);
    CHECK(c.size() == 3);
    CHECK(serialize(c) == text);
}

TEST_CASE("design parse errors") {
    CHECK_THROWS_AS(parse_design("design 4\n"), ParseError);
    CHECK_THROWS_AS(parse_design("design 4 3\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_design("design 4 3\n1 2 5\n"), ParseError);
    CHECK_THROWS_AS(parse_design("design 4 3\n2 1 3\n"), ParseError);
    CHECK_THROWS_AS(parse_design("design 4 3\n1 2 2\n"), ParseError);
    CHECK_THROWS_AS(parse_design("design 4 3\nx0 1 2 3\n"), ParseError);

    try {
        parse_design("design 4 3\n1 2 3\nbogus\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("empty designs parse as headers alone") {
    DesignFile d = parse_design("design 4 3\n");
    CHECK(d.blocks.empty());
    CHECK(d.lambda() == 2);
    CHECK(serialize(d.as_partial_design()) == "design 4 3\n");
}
