#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "defset/design_analysis.hpp"
#include "defset/io.hpp"
#include "defset/oracle.hpp"

#include "subprocess.hpp"

using namespace defset;

namespace {

const EnumerationBudget census_budget{0, 10'000'000, 0.0};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("stop and status names") {
    CHECK(std::string(to_string(StopReason::complete)) == "complete");
    CHECK(std::string(to_string(StopReason::solution_cap)) == "solution-cap");
    CHECK(std::string(to_string(StopReason::node_cap)) == "node-cap");
    CHECK(std::string(to_string(StopReason::time_cap)) == "time-cap");
    CHECK(std::string(to_string(OracleStatus::defining)) == "defining");
    CHECK(std::string(to_string(OracleStatus::not_defining)) == "not-defining");
    CHECK(std::string(to_string(OracleStatus::budget_exhausted)) == "budget-exhausted");
}

TEST_CASE("rectangle census sizes") {
    RectEnumeration e222 = enumerate_rect_completions(empty_rectangle(2, 2, 2), census_budget);
    CHECK(e222.completions.size() == 3);
    CHECK(e222.nodes == 12);
    CHECK(e222.stop == StopReason::complete);
    CHECK(e222.completions[0].grid.cell(1, 1).counts == std::vector<int>{0, 2});
    CHECK(std::count(e222.completions.begin(), e222.completions.end(),
                     full_rectangle(2, 2, 2)) == 1);

    RectEnumeration e233 = enumerate_rect_completions(empty_rectangle(2, 3, 3), census_budget);
    CHECK(e233.completions.size() == 31);
    CHECK(e233.nodes == 168);

    RectEnumeration e333 = enumerate_rect_completions(empty_rectangle(3, 3, 3), census_budget);
    CHECK(e333.completions.size() == 847);
    CHECK(e333.nodes == 5040);
    for (const BalancedRectangle& r : e333.completions)
        CHECK(!validate_balanced_rectangle(r.grid));
}

TEST_CASE("completions of the running example") {
    PartialRectangle d = parse_rectangle(slurp(data_file("s1_partial.rect")));
    RectEnumeration e = enumerate_rect_completions(d, census_budget);
    REQUIRE(e.completions.size() == 5);
    CHECK(e.nodes == 44);
    CHECK(e.stop == StopReason::complete);

    for (const BalancedRectangle& r : e.completions) {
        CHECK(contains(r, d));
        CHECK(!validate_balanced_rectangle(r.grid));
    }
    CHECK(e.completions[1] == full_rectangle(2, 3, 3));

    PartialRectangle alt = parse_rectangle(slurp(data_file("s1_alternative.rect")));
    CHECK(e.completions[4].grid == alt);
}

TEST_CASE("rectangle verdicts") {
    RectVerdict empty = is_defining_rect(empty_rectangle(2, 2, 2));
    CHECK(empty.status == OracleStatus::not_defining);
    CHECK(empty.completions_found == 2);
    REQUIRE(empty.witnesses.size() == 2);
    CHECK(serialize(empty.witnesses[0]) ==
          "rect 2 2 2\n"
          "2,2 | 1,1\n"
          "1,1 | 2,2\n");
    CHECK(empty.witnesses[1] == full_rectangle(2, 2, 2));
    CHECK(empty.stop == StopReason::solution_cap);

    PartialRectangle one = empty_rectangle(2, 2, 2);
    one.cell(1, 1).counts = {1, 1};
    RectVerdict pinned = is_defining_rect(one);
    CHECK(pinned.status == OracleStatus::defining);
    CHECK(pinned.completions_found == 1);
    REQUIRE(pinned.witnesses.size() == 1);
    CHECK(pinned.witnesses[0] == full_rectangle(2, 2, 2));
    CHECK(pinned.stop == StopReason::complete);

    PartialRectangle s1 = parse_rectangle(slurp(data_file("s1_partial.rect")));
    RectVerdict v = is_defining_rect(s1);
    CHECK(v.status == OracleStatus::not_defining);
    CHECK(v.completions_found == 2);
    CHECK(v.nodes == 16);
    CHECK(v.stop == StopReason::solution_cap);

    PartialRectangle five = parse_rectangle(slurp(data_file("size5_233.rect")));
    RectVerdict d = is_defining_rect(five);
    CHECK(d.status == OracleStatus::defining);
    CHECK(d.witnesses.size() == 1);
    CHECK(d.witnesses[0] == full_rectangle(2, 3, 3));
}

TEST_CASE("budget semantics") {
    SECTION("node cap counts the node that tripped it") {
        EnumerationBudget b{0, 100, 0.0};
        RectEnumeration e = enumerate_rect_completions(empty_rectangle(3, 3, 3), b);
        CHECK(e.stop == StopReason::node_cap);
        CHECK(e.nodes == 101);
        CHECK(e.completions.size() < 847);
    }
    SECTION("solution cap stops at the cap") {
        EnumerationBudget b{5, 0, 0.0};
        RectEnumeration e = enumerate_rect_completions(empty_rectangle(3, 3, 3), b);
        CHECK(e.stop == StopReason::solution_cap);
        CHECK(e.completions.size() == 5);
    }
    SECTION("degenerate budgets are rejected") {
        CHECK_THROWS_AS(enumerate_rect_completions(empty_rectangle(2, 2, 2),
                                                   EnumerationBudget{0, 0, 0.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(enumerate_rect_completions(empty_rectangle(2, 2, 2),
                                                   EnumerationBudget{-1, 10, 0.0}),
                        std::invalid_argument);
    }
    SECTION("worker counts below one are rejected") {
        CHECK_THROWS_AS(enumerate_rect_completions(empty_rectangle(2, 2, 2),
                                                   census_budget, 0),
                        std::invalid_argument);
    }
    SECTION("a budget-exhausted verdict is inconclusive") {
        RectVerdict v = is_defining_rect(empty_rectangle(3, 3, 3),
                                         EnumerationBudget{2, 10, 0.0});
        CHECK(v.status == OracleStatus::budget_exhausted);
        CHECK(v.stop == StopReason::node_cap);
    }
}

TEST_CASE("scale guards") {
    CHECK_THROWS_AS(
        enumerate_rect_completions(empty_rectangle(3, 3, 8), census_budget),
        std::invalid_argument);
    CHECK_THROWS_AS(
        enumerate_design_candidates(PartialDesign{8, 4, {}}, full_lambda(8, 4),
                                    census_budget),
        std::invalid_argument);
    CHECK_THROWS_AS(latin_completions(empty_latin(6), census_budget),
                    std::invalid_argument);

    // The override lifts the guard; a one-row, one-symbol strip is cheap.
    RectEnumeration wide = enumerate_rect_completions(empty_rectangle(1, 65, 1),
                                                      census_budget, 1, true);
    CHECK(wide.completions.size() == 1);
}

TEST_CASE("design candidate enumeration fixed points") {
    DesignEnumeration e43 =
        enumerate_design_candidates(PartialDesign{4, 3, {}}, 2, census_budget);
    REQUIRE(e43.candidates.size() == 1);
    CHECK(e43.candidates[0] == full_design_candidate(4, 3));

    DesignEnumeration e53 =
        enumerate_design_candidates(PartialDesign{5, 3, {}}, 3, census_budget);
    REQUIRE(e53.candidates.size() == 1);
    CHECK(e53.candidates[0] == full_design_candidate(5, 3));
}

TEST_CASE("design verdicts") {
    DesignVerdict v43 = is_defining_design(PartialDesign{4, 3, {}});
    CHECK(v43.status == OracleStatus::defining);
    CHECK(v43.completions_found == 1);
    REQUIRE(v43.witnesses.size() == 1);
    CHECK(v43.witnesses[0] == full_design_candidate(4, 3));

    CHECK(is_defining_design(PartialDesign{5, 3, {}}).status == OracleStatus::defining);
    CHECK(is_defining_design(PartialDesign{6, 3, {}}).status ==
          OracleStatus::not_defining);

    PartialDesign nine =
        parse_design(slurp(data_file("f53_minus_345.design"))).as_partial_design();
    DesignVerdict v = is_defining_design(nine);
    CHECK(v.status == OracleStatus::defining);
    CHECK(v.witnesses[0] == full_design_candidate(5, 3));
}

TEST_CASE("the 23-block system has exactly three candidates") {
    PartialDesign d =
        parse_design(slurp(data_file("golden_73.design"))).as_partial_design();
    DesignEnumeration e = enumerate_design_candidates(d, 5, census_budget);
    REQUIRE(e.candidates.size() == 3);
    CHECK(e.nodes == 15808);
    CHECK(e.stop == StopReason::complete);
    for (const DesignCandidate& c : e.candidates) {
        CHECK(!validate_design_candidate(c));
        CHECK(contains(c, d));
    }
    CHECK(std::count(e.candidates.begin(), e.candidates.end(),
                     full_design_candidate(7, 3)) == 1);

    // The swap certificate's result is one of the three.
    auto cert = design_certificate(d);
    REQUIRE(cert);
    DesignCandidate swapped = apply_design_swap(*cert, 7, 3);
    CHECK(std::count(e.candidates.begin(), e.candidates.end(), swapped) == 1);
}

TEST_CASE("latin square enumeration") {
    LatinEnumeration all = latin_completions(empty_latin(3), census_budget, true);
    CHECK(all.count == 12);
    REQUIRE(all.squares.size() == 12);
    CHECK(all.squares[0].grid == std::vector<int>{1, 2, 3, 2, 3, 1, 3, 1, 2});
    for (const PartialLatin& s : all.squares) CHECK(!validate_partial_latin(s));

    LatinEnumeration counted = latin_completions(empty_latin(3), census_budget, false);
    CHECK(counted.count == 12);
    CHECK(counted.squares.empty());
    CHECK(counted.nodes == all.nodes);

    PartialLatin reduced = empty_latin(3);
    reduced.at(1, 1) = 1;
    reduced.at(1, 2) = 2;
    reduced.at(1, 3) = 3;
    reduced.at(2, 1) = 2;
    reduced.at(3, 1) = 3;
    CHECK(latin_completions(reduced, census_budget).count == 1);

    CHECK(latin_completions(empty_latin(4), census_budget).count == 576);
}

TEST_CASE("census deduplication") {
    RectEnumeration e222 = enumerate_rect_completions(empty_rectangle(2, 2, 2), census_budget);
    long long canonical = 0;
    for (const BalancedRectangle& r : e222.completions)
        if (census_canonical(r)) ++canonical;
    CHECK(canonical == 2);

    LatinEnumeration l3 = latin_completions(empty_latin(3), census_budget, true);
    canonical = 0;
    for (const PartialLatin& s : l3.squares)
        if (census_canonical(s)) ++canonical;
    CHECK(canonical == 2);

    CHECK(census_canonical(full_design_candidate(4, 3)));

    BalancedRectangle big = full_rectangle(1, 1, 7);
    CHECK_THROWS_AS(census_canonical(big), std::invalid_argument);
    CHECK_THROWS_AS(census_canonical(full_design_candidate(9, 3)), std::invalid_argument);
    PartialLatin l6 = empty_latin(6);
    CHECK_THROWS_AS(census_canonical(l6), std::invalid_argument);
}

TEST_CASE("worker count never changes results") {
    PartialRectangle d = empty_rectangle(3, 3, 3);
    RectEnumeration one = enumerate_rect_completions(d, census_budget, 1);
    RectEnumeration four = enumerate_rect_completions(d, census_budget, 4);
    CHECK(one.completions == four.completions);
    CHECK(one.nodes == four.nodes);
    CHECK(one.stop == four.stop);

    EnumerationBudget capped{0, 1000, 0.0};
    RectEnumeration c1 = enumerate_rect_completions(d, capped, 1);
    RectEnumeration c4 = enumerate_rect_completions(d, capped, 4);
    CHECK(c1.completions == c4.completions);
    CHECK(c1.nodes == c4.nodes);
    CHECK(c1.stop == c4.stop);
    CHECK(c1.stop == StopReason::node_cap);

    PartialDesign g =
        parse_design(slurp(data_file("golden_73.design"))).as_partial_design();
    DesignEnumeration d1 = enumerate_design_candidates(g, 5, census_budget, 1);
    DesignEnumeration d4 = enumerate_design_candidates(g, 5, census_budget, 4);
    CHECK(d1.candidates == d4.candidates);
    CHECK(d1.nodes == d4.nodes);

    LatinEnumeration l1 = latin_completions(empty_latin(4), census_budget, false, 1);
    LatinEnumeration l4 = latin_completions(empty_latin(4), census_budget, false, 4);
    CHECK(l1.count == l4.count);
    CHECK(l1.nodes == l4.nodes);
}
