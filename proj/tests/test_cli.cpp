#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "subprocess.hpp"

namespace {

std::string q(const std::string& s) { return "'" + s + "'"; }

std::string cli(const std::string& args) { return q(cli_path()) + " " + args; }

std::string cli_on(const std::string& args, const std::string& file) {
    return cli(args) + " " + q(data_file(file));
}

}  // namespace

TEST_CASE("bound command output") {
    CommandResult all = run_stdout(cli("bound --rect 2 2 2 --variant all"));
    CHECK(all.exit_code == 0);
    CHECK(all.output ==
          "rect 2 2 2 variant=verbatim value=2.000000 ceil=2 lambda_prime=1.000000 "
          "clamped=0 ratio=0.250000\n"
          "rect 2 2 2 variant=corrected value=0.708497 ceil=1 lambda_prime=1.322876 "
          "clamped=0 ratio=0.088562\n");

    CommandResult v333 = run_stdout(cli("bound --rect 3 3 3 --variant verbatim"));
    CHECK(v333.exit_code == 0);
    CHECK(v333.output ==
          "rect 3 3 3 variant=verbatim value=10.040064 ceil=11 lambda_prime=1.384437 "
          "clamped=0 ratio=0.371854\n");

    CommandResult d93 = run_stdout(cli("bound --design 9 3"));
    CHECK(d93.exit_code == 0);
    CHECK(d93.output ==
          "design 9 3 kind=triples value=28.644149 ceil=29 blocks=84 "
          "complement_fraction=0.658998 clamped=0\n"
          "design 9 3 kind=general value=28.644149 ceil=29 blocks=84 "
          "complement_fraction=0.658998 clamped=0\n");

    CommandResult d74 = run_stdout(cli("bound --design 7 4"));
    CHECK(d74.exit_code == 0);
    CHECK(d74.output ==
          "design 7 4 kind=projected value=2.569606 ceil=3 blocks=35 "
          "complement_fraction=0.926583 clamped=0\n"
          "design 7 4 kind=general value=4.496810 ceil=5 blocks=35 "
          "complement_fraction=0.871520 clamped=0\n");
}

TEST_CASE("verify reports the two-completion witness pair") {
    CommandResult r = run_stdout(cli_on("verify --rect", "s1_partial.rect"));
    CHECK(r.exit_code == 1);
    CHECK(r.output ==
          "certificate: none\n"
          "verdict: not-defining\n"
          "completions: 2\n"
          "nodes: 16\n"
          "stop: solution-cap\n"
          "witness 1:\n"
          "rect 2 3 3\n"
          "1,2,3 | 2,3,3 | 1,1,2\n"
          "1,2,3 | 1,1,2 | 2,3,3\n"
          "witness 2:\n"
          "rect 2 3 3\n"
          "1,2,3 | 1,2,3 | 1,2,3\n"
          "1,2,3 | 1,2,3 | 1,2,3\n");
}

TEST_CASE("verify confirms a defining set") {
    CommandResult r = run_stdout(cli_on("verify --rect", "size5_233.rect"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "certificate: none\n"
          "verdict: defining\n"
          "completions: 1\n"
          "nodes: 20\n"
          "stop: complete\n"
          "witness 1:\n"
          "rect 2 3 3\n"
          "1,2,3 | 1,2,3 | 1,2,3\n"
          "1,2,3 | 1,2,3 | 1,2,3\n");
}

TEST_CASE("certificate-only mode never claims defining") {
    CommandResult r = run_stdout(cli_on("verify --mode certificate --rect", "size5_233.rect"));
    CHECK(r.exit_code == 2);
    CHECK(r.output == "certificate: none\nverdict: unknown\n");
}

TEST_CASE("certificate mode on the empty square") {
    CommandResult r = run_stdout(cli_on("verify --mode certificate --rect", "empty_222.rect"));
    CHECK(r.exit_code == 1);
    CHECK(r.output ==
          "verdict: not-defining\n"
          "certificate:\n"
          "cert rect 2 2 2 pair 1 2\n"
          "M1: 1,1 2,2\n"
          "M2: 2,1 1,2\n"
          "rect 2 2 2\n"
          "2,2 | 1,1\n"
          "1,1 | 2,2\n");
}

TEST_CASE("certificate mode on the 23-block system") {
    CommandResult r = run_stdout(cli_on("verify --mode certificate --design", "golden_73.design"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.rfind("verdict: not-defining\n"
                         "certificate:\n"
                         "cert design 7 3 pair 6 7\n"
                         "F1: 1,2 3,1 4,5\n"
                         "F2: 2,3 1,4 5,1\n"
                         "design 7 3 5\n",
                         0) == 0);
    CHECK(r.output.find("x2 1 2 7\n") != std::string::npos);
    CHECK(r.output.find("1 2 6") == std::string::npos);
}

TEST_CASE("verify skips the certificate stage on multiset cells") {
    CommandResult r = run_stdout(cli_on("verify --rect", "s1_alternative.rect"));
    CHECK(r.exit_code == 1);
    CHECK(r.output ==
          "certificate: skipped (set-valued cells required)\n"
          "verdict: not-defining\n"
          "completions: 1\n"
          "nodes: 6\n"
          "stop: complete\n"
          "witness 1:\n"
          "rect 2 3 3\n"
          "1,1,2 | 2,3,3 | 1,2,3\n"
          "2,3,3 | 1,1,2 | 1,2,3\n");
}

TEST_CASE("verify on an empty design input") {
    CommandResult r = run_stdout(cli_on("verify --design", "empty_43.design"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "certificate: none\n"
          "verdict: defining\n"
          "completions: 1\n"
          "nodes: 8\n"
          "stop: complete\n"
          "witness 1:\n"
          "design 4 3 2\n"
          "1 2 3\n"
          "1 2 4\n"
          "1 3 4\n"
          "2 3 4\n");
}

TEST_CASE("search command regression, no violation") {
    CommandResult r = run_stdout(cli("search --rect 2 2 2 --seed 7 --restarts 4"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "restart=0 size=2 passes=2 certified=1 aborted=0\n"
          "restart=1 size=2 passes=2 certified=1 aborted=0\n"
          "restart=2 size=2 passes=2 certified=1 aborted=0\n"
          "restart=3 size=2 passes=2 certified=1 aborted=0\n"
          "best: size=2 restart=0\n"
          "rect 2 2 2\n"
          ". | .\n"
          "2 | 2\n"
          "checks: 28\n"
          "events: none\n");
}

TEST_CASE("search command regression, bound violation") {
    CommandResult r = run_stdout(cli("search --rect 2 3 3 --seed 0 --restarts 4"));
    CHECK(r.exit_code == 4);
    CHECK(r.output ==
          "restart=0 size=7 passes=2 certified=1 aborted=0\n"
          "restart=1 size=5 passes=2 certified=1 aborted=0\n"
          "restart=2 size=6 passes=2 certified=1 aborted=0\n"
          "restart=3 size=6 passes=2 certified=1 aborted=0\n"
          "best: size=5 restart=1\n"
          "rect 2 3 3\n"
          ". | 1,2 | 1,2\n"
          "3 | . | .\n"
          "checks: 52\n"
          "events:\n"
          "event: family=verbatim name=rect-verbatim bound=6.000000 size=5\n"
          "replay: rect 2 3 3 seed=0 restarts=4 order=random restart=1\n"
          "object:\n"
          "rect 2 3 3\n"
          ". | 1,2 | 1,2\n"
          "3 | . | .\n");
}

TEST_CASE("design search command") {
    CommandResult r = run_stdout(cli("search --design 6 3 --seed 0 --restarts 2"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "restart=0 size=6 passes=2 certified=1 aborted=0\n"
          "restart=1 size=6 passes=2 certified=1 aborted=0\n"
          "best: size=6 restart=0\n"
          "design 6 3\n"
          "1 2 3\n"
          "1 2 5\n"
          "1 2 6\n"
          "1 3 5\n"
          "1 3 6\n"
          "1 5 6\n"
          "checks: 30\n"
          "events: none\n");
}

TEST_CASE("tables command") {
    CommandResult rect = run_stdout(cli("tables --rect --max-n 6"));
    CHECK(rect.exit_code == 0);
    CHECK(rect.output ==
          "n\tverbatim\tcorrected\tconstruction_cube\tsaturated_critical\t"
          "construction_half\tbest_search\tbound_exceeds_known_construction\t"
          "search_below_bound\n"
          "2\t2.000000\t0.708497\t2.000000\t-2.000000\t2.000000\t-\t0\t0\n"
          "3\t10.040064\t5.463275\t9.000000\t6.000000\t7.500000\t-\t1\t0\n"
          "4\t28.870680\t18.476674\t28.000000\t28.000000\t20.000000\t-\t1\t0\n"
          "5\t63.446458\t44.263280\t65.000000\t70.000000\t42.500000\t-\t0\t0\n"
          "6\t118.854564\t87.528284\t126.000000\t138.000000\t78.000000\t-\t0\t0\n");

    CommandResult design = run_stdout(cli("tables --design --max-v 9"));
    CHECK(design.exit_code == 0);
    CHECK(design.output ==
          "v\tk\ttriples\tgeneral\tprior_bound\tconstruction_cubic\t"
          "construction_defect_a\tconstruction_defect_b\tconstruction_offset\t"
          "best_search\tbound_exceeds_known_construction\tsearch_below_bound\n"
          "4\t3\t0.000000\t0.000000\t1.714286\t-1.000000\t-3.000000\t0.000000\t"
          "-3.000000\t-\t0\t0\n"
          "5\t3\t0.000000\t0.000000\t4.285714\t1.000000\t0.000000\t2.000000\t"
          "0.000000\t-\t0\t0\n"
          "6\t3\t2.569606\t2.569606\t8.571429\t6.000000\t6.000000\t7.000000\t"
          "7.000000\t-\t0\t0\n"
          "7\t3\t7.675993\t7.675993\t15.000000\t15.000000\t16.000000\t16.000000\t"
          "19.000000\t-\t0\t0\n"
          "8\t3\t16.100773\t16.100773\t24.000000\t29.000000\t31.000000\t30.000000\t"
          "37.000000\t-\t0\t0\n"
          "9\t3\t28.644149\t28.644149\t36.000000\t49.000000\t52.000000\t50.000000\t"
          "62.000000\t-\t0\t0\n");
}

TEST_CASE("oracle count and distinct filter") {
    CommandResult distinct = run_stdout(cli_on("oracle count --distinct --rect", "empty_222.rect"));
    CHECK(distinct.exit_code == 0);
    CHECK(distinct.output == "count: 3\ndistinct: 2\nnodes: 12\nstop: complete\n");

    CommandResult plain = run_stdout(cli_on("oracle count --rect", "empty_233.rect"));
    CHECK(plain.exit_code == 0);
    CHECK(plain.output == "count: 31\nnodes: 168\nstop: complete\n");

    CommandResult design = run_stdout(cli_on("oracle count --design", "golden_73.design"));
    CHECK(design.exit_code == 0);
    CHECK(design.output == "count: 3\nnodes: 15808\nstop: complete\n");
}

TEST_CASE("oracle stream separates completions") {
    CommandResult r = run_stdout(cli_on("oracle stream --rect", "empty_222.rect"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "rect 2 2 2\n"
          "2,2 | 1,1\n"
          "1,1 | 2,2\n"
          "---\n"
          "rect 2 2 2\n"
          "1,2 | 1,2\n"
          "1,2 | 1,2\n"
          "---\n"
          "rect 2 2 2\n"
          "1,1 | 2,2\n"
          "2,2 | 1,1\n"
          "---\n"
          "count: 3\n"
          "nodes: 12\n"
          "stop: complete\n");
}

TEST_CASE("oracle respects node caps and signals them") {
    CommandResult r = run_stdout(cli_on("oracle count --max-nodes 100 --rect", "empty_333.rect"));
    CHECK(r.exit_code == 2);
    CHECK(r.output == "count: 14\nnodes: 101\nstop: node-cap\n");
}

TEST_CASE("input failures exit with the input code") {
    // Write the fixtures fresh so the test owns them.
    run_merged("printf 'rect 2 2 2\\n1 | 5\\n. | .\\n' > /tmp/defset_cli_bad.rect");
    CommandResult bad = run_merged(cli("verify --rect /tmp/defset_cli_bad.rect"));
    CHECK(bad.exit_code == 3);
    CHECK(bad.output == "error: symbol 5 outside 1..2 (line 2, column 5)\n");

    run_merged("printf 'design 5 3 7\\n1 2 3\\n' > /tmp/defset_cli_lambda.design");
    CommandResult lam = run_merged(cli("verify --design /tmp/defset_cli_lambda.design"));
    CHECK(lam.exit_code == 3);
    CHECK(lam.output ==
          "error: verification assumes the full-design pair count lambda = 3\n");

    run_merged("printf 'design 5 3\\nx2 1 2 3\\n' > /tmp/defset_cli_mult.design");
    CommandResult mult = run_merged(cli("verify --design /tmp/defset_cli_mult.design"));
    CHECK(mult.exit_code == 3);
    CHECK(mult.output == "error: verification input must be a simple block set\n");

    CommandResult missing = run_merged(cli("verify --rect /tmp/defset_no_such_file.rect"));
    CHECK(missing.exit_code == 3);

    CommandResult bare = run_merged(cli(""));
    CHECK(bare.exit_code == 3);
}

TEST_CASE("worker count never changes CLI output") {
    CommandResult s1 = run_stdout(cli("search --rect 2 3 3 --seed 0 --restarts 4 --workers 1"));
    CommandResult s4 = run_stdout(cli("search --rect 2 3 3 --seed 0 --restarts 4 --workers 4"));
    CHECK(s1.exit_code == s4.exit_code);
    CHECK(s1.output == s4.output);

    CommandResult o1 = run_stdout(cli_on("oracle stream --workers 1 --rect", "empty_333.rect"));
    CommandResult o4 = run_stdout(cli_on("oracle stream --workers 4 --rect", "empty_333.rect"));
    CHECK(o1.exit_code == 0);
    CHECK(o1.output == o4.output);

    CommandResult d1 = run_stdout(cli_on("oracle count --workers 1 --design", "golden_73.design"));
    CommandResult d4 = run_stdout(cli_on("oracle count --workers 4 --design", "golden_73.design"));
    CHECK(d1.output == d4.output);
}
