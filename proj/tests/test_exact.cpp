#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "defset/exact.hpp"

using namespace defset;

TEST_CASE("rationals normalize on construction") {
    CHECK(rat(6, 4) == rat(3, 2));
    CHECK(rat(-6, 4) == rat(-3, 2));
    CHECK(rat(6, -4) == rat(-3, 2));
    CHECK(rat(-6, -4) == rat(3, 2));
    CHECK(rat(0, 7) == rat(0));
    CHECK(rat(5).den == 1);
    CHECK(rat(3, 2).num == 3);
    CHECK(rat(3, 2).den == 2);
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic") {
    CHECK(add(rat(1, 2), rat(1, 3)) == rat(5, 6));
    CHECK(sub(rat(1, 2), rat(1, 3)) == rat(1, 6));
    CHECK(mul(rat(2, 3), rat(3, 4)) == rat(1, 2));
    CHECK(div(rat(1, 2), rat(1, 4)) == rat(2));
    CHECK(div(rat(0), rat(7, 3)) == rat(0));
    CHECK_THROWS_AS(div(rat(1), rat(0)), std::invalid_argument);

    CHECK(cmp(rat(1, 3), rat(1, 2)) < 0);
    CHECK(cmp(rat(1, 2), rat(1, 3)) > 0);
    CHECK(cmp(rat(2, 4), rat(1, 2)) == 0);
    CHECK(cmp(rat(-1, 2), rat(-1, 3)) < 0);

    CHECK(to_long_double(rat(1, 4)) == 0.25L);
}

TEST_CASE("rational overflow is detected, not wrapped") {
    const long long big = 3037000500LL;  // ~2^31.5, big*big > 2^63
    CHECK_THROWS_AS(mul(rat(big), rat(big)), std::overflow_error);
    CHECK_NOTHROW(mul(rat(big), rat(1, big)));
}

TEST_CASE("surds canonicalize") {
    CHECK(surd(rat(3, 2)).q == rat(0));
    CHECK(surd(rat(3, 2)).r == 0);
    CHECK(surd(rat(1), rat(0), 17).r == 0);
    CHECK(surd(rat(0), rat(1), 225) == surd(rat(15)));
    CHECK(surd(rat(0), rat(1, 2), 4) == surd(rat(1)));
    CHECK(surd(rat(1), rat(2), 3).r == 3);
    CHECK_THROWS_AS(surd(rat(0), rat(1), -1), std::invalid_argument);
}

TEST_CASE("surd arithmetic and comparison") {
    const Surd s = surd(rat(1), rat(1), 2);  // 1 + sqrt(2)
    CHECK(add(s, rat(2)).p == rat(3));
    CHECK(mul(s, rat(3)).q == rat(3));
    CHECK(cmp(s, rat(2)) > 0);
    CHECK(cmp(s, rat(3)) < 0);
    CHECK(cmp(surd(rat(0), rat(1), 4), rat(2)) == 0);

    // sqrt(2) vs 1.5 resolves exactly by squaring, not through doubles.
    CHECK(cmp(surd(rat(0), rat(1), 2), rat(3, 2)) < 0);
    CHECK(cmp(surd(rat(0), rat(1), 2), rat(7, 5)) > 0);

    const Surd a = surd(rat(1), rat(1), 5);
    const Surd b = surd(rat(2), rat(-1), 5);
    CHECK(cmp(a, b) > 0);
    CHECK(cmp(a, a) == 0);
    CHECK_THROWS_AS(cmp(surd(rat(0), rat(1), 2), surd(rat(0), rat(1), 3)),
                    std::logic_error);

    CHECK(to_double(surd(rat(0), rat(1), 2)) == Catch::Approx(1.41421356).epsilon(1e-8));
}

TEST_CASE("guarded ceiling") {
    CHECK(ceil_guarded(surd(rat(2))) == 2);
    CHECK(ceil_guarded(surd(rat(5, 2))) == 3);
    CHECK(ceil_guarded(surd(rat(-5, 2))) == -2);
    CHECK(ceil_guarded(surd(rat(0))) == 0);
    CHECK(ceil_guarded(surd(rat(0), rat(1), 2)) == 2);

    // 45/2 - (3/4) sqrt(276) = 10.0400..., the 3x3x3 verbatim bound.
    const Surd bound = surd(rat(45, 2), rat(-3, 4), 276);
    CHECK(to_double(bound) == Catch::Approx(10.040064).margin(1e-6));
    CHECK(ceil_guarded(bound) == 11);
}
