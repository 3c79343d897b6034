#pragma once

#include <cstdint>

namespace defset {

// Exact int64 rational, normalized: den > 0, gcd(|num|, den) = 1.
// Intermediates use 128-bit arithmetic; construction throws
// std::overflow_error if a reduced value no longer fits, which stays far
// out of reach for the parameter ranges used here.
struct Rat {
    long long num = 0;
    long long den = 1;

    bool operator==(const Rat&) const = default;
};

Rat rat(long long num, long long den = 1);
Rat add(Rat a, Rat b);
Rat sub(Rat a, Rat b);
Rat mul(Rat a, Rat b);
Rat div(Rat a, Rat b);
// Sign of a - b.
int cmp(Rat a, Rat b);
long double to_long_double(Rat a);

// p + q*sqrt(r) with rational p, q and integer radicand r >= 0.
// Canonical form: r = 0 iff q = 0; a perfect-square radicand is folded
// into p. This one extension field is enough for every bound formula in
// the library, so comparisons stay exact.
struct Surd {
    Rat p;
    Rat q;
    long long r = 0;

    bool operator==(const Surd&) const = default;
};

Surd surd(Rat p);
Surd surd(Rat p, Rat q, long long r);
Surd add(const Surd& a, Rat b);
Surd mul(const Surd& a, Rat b);
// Sign of a - b, exact.
int cmp(const Surd& a, Rat b);
// Requires equal radicands after canonicalization (all comparisons in this
// library are between values over the same square root).
int cmp(const Surd& a, const Surd& b);
long double to_long_double(const Surd& a);
double to_double(const Surd& a);

// Smallest integer z with z >= value - 1e-9. The guard band keeps values
// that are an epsilon above an integer from being rounded up a full step;
// the comparison against z - 1 + 1e-9 is exact.
long long ceil_guarded(const Surd& value);

} // namespace defset
