#include "defset/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace defset {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

i128 abs128(i128 x) {
    return x < 0 ? -x : x;
}

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat reduce(i128 num, i128 den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr i128 lo = -0x7fffffffffffffffLL, hi = 0x7fffffffffffffffLL;
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational out of int64 range");
    return Rat{static_cast<long long>(num), static_cast<long long>(den)};
}

int sign(long long x) {
    return x < 0 ? -1 : x > 0 ? 1 : 0;
}

// 256-bit product support, enough to compare a^2 against b^2 * r without
// any overflow for |a|, |b| < 2^90 and r < 2^50.
struct U256 {
    u128 hi = 0;
    u128 lo = 0;
};

U256 mul_u128(u128 a, u128 b) {
    constexpr u128 mask = ~static_cast<std::uint64_t>(0);
    u128 a0 = a & mask, a1 = a >> 64;
    u128 b0 = b & mask, b1 = b >> 64;
    u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
    u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    U256 out;
    out.lo = (mid << 64) | (p00 & mask);
    out.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return out;
}

U256 mul_u256_u64(U256 a, std::uint64_t m) {
    U256 low = mul_u128(a.lo, m);
    U256 high = mul_u128(a.hi, m);
    if (high.hi != 0) throw std::overflow_error("256-bit product overflow");
    U256 out;
    out.lo = low.lo;
    out.hi = low.hi + high.lo;
    if (out.hi < low.hi) throw std::overflow_error("256-bit product overflow");
    return out;
}

int cmp_u256(U256 a, U256 b) {
    if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
    if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
    return 0;
}

// Sign of a + b*sqrt(r); a, b rational, r > 0 and not a perfect square.
int sign_of_sum(Rat a, Rat b, long long r) {
    int sa = sign(a.num), sb = sign(b.num);
    if (sa == sb) return sa;
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    // Opposite signs: compare a^2 against b^2 r after clearing denominators.
    u128 A = static_cast<u128>(abs128(static_cast<i128>(a.num) * b.den));
    u128 B = static_cast<u128>(abs128(static_cast<i128>(b.num) * a.den));
    int c = cmp_u256(mul_u128(A, A), mul_u256_u64(mul_u128(B, B), static_cast<std::uint64_t>(r)));
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

long long isqrt_floor(long long r) {
    if (r < 0) throw std::invalid_argument("negative radicand");
    auto s = static_cast<long long>(std::sqrt(static_cast<double>(r)));
    while (s > 0 && static_cast<i128>(s) * s > r) --s;
    while (static_cast<i128>(s + 1) * (s + 1) <= r) ++s;
    return s;
}

} // namespace

Rat rat(long long num, long long den) {
    return reduce(num, den);
}

Rat add(Rat a, Rat b) {
    return reduce(static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den,
                  static_cast<i128>(a.den) * b.den);
}

Rat sub(Rat a, Rat b) {
    return add(a, Rat{-b.num, b.den});
}

Rat mul(Rat a, Rat b) {
    return reduce(static_cast<i128>(a.num) * b.num, static_cast<i128>(a.den) * b.den);
}

Rat div(Rat a, Rat b) {
    if (b.num == 0) throw std::invalid_argument("division by zero");
    return reduce(static_cast<i128>(a.num) * b.den, static_cast<i128>(a.den) * b.num);
}

int cmp(Rat a, Rat b) {
    i128 d = static_cast<i128>(a.num) * b.den - static_cast<i128>(b.num) * a.den;
    return d < 0 ? -1 : d > 0 ? 1 : 0;
}

long double to_long_double(Rat a) {
    return static_cast<long double>(a.num) / static_cast<long double>(a.den);
}

Surd surd(Rat p) {
    return Surd{p, Rat{0, 1}, 0};
}

Surd surd(Rat p, Rat q, long long r) {
    if (r < 0) throw std::invalid_argument("negative radicand");
    if (q.num == 0 || r == 0) return Surd{p, Rat{0, 1}, 0};
    long long s = isqrt_floor(r);
    if (s * s == r) return Surd{add(p, mul(q, rat(s))), Rat{0, 1}, 0};
    return Surd{p, q, r};
}

Surd add(const Surd& a, Rat b) {
    return Surd{add(a.p, b), a.q, a.r};
}

Surd mul(const Surd& a, Rat b) {
    if (b.num == 0) return surd(rat(0));
    return Surd{mul(a.p, b), mul(a.q, b), a.r};
}

int cmp(const Surd& a, Rat b) {
    if (a.r == 0) return cmp(a.p, b);
    return sign_of_sum(sub(a.p, b), a.q, a.r);
}

int cmp(const Surd& a, const Surd& b) {
    if (a.r == 0) return -cmp(b, a.p);
    if (b.r == 0) return cmp(a, b.p);
    if (a.r != b.r) throw std::logic_error("comparing surds over different radicands");
    return sign_of_sum(sub(a.p, b.p), sub(a.q, b.q), a.r);
}

long double to_long_double(const Surd& a) {
    return to_long_double(a.p) +
           to_long_double(a.q) * std::sqrt(static_cast<long double>(a.r));
}

double to_double(const Surd& a) {
    return static_cast<double>(to_long_double(a));
}

long long ceil_guarded(const Surd& value) {
    long double est = to_long_double(value);
    auto z = static_cast<long long>(std::ceil(est)) - 2;
    while (cmp(value, rat(z)) > 0) ++z;
    // z is now the exact ceiling; drop back one step when the value sits
    // within the guard band above z - 1.
    if (cmp(value, rat((z - 1) * 1'000'000'000LL + 1, 1'000'000'000LL)) <= 0) --z;
    return z;
}

} // namespace defset
