#include "hm3/rational.hpp"

#include "hm3/error.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace hm3 {

namespace {

using i128 = __int128;

long long narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw Error(Err::Internal, "rational overflow");
    return (long long)v;
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
}

// x^k with a coarse overflow guard; desk-scale inputs stay far from the limit.
i128 ipow(i128 x, int k) {
    i128 r = 1;
    i128 ax = x < 0 ? -x : x;
    for (int i = 0; i < k; ++i) {
        if (ax != 0 && (r < 0 ? -r : r) > (i128(1) << 120) / ax)
            throw Error(Err::Internal, "power overflow in exact comparison");
        r *= x;
    }
    return r;
}

Rational make_reduced(i128 n, i128 d) {
    i128 g = gcd128(n, d);
    Rational r;
    r.num = narrow(n / g);
    r.den = narrow(d / g);
    return r;
}

} // namespace

const char * err_name(Err e) {
    switch (e) {
    case Err::InvalidTriple: return "InvalidTriple";
    case Err::SubsetTooSmall: return "SubsetTooSmall";
    case Err::SetsNotDisjoint: return "SetsNotDisjoint";
    case Err::InvalidOrder: return "InvalidOrder";
    case Err::OrderTooLarge: return "OrderTooLarge";
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::DensityTooLow: return "DensityTooLow";
    case Err::EmptyGraph: return "EmptyGraph";
    case Err::AbsorptionFailed: return "AbsorptionFailed";
    case Err::NotExtremal: return "NotExtremal";
    case Err::BelowThreshold: return "BelowThreshold";
    case Err::GreedyFailed: return "GreedyFailed";
    case Err::GoodPairGraphTooSparse: return "GoodPairGraphTooSparse";
    case Err::HallViolated: return "HallViolated";
    case Err::ParseError: return "ParseError";
    case Err::Internal: return "Internal";
    }
    return "Unknown";
}

Rational::Rational(long long n, long long d) {
    if (d == 0)
        throw Error(Err::InvalidArgument, "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::parse(const std::string & text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long n = std::stoll(text.substr(0, slash));
        long long d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return Rational(std::stoll(text));
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 15)
        frac = frac.substr(0, 15);
    bool neg = !whole.empty() && whole[0] == '-';
    long long w = whole.empty() || whole == "-" ? 0 : std::llabs(std::stoll(whole));
    long long scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    long long f = frac.empty() ? 0 : std::stoll(frac);
    long long n = w * scale + f;
    return Rational(neg ? -n : n, scale);
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::operator+(const Rational & o) const {
    return make_reduced(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
}

Rational Rational::operator-(const Rational & o) const { return *this + (-o); }

Rational Rational::operator*(const Rational & o) const {
    return make_reduced(i128(num) * o.num, i128(den) * o.den);
}

Rational Rational::operator/(const Rational & o) const {
    if (o.num == 0)
        throw Error(Err::InvalidArgument, "rational division by zero");
    return make_reduced(i128(num) * o.den, i128(den) * o.num);
}

bool Rational::operator<(const Rational & o) const {
    return i128(num) * o.den < i128(o.num) * den;
}

bool Rational::operator<=(const Rational & o) const {
    return i128(num) * o.den <= i128(o.num) * den;
}

bool ratio_ge(long long p, long long q, const Rational & x) {
    if (q <= 0) throw Error(Err::InvalidArgument, "ratio_ge with nonpositive denominator");
    return i128(p) * x.den >= i128(x.num) * q;
}

bool ratio_lt(long long p, long long q, const Rational & x) {
    return !ratio_ge(p, q, x);
}

bool ratio_ge_root(long long p, long long q, const Rational & x, int k) {
    if (q <= 0) throw Error(Err::InvalidArgument, "ratio_ge_root with nonpositive denominator");
    if (x.num < 0) return p >= 0;
    if (p < 0) return false;
    // p/q >= x^(1/k)  <=>  p^k * x.den >= x.num * q^k   (all terms nonnegative)
    return ipow(p, k) * x.den >= i128(x.num) * ipow(q, k);
}

bool ratio_lt_root(long long p, long long q, const Rational & x, int k) {
    return !ratio_ge_root(p, q, x, k);
}

bool ratio_gt_root(long long p, long long q, const Rational & x, int k) {
    if (q <= 0) throw Error(Err::InvalidArgument, "ratio_gt_root with nonpositive denominator");
    if (x.num < 0) return p >= 0;
    if (p < 0) return false;
    return ipow(p, k) * x.den > i128(x.num) * ipow(q, k);
}

bool ratio_le_root(long long p, long long q, const Rational & x, int k) {
    return !ratio_gt_root(p, q, x, k);
}

long long floor_mul(const Rational & x, long long n) {
    i128 v = i128(x.num) * n;
    i128 d = x.den;
    i128 q = v / d;
    if (v % d != 0 && v < 0) q -= 1;
    return narrow(q);
}

long long ceil_mul(const Rational & x, long long n) {
    i128 v = i128(x.num) * n;
    i128 d = x.den;
    i128 q = v / d;
    if (v % d != 0 && v > 0) q += 1;
    return narrow(q);
}

long long ceil_mul_root(const Rational & x, int k, long long n) {
    if (x.num <= 0 || n <= 0) return 0;
    double guess = std::pow(x.to_double(), 1.0 / k) * double(n);
    long long m = (long long)std::floor(guess) - 2;
    if (m < 0) m = 0;
    // smallest m with m^k * x.den >= x.num * n^k
    while (ipow(m, k) * x.den < i128(x.num) * ipow(n, k)) ++m;
    return m;
}

Rational approx_root(const Rational & x, int k, long long denom) {
    if (x.num < 0) throw Error(Err::InvalidArgument, "root of negative rational");
    double v = std::pow(x.to_double(), 1.0 / k);
    long long p = (long long)std::llround(v * double(denom));
    if (p < 0) p = 0;
    return Rational(p, denom);
}

} // namespace hm3
