#ifndef HM3_RATIONAL_HPP
#define HM3_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace hm3 {

/// Exact rational with int64 numerator/denominator, always normalized
/// (den > 0, gcd(|num|, den) = 1).  Densities and thresholds throughout
/// the library are rationals so that comparisons like d >= 2*eta are
/// bit-exact; comparisons go through 128-bit intermediates.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    static Rational parse(const std::string & text);

    double to_double() const { return double(num) / double(den); }
    std::string str() const;

    bool is_zero() const { return num == 0; }
    bool is_negative() const { return num < 0; }

    Rational operator+(const Rational & o) const;
    Rational operator-(const Rational & o) const;
    Rational operator*(const Rational & o) const;
    Rational operator/(const Rational & o) const;
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    bool operator==(const Rational & o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational & o) const { return !(*this == o); }
    bool operator<(const Rational & o) const;
    bool operator<=(const Rational & o) const;
    bool operator>(const Rational & o) const { return o < *this; }
    bool operator>=(const Rational & o) const { return o <= *this; }
};

/// p/q >= x, with q > 0.
bool ratio_ge(long long p, long long q, const Rational & x);
/// p/q < x, with q > 0.
bool ratio_lt(long long p, long long q, const Rational & x);
/// p/q >= x^(1/k), for p >= 0, q > 0, x >= 0 (irrational thresholds such as
/// sqrt(eta) compare exactly by raising both sides to the k-th power).
bool ratio_ge_root(long long p, long long q, const Rational & x, int k);
/// p/q < x^(1/k).
bool ratio_lt_root(long long p, long long q, const Rational & x, int k);
/// p/q > x^(1/k).
bool ratio_gt_root(long long p, long long q, const Rational & x, int k);
/// p/q <= x^(1/k).
bool ratio_le_root(long long p, long long q, const Rational & x, int k);

long long floor_mul(const Rational & x, long long n);
long long ceil_mul(const Rational & x, long long n);
/// Smallest integer m with m >= x^(1/k) * n (exact, via m^k >= x * n^k).
long long ceil_mul_root(const Rational & x, int k, long long n);

/// Nearest rational with the given denominator to x^(1/k); used only to
/// derive runtime parameters (eta = alpha^(3/2)), never in exact tests.
Rational approx_root(const Rational & x, int k, long long denom = 1000000);

} // namespace hm3

#endif
