#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gf {

// Exact rational over int64. Every density / threshold comparison in the
// library goes through this type or through ScaledPower below; no
// floating-point ever decides an inequality.
class Rational {
public:
    Rational() = default;

    Rational(long long n) : num_(n), den_(1) {}

    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    // sign of (*this - o), exact via 128-bit cross multiplication
    int cmp(const Rational& o) const
    {
        __int128 lhs = static_cast<__int128>(num_) * o.den_;
        __int128 rhs = static_cast<__int128>(o.num_) * den_;
        return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
    }

    bool operator==(const Rational& o) const { return cmp(o) == 0; }
    bool operator!=(const Rational& o) const { return cmp(o) != 0; }
    bool operator<(const Rational& o) const { return cmp(o) < 0; }
    bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
    bool operator>(const Rational& o) const { return cmp(o) > 0; }
    bool operator>=(const Rational& o) const { return cmp(o) >= 0; }

    Rational operator+(const Rational& o) const
    {
        __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        return from_i128(n, d);
    }

    Rational operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }

    Rational operator*(const Rational& o) const
    {
        long long g1 = std::gcd(num_, o.den_);
        long long g2 = std::gcd(o.num_, den_);
        __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
        __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
        return from_i128(n, d);
    }

    Rational operator/(const Rational& o) const
    {
        if (o.num_ == 0)
            throw std::domain_error("Rational: division by zero");
        return *this * Rational(o.den_, o.num_);
    }

    Rational operator-() const { return Rational(-num_, den_); }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    long long floor() const
    {
        if (num_ >= 0 || num_ % den_ == 0)
            return num_ / den_;
        return num_ / den_ - 1;
    }

    long long ceil() const
    {
        if (num_ <= 0 || num_ % den_ == 0)
            return num_ / den_;
        return num_ / den_ + 1;
    }

    // small integer powers only; exponents in this library stay below 10
    Rational pow_int(int e) const
    {
        if (e < 0)
            return Rational(1) / pow_int(-e);
        Rational r(1);
        for (int i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

    std::string str() const
    {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    long long num_ = 0;
    long long den_ = 1;

    static Rational from_i128(__int128 n, __int128 d)
    {
        if (d == 0)
            throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("Rational: value out of 64-bit range");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b)
    {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void normalize()
    {
        Rational r = from_i128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }
};

namespace detail {
    using bigint = boost::multiprecision::cpp_int;

    inline bigint bpow(bigint b, unsigned e)
    {
        bigint r = 1;
        while (e) {
            if (e & 1)
                r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
}

// A value of the form coef * base^(en/ed), with coef >= 0, base >= 0 and
// ed >= 1. This covers every threshold and sampling probability the
// extractors need: plain rationals (en = 0), d^{1/5}, 3*d^{-1/2},
// Delta^{-3/4}/2, k^7, and so on. Comparisons against rationals clear the
// fractional exponent by raising both sides to the ed-th power, computed
// exactly over big integers.
struct ScaledPower {
    Rational coef{1};
    Rational base{1};
    int en = 0;
    int ed = 1;

    static ScaledPower rational(Rational r)
    {
        if (r < Rational(0))
            throw std::invalid_argument("ScaledPower: negative value");
        return ScaledPower{r, Rational(1), 0, 1};
    }

    static ScaledPower power(Rational coef, Rational base, int en, int ed)
    {
        if (ed < 1 || coef < Rational(0) || base < Rational(0))
            throw std::invalid_argument("ScaledPower: bad parameters");
        return ScaledPower{coef, base, en, ed};
    }

    bool infinite() const { return base.is_zero() && en < 0 && !coef.is_zero(); }

    // sign of (x - value), for x >= 0
    int cmp(const Rational& x) const
    {
        if (x < Rational(0))
            throw std::invalid_argument("ScaledPower::cmp: negative lhs");
        if (infinite())
            return -1;
        if (coef.is_zero() || (base.is_zero() && en > 0))
            return x.is_zero() ? 0 : 1;
        using detail::bigint;
        using detail::bpow;
        unsigned f = static_cast<unsigned>(ed);
        unsigned e = static_cast<unsigned>(en < 0 ? -en : en);
        // x^f  vs  coef^f * base^en
        bigint lhs = bpow(bigint(x.num()), f) * bpow(bigint(coef.den()), f);
        bigint rhs = bpow(bigint(x.den()), f) * bpow(bigint(coef.num()), f);
        if (en >= 0) {
            lhs *= bpow(bigint(base.den()), e);
            rhs *= bpow(bigint(base.num()), e);
        } else {
            lhs *= bpow(bigint(base.num()), e);
            rhs *= bpow(bigint(base.den()), e);
        }
        return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
    }

    bool leq(const Rational& x) const { return cmp(x) >= 0; }  // value <= x
    bool geq(const Rational& x) const { return cmp(x) <= 0; }  // value >= x

    bool at_least_one() const { return cmp(Rational(1)) <= 0; }

    // Exact Bernoulli trial: accepts iff draw / 2^64 < value. Probabilities
    // >= 1 always accept since draw / 2^64 < 1.
    bool bernoulli(std::uint64_t draw) const
    {
        if (infinite())
            return true;
        if (coef.is_zero() || (base.is_zero() && en > 0))
            return false;
        using detail::bigint;
        using detail::bpow;
        unsigned f = static_cast<unsigned>(ed);
        unsigned e = static_cast<unsigned>(en < 0 ? -en : en);
        // (draw/2^64)^f  <  coef^f * base^en
        bigint lhs = bpow(bigint(draw), f) * bpow(bigint(coef.den()), f);
        bigint rhs = bpow(bigint(1) << 64, f) * bpow(bigint(coef.num()), f);
        if (en >= 0) {
            lhs *= bpow(bigint(base.den()), e);
            rhs *= bpow(bigint(base.num()), e);
        } else {
            lhs *= bpow(bigint(base.num()), e);
            rhs *= bpow(bigint(base.den()), e);
        }
        return lhs < rhs;
    }
};

// Exact test of  a >= k / (400 * log2 k),  the max-degree-reduction bound.
// Equivalent to  log2 k >= k/(400a)  i.e.  k^q >= 2^p  with p/q = k/(400a).
inline bool meets_log_guarantee(const Rational& a, const Rational& k)
{
    if (k <= Rational(1))
        return false;  // log2 k <= 0: bound is not meaningful
    if (a <= Rational(0))
        return false;
    Rational r = k / (Rational(400) * a);
    if (r <= Rational(0))
        return true;
    long long p = r.num(), q = r.den();
    // k < 2^64 always here, so p > 64q forces k^q < 2^p
    if (p > 64 * q)
        return false;
    using detail::bigint;
    using detail::bpow;
    bigint lhs = bpow(bigint(k.num()), static_cast<unsigned>(q));
    bigint rhs = (bigint(1) << static_cast<unsigned>(p)) * bpow(bigint(k.den()), static_cast<unsigned>(q));
    return lhs >= rhs;
}

}  // namespace gf
