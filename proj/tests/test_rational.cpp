#include "girthforge/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using gf::Rational;
using gf::ScaledPower;

TEST_CASE("rational basics")
{
    CHECK(Rational(4, 6) == Rational(2, 3));
    CHECK(Rational(-4, 6) == Rational(-2, 3));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(4, 3).str() == "4/3");
    CHECK(Rational(-4, 3).str() == "-4/3");
}

TEST_CASE("rational arithmetic and comparison")
{
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 2) > Rational(3));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational floor ceil pow")
{
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(6, 3).floor() == 2);
    CHECK(Rational(6, 3).ceil() == 2);
    CHECK(Rational(2, 3).pow_int(3) == Rational(8, 27));
    CHECK(Rational(2).pow_int(0) == Rational(1));
    CHECK(Rational(2).pow_int(-2) == Rational(1, 4));
}

TEST_CASE("rational overflow is an error, not a wrap")
{
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("scaled power compares exactly")
{
    // d^{1/5} for d = 32 is exactly 2
    auto p = ScaledPower::power(Rational(1), Rational(32), 1, 5);
    CHECK(p.leq(Rational(2)));
    CHECK(p.geq(Rational(2)));
    CHECK(p.cmp(Rational(2)) == 0);
    CHECK_FALSE(p.leq(Rational(199, 100)));
    CHECK(p.leq(Rational(201, 100)));

    // 3 * 100^{-1/2} = 3/10
    auto q = ScaledPower::power(Rational(3), Rational(100), -1, 2);
    CHECK(q.cmp(Rational(3, 10)) == 0);

    // Delta^{-3/4}/2 at Delta = 16 is 1/16
    auto r = ScaledPower::power(Rational(1, 2), Rational(16), -3, 4);
    CHECK(r.cmp(Rational(1, 16)) == 0);

    // k^7 at k = 2
    auto k7 = ScaledPower::power(Rational(1), Rational(2), 7, 1);
    CHECK(k7.cmp(Rational(128)) == 0);
    CHECK(k7.geq(Rational(128)));
    CHECK_FALSE(k7.geq(Rational(129)));
}

TEST_CASE("scaled power near-miss comparisons stay exact")
{
    // 2^{1/2} vs 665857/470832 (a convergent of sqrt 2, slightly above)
    auto s2 = ScaledPower::power(Rational(1), Rational(2), 1, 2);
    CHECK(s2.leq(Rational(665857, 470832)));
    CHECK_FALSE(s2.geq(Rational(665857, 470832)));
    // and slightly below via the adjacent convergent 275807/195025
    CHECK(s2.geq(Rational(275807, 195025)));
    CHECK_FALSE(s2.leq(Rational(275807, 195025)));
}

TEST_CASE("scaled power degenerate cases")
{
    auto zero_pos = ScaledPower::power(Rational(1), Rational(0), 2, 1);
    CHECK(zero_pos.cmp(Rational(0)) == 0);
    CHECK(zero_pos.leq(Rational(0)));
    auto inf = ScaledPower::power(Rational(1), Rational(0), -2, 1);
    CHECK(inf.infinite());
    CHECK_FALSE(inf.leq(Rational(1'000'000)));
    auto coef0 = ScaledPower::power(Rational(0), Rational(5), 3, 2);
    CHECK(coef0.cmp(Rational(0)) == 0);
}

TEST_CASE("bernoulli draws are exact threshold tests")
{
    // p = 1/2: accept iff draw < 2^63
    auto half = ScaledPower::rational(Rational(1, 2));
    CHECK(half.bernoulli(0));
    CHECK(half.bernoulli((1ULL << 63) - 1));
    CHECK_FALSE(half.bernoulli(1ULL << 63));
    // p >= 1 always accepts
    auto big = ScaledPower::power(Rational(3), Rational(4), -1, 2);  // 3/2
    CHECK(big.bernoulli(UINT64_MAX));
    // p = 0 never accepts
    CHECK_FALSE(ScaledPower::rational(Rational(0)).bernoulli(0));
    // irrational p = 2^{-1/2}: accept iff draw^2 < 2^127, so the cutoff is
    // isqrt(2^127)
    auto is2 = ScaledPower::power(Rational(1), Rational(2), -1, 2);
    auto cut = static_cast<std::uint64_t>(
        boost::multiprecision::sqrt(gf::detail::bigint(1) << 127));
    CHECK(is2.bernoulli(cut - 1));
    CHECK(is2.bernoulli(cut));  // 2^127 is not a perfect square
    CHECK_FALSE(is2.bernoulli(cut + 1));
}

TEST_CASE("log guarantee a >= k/(400 log2 k)")
{
    // k = 256: bound is 256/3200 = 2/25, met with equality
    CHECK(gf::meets_log_guarantee(Rational(2, 25), Rational(256)));
    CHECK_FALSE(gf::meets_log_guarantee(Rational(2, 25) - Rational(1, 1000), Rational(256)));
    CHECK(gf::meets_log_guarantee(Rational(1), Rational(256)));
    // k = 2: bound is 2/400 = 1/200
    CHECK(gf::meets_log_guarantee(Rational(1, 200), Rational(2)));
    CHECK_FALSE(gf::meets_log_guarantee(Rational(1, 201), Rational(2)));
    CHECK_FALSE(gf::meets_log_guarantee(Rational(1), Rational(1)));
    CHECK_FALSE(gf::meets_log_guarantee(Rational(0), Rational(8)));
}
