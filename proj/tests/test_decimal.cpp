#include <catch_amalgamated.hpp>

#include <random>

#include "e2pi/constants.hpp"
#include "e2pi/decimal.hpp"

using namespace e2pi;

TEST_CASE("simple renderings") {
    PrecisionSpec p(64);
    CHECK(hp_to_decimal(rat_to_hp(BigRational(1L, 2L), p), 3) == "5.00e-1");
    CHECK(hp_to_decimal(HPReal::from_long(-3, p), 2) == "-3.0e0");
    CHECK(hp_to_decimal(HPReal(p), 5) == "0");
    CHECK(hp_to_shortest_decimal(rat_to_hp(BigRational(1L, 2L), p)) == "5e-1");
    CHECK_THROWS_AS(hp_to_decimal(HPReal::from_long(1, p), 0), UsageError);
}

TEST_CASE("parsing accepts the rendered grammar") {
    CHECK(decimal_to_rational("5e-1") == BigRational(1L, 2L));
    CHECK(decimal_to_rational("-2.5e1") == BigRational(-25L));
    CHECK(decimal_to_rational("3.25") == BigRational(13L, 4L));
    CHECK(decimal_to_rational("42") == BigRational(42L));
    CHECK_THROWS_AS(decimal_to_rational("abc"), UsageError);
    CHECK_THROWS_AS(decimal_to_rational("1.2.3"), UsageError);
    CHECK_THROWS_AS(decimal_to_rational("1x"), UsageError);
}

TEST_CASE("shortest rendering round-trips to the identical value") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<long long> num(-(1ll << 50), 1ll << 50);
    std::uniform_int_distribution<long long> den(1, 1ll << 50);
    for (unsigned bits : {64u, 128u, 192u}) {
        PrecisionSpec p(bits);
        for (int i = 0; i < 200; ++i) {
            long n = static_cast<long>(num(rng));
            long d = static_cast<long>(den(rng));
            if (n == 0)
                continue;
            HPReal x = rat_to_hp(BigRational(n, d), p);
            std::string s = hp_to_shortest_decimal(x);
            REQUIRE(decimal_to_hp(s, p) == x);
            // one digit fewer must not round-trip (else it was not shortest)
            std::size_t digits = 0;
            for (char c : s)
                if (std::isdigit(static_cast<unsigned char>(c)))
                    ++digits;
            std::size_t epos = s.find('e');
            std::size_t mantissa_digits = 0;
            for (std::size_t j = 0; j < (epos == std::string::npos ? s.size() : epos); ++j)
                if (std::isdigit(static_cast<unsigned char>(s[j])))
                    ++mantissa_digits;
            if (mantissa_digits > 1)
                REQUIRE(decimal_to_hp(hp_to_decimal(x, mantissa_digits - 1), p) != x);
        }
    }
}

TEST_CASE("fixed-digit rendering is correctly rounded") {
    PrecisionSpec p(128);
    // 2/3 = 0.6666... -> 6.667e-1 at 4 digits
    CHECK(hp_to_decimal(rat_to_hp(BigRational(2L, 3L), p), 4) == "6.667e-1");
    // decimal ties like 0.995 depend on which side the binary rounding of the
    // input landed, so stick to clear-cut cases
    CHECK(hp_to_decimal(rat_to_hp(BigRational(497L, 500L), p), 2) == "9.9e-1");
    CHECK(hp_to_decimal(rat_to_hp(BigRational(999L, 1000L), p), 2) == "1.0e0");
}

TEST_CASE("e digits render from the constant") {
    HPReal h = constant_to_hp(constant_e(), PrecisionSpec(256));
    CHECK(hp_to_decimal(h, 30).substr(0, 12) == "2.7182818284");
}
