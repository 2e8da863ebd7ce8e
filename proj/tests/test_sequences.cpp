#include <catch_amalgamated.hpp>

#include "e2pi/richardson.hpp"
#include "e2pi/sequences.hpp"

using namespace e2pi;

namespace {
bool within_k_ulp(const HPReal& a, const HPReal& b, long k) {
    BigRational diff = (a.to_rational() - b.to_rational()).abs();
    BigRational u = a.is_zero() ? b.ulp() : a.ulp();
    return diff <= BigRational(k) * u;
}
}  // namespace

TEST_CASE("bernoulli approximant small values are exact") {
    PrecisionSpec p(128);
    CHECK(term_bernoulli(1, p).to_rational() == BigRational(2L));
    CHECK(term_bernoulli(2, p).to_rational() == BigRational(9L, 4L));
    CHECK_THROWS_AS(term_bernoulli(0, p), UsageError);
}

TEST_CASE("rearranged approximant small values") {
    PrecisionSpec p(128);
    // 8/3 and 1024/405 are not dyadic; the float path must return their
    // correctly rounded renderings
    CHECK(term_rearranged(1, p) == rat_to_hp(BigRational(8L, 3L), p));
    CHECK(term_rearranged(2, p) == rat_to_hp(BigRational(1024L, 405L), p));
    CHECK(term_rearranged_exact(1) == BigRational(8L, 3L));
    CHECK(term_rearranged_exact(2) == BigRational(1024L, 405L));
}

TEST_CASE("rearranged formula computed two ways agrees exactly") {
    // direct half-integer form vs the 2n-substituted form
    for (unsigned long n = 1; n <= 64; ++n) {
        BigRational nn(static_cast<long>(n));
        BigRational half(1L, 2L);
        BigRational direct = (nn / (nn + half)) * (nn / (nn - half)).pow(2 * static_cast<long>(n));
        CHECK(direct == term_rearranged_exact(n));
    }
}

TEST_CASE("normalized times e equals rearranged within 8 ulp") {
    PrecisionSpec p(128);
    HPReal e_ref = constant_to_hp(constant_e(), p);
    for (unsigned long n : {1ul, 2ul, 3ul, 10ul, 100ul, 1000ul}) {
        HPReal lhs = hp_mul(term_normalized(n, p), e_ref, p);
        HPReal rhs = term_rearranged(n, p);
        CHECK(within_k_ulp(lhs, rhs, 8));
    }
}

TEST_CASE("stirling quotient equals normalized within 8 ulp") {
    PrecisionSpec p(128);
    for (unsigned long n : {1ul, 2ul, 3ul, 17ul, 100ul, 1000ul}) {
        HPReal a = term_stirling_quotient(n, p);
        HPReal b = term_normalized(n, p);
        CHECK(within_k_ulp(a, b, 8));
    }
}

TEST_CASE("normalized(1) is (8/3)/e") {
    PrecisionSpec p(128);
    HPReal expected = hp_div(rat_to_hp(BigRational(8L, 3L), p), constant_to_hp(constant_e(), p), p);
    CHECK(within_k_ulp(term_normalized(1, p), expected, 8));
    CHECK(term_normalized(1, p).to_double() == Catch::Approx(0.98101).epsilon(1e-4));
}

TEST_CASE("bernoulli approximant is strictly increasing") {
    // exact comparisons for the small range
    BigRational prev(0L);
    for (unsigned long n = 1; n <= 512; ++n) {
        BigRational cur = BigRational(mpz_class(n) + 1, mpz_class(n)).pow(static_cast<long>(n));
        REQUIRE(cur > prev);
        prev = cur;
    }
    // rendered comparisons further out: term gaps ~1/n^2 dwarf 192-bit ulps
    PrecisionSpec p(192);
    HPReal prev_hp = term_bernoulli(1000, p);
    for (unsigned long n = 1001; n <= 1064; ++n) {
        HPReal cur = term_bernoulli(n, p);
        REQUIRE(cur > prev_hp);
        prev_hp = cur;
    }
}

TEST_CASE("hp and exact paths agree across the threshold") {
    PrecisionSpec p(128);
    for (unsigned long n : {100ul, 1000ul}) {
        HPReal exact_path = term_bernoulli(n, p);
        HPReal hp_path = term_bernoulli(n, p, /*exact_threshold=*/1);
        CHECK(within_k_ulp(exact_path, hp_path, 8));
        CHECK(within_k_ulp(term_rearranged(n, p), term_rearranged(n, p, 1), 8));
    }
}

TEST_CASE("sample_sequence fits order ~1 for the bernoulli family") {
    PrecisionSpec p(128);
    ConvergenceReport rep = sample_sequence(FamilyId::bernoulli, {1000, 2000, 4000}, p);
    REQUIRE(rep.fitted_order.has_value());
    CHECK(*rep.fitted_order == Catch::Approx(1.0).margin(0.05));
    REQUIRE(rep.samples.size() == 3);
    CHECK(rep.samples[0].n == 1000);
}

TEST_CASE("sample_sequence fits order ~1 for the normalized family") {
    PrecisionSpec p(128);
    ConvergenceReport rep = sample_sequence(FamilyId::normalized, {100, 1000, 10000}, p);
    REQUIRE(rep.fitted_order.has_value());
    CHECK(*rep.fitted_order == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("constant sequence reports no order") {
    PrecisionSpec p(128);
    HPReal limit = HPReal::from_long(1, p);
    ConvergenceReport rep = sample_sequence_with(
        "constant", [](unsigned long, PrecisionSpec q) { return HPReal::from_long(1, q); }, limit,
        {10, 20, 40}, p);
    CHECK_FALSE(rep.fitted_order.has_value());
    for (const auto& s : rep.samples)
        CHECK(s.underflowed);
}

TEST_CASE("sample_sequence rejects bad grids") {
    PrecisionSpec p(64);
    CHECK_THROWS_AS(sample_sequence(FamilyId::bernoulli, {}, p), UsageError);
    CHECK_THROWS_AS(sample_sequence(FamilyId::bernoulli, {10, 10}, p), UsageError);
    CHECK_THROWS_AS(sample_sequence(FamilyId::bernoulli, {20, 10}, p), UsageError);
}

TEST_CASE("richardson eliminates a pure 1/n error exactly") {
    PrecisionSpec p(192);
    // s_n = 5 + 3/n at n = 64, 128
    auto make = [&](unsigned long n) {
        return rat_to_hp(BigRational(5L) + BigRational(3L, static_cast<long>(n)), p);
    };
    HPReal out = richardson({{64, make(64)}, {128, make(128)}}, 1, 1);
    BigRational diff = (out.to_rational() - BigRational(5L)).abs();
    CHECK(diff <= BigRational(16L) * out.ulp());
}

TEST_CASE("richardson two-level tableau on synthetic 1/n + 1/n^2 data") {
    PrecisionSpec p(192);
    auto make = [&](unsigned long n) {
        long ln = static_cast<long>(n);
        return rat_to_hp(BigRational(5L) + BigRational(3L, ln) + BigRational(7L, ln * ln), p);
    };
    HPReal out = richardson({{64, make(64)}, {128, make(128)}, {256, make(256)}}, 2, 1);
    BigRational diff = (out.to_rational() - BigRational(5L)).abs();
    CHECK(diff <= BigRational(16L) * out.ulp());  // exact elimination, arithmetic noise only
}

TEST_CASE("richardson validates its grid") {
    PrecisionSpec p(64);
    HPReal v = HPReal::from_long(1, p);
    CHECK_THROWS_AS(richardson({{10, v}, {30, v}}, 1, 1), UsageError);
    CHECK_THROWS_AS(richardson({{10, v}, {20, v}}, 2, 1), UsageError);
    CHECK_THROWS_AS(richardson({{10, v}, {20, v}}, 0, 1), UsageError);
}

TEST_CASE("richardson never worsens the raw error on the bernoulli sequence") {
    PrecisionSpec p(192);
    HPReal e_ref = constant_to_hp(constant_e(), p);
    std::vector<std::pair<unsigned long, HPReal>> samples;
    for (unsigned long n = 512; n <= 4096; n <<= 1)
        samples.emplace_back(n, term_bernoulli(n, p));
    HPReal acc = richardson(samples, 3, 1);
    BigRational acc_err = (acc.to_rational() - e_ref.to_rational()).abs();
    BigRational raw_err = (samples.back().second.to_rational() - e_ref.to_rational()).abs();
    CHECK(acc_err <= raw_err);
}
