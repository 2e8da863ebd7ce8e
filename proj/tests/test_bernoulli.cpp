#include <catch_amalgamated.hpp>

#include <thread>
#include <vector>

#include "e2pi/bernoulli.hpp"

using namespace e2pi;

namespace {

// Independent oracle: Akiyama-Tanigawa transform. Differs from the library's
// binomial-sum recurrence in both algorithm and code path.
BigRational akiyama_tanigawa_b(unsigned long n) {
    std::vector<BigRational> a;
    for (unsigned long m = 0; m <= n; ++m) {
        a.push_back(BigRational(1L, static_cast<long>(m) + 1));
        for (unsigned long j = m; j >= 1; --j)
            a[j - 1] = BigRational(static_cast<long>(j)) * (a[j - 1] - a[j]);
    }
    return a[0];  // B_n with the B_1 = +1/2 convention; even indices agree
}

}  // namespace

TEST_CASE("textbook anchors") {
    BernoulliTable t = bernoulli_numbers(3);
    CHECK(t.b2k(1) == BigRational(1L, 6L));
    CHECK(t.b2k(2) == BigRational(-1L, 30L));
    CHECK(t.b2k(3) == BigRational(1L, 42L));
    CHECK(bernoulli_numbers(1).values.size() == 1);
    CHECK_THROWS_AS(bernoulli_numbers(0), UsageError);
}

TEST_CASE("B_20 agrees with an independent recurrence") {
    BernoulliTable t = bernoulli_numbers(10);
    CHECK(t.b2k(10) == BigRational(-174611L, 330L));
    CHECK(t.b2k(10) == akiyama_tanigawa_b(20));
}

TEST_CASE("two recurrences agree through B_60") {
    BernoulliTable t = bernoulli_numbers(30);
    for (unsigned long k = 1; k <= 30; ++k)
        CHECK(t.b2k(k) == akiyama_tanigawa_b(2 * k));
}

TEST_CASE("signs alternate as (-1)^(k+1)") {
    BernoulliTable t = bernoulli_numbers(40);
    for (unsigned long k = 1; k <= 40; ++k)
        CHECK(t.b2k(k).sign() == (k % 2 == 1 ? 1 : -1));
}

TEST_CASE("cache is safe under concurrent readers") {
    std::vector<std::thread> threads;
    std::vector<BigRational> results(8);
    for (int i = 0; i < 8; ++i)
        threads.emplace_back([i, &results] { results[i] = bernoulli_numbers(25).b2k(25); });
    for (auto& t : threads)
        t.join();
    for (int i = 1; i < 8; ++i)
        CHECK(results[i] == results[0]);
}
