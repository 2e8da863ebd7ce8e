// e2pi -- even-index Bernoulli numbers as exact rationals.

#ifndef E2PI_BERNOULLI_HPP
#define E2PI_BERNOULLI_HPP

#include <mutex>
#include <vector>

#include "e2pi/rational.hpp"

namespace e2pi {

struct BernoulliTable {
    // entry k-1 holds B_{2k}, k = 1..K
    std::vector<BigRational> values;

    const BigRational& b2k(unsigned long k) const { return values.at(k - 1); }
    unsigned long size() const { return values.size(); }
};

namespace detail {

// Classical recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 with B_1 = -1/2,
// run over all indices; odd entries > 1 vanish but are carried for the sum.
class BernoulliCache {
public:
    static BernoulliCache& instance() {
        static BernoulliCache c;
        return c;
    }

    // B_0 .. B_{2K}, extending the cache if needed. Thread-safe.
    std::vector<BigRational> even_prefix(unsigned long K) {
        std::lock_guard<std::mutex> lock(mtx_);
        extend(2 * K);
        std::vector<BigRational> out;
        out.reserve(K);
        for (unsigned long k = 1; k <= K; ++k)
            out.push_back(all_[2 * k]);
        return out;
    }

private:
    BernoulliCache() { all_ = {BigRational(1L), BigRational(-1L, 2L)}; }

    void extend(unsigned long upto) {
        for (unsigned long m = all_.size(); m <= upto; ++m) {
            BigRational sum(0L);
            mpz_class binom(1);  // C(m+1, 0)
            for (unsigned long j = 0; j < m; ++j) {
                sum += BigRational(binom) * all_[j];
                // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
                binom *= static_cast<unsigned long>(m + 1 - j);
                binom /= static_cast<unsigned long>(j + 1);
            }
            all_.push_back(-sum / BigRational(static_cast<long>(m) + 1));
        }
    }

    std::mutex mtx_;
    std::vector<BigRational> all_;
};

}  // namespace detail

inline BernoulliTable bernoulli_numbers(unsigned long K) {
    if (K < 1)
        throw UsageError("bernoulli_numbers: K must be >= 1");
    return BernoulliTable{detail::BernoulliCache::instance().even_prefix(K)};
}

}  // namespace e2pi

#endif  // E2PI_BERNOULLI_HPP
