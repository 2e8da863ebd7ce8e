// e2pi -- partial products of the three even/odd index products under
// several evaluation strategies, plus the exact product identities that the
// gamma ratios reduce to.
//
// Binary splitting keeps children unreduced and canonicalizes once at the
// root; the split tree is fixed by (lo, hi) alone, so the parallel variant is
// bit-deterministic for any worker count.

#ifndef E2PI_PRODUCTS_HPP
#define E2PI_PRODUCTS_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <string>
#include <variant>
#include <vector>

#include "e2pi/constants.hpp"
#include "e2pi/gamma.hpp"
#include "e2pi/hpreal.hpp"
#include "e2pi/rational.hpp"

namespace e2pi {

enum class ProductId { wallis, even_over_odd_minus, even_over_odd_plus };

inline const char* product_id_name(ProductId id) {
    switch (id) {
        case ProductId::wallis: return "wallis";
        case ProductId::even_over_odd_minus: return "even-over-odd-minus";
        case ProductId::even_over_odd_plus: return "even-over-odd-plus";
    }
    return "?";
}

// Unreduced numerator/denominator of one factor; the building block shared by
// the naive and binsplit strategies.
struct FactorParts {
    mpz_class num;
    mpz_class den;
};

// Test hook: a nonzero perturbation is added to the chosen factor numerator,
// turning every downstream identity and limit check red. Used by the mutation
// smoke test; never set in normal operation.
struct Perturbation {
    ProductId target = ProductId::wallis;
    long numerator_delta = 0;
};

struct ProductSpec {
    ProductId id;
    Perturbation perturb;  // default: no perturbation

    FactorParts factor_parts(unsigned long j) const {
        FactorParts f;
        switch (id) {
            case ProductId::wallis: {
                mpz_class jj = mpz_class(2 * j) * (2 * j);
                f.num = jj;
                f.den = jj - 1;
                break;
            }
            case ProductId::even_over_odd_minus:
                f.num = 2 * j;
                f.den = 2 * j - 1;
                break;
            case ProductId::even_over_odd_plus:
                f.num = 2 * j;
                f.den = 2 * j + 1;
                break;
        }
        if (perturb.numerator_delta != 0 && perturb.target == id)
            f.num += perturb.numerator_delta;
        return f;
    }

    BigRational factor(unsigned long j) const {
        FactorParts f = factor_parts(j);
        return BigRational(f.num, f.den);
    }

    // Independent factorial closed form of the n-term partial product.
    BigRational closed_form(unsigned long n) const {
        if (n == 0)
            return BigRational(1L);
        mpz_class nf = factorial(n);
        switch (id) {
            case ProductId::wallis: {
                mpz_class n4;
                mpz_pow_ui(n4.get_mpz_t(), nf.get_mpz_t(), 4);
                return BigRational(pow_ui(16, n) * n4, factorial(2 * n) * factorial(2 * n + 1));
            }
            case ProductId::even_over_odd_minus:
                return BigRational(pow_ui(4, n) * nf * nf, factorial(2 * n));
            case ProductId::even_over_odd_plus:
                return BigRational(pow_ui(4, n) * nf * nf, factorial(2 * n + 1));
        }
        throw UsageError("closed_form: bad id");
    }
};

enum class StrategyKind { naive_rational, naive_float, pairwise_float, binsplit_rational, binsplit_parallel };

inline const char* strategy_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::naive_rational: return "naive-rational";
        case StrategyKind::naive_float: return "naive-float";
        case StrategyKind::pairwise_float: return "pairwise-float";
        case StrategyKind::binsplit_rational: return "binsplit-rational";
        case StrategyKind::binsplit_parallel: return "binsplit-parallel";
    }
    return "?";
}

struct EvalStrategy {
    StrategyKind kind = StrategyKind::binsplit_rational;
    unsigned workers = 1;

    bool exact() const {
        return kind == StrategyKind::naive_rational || kind == StrategyKind::binsplit_rational ||
               kind == StrategyKind::binsplit_parallel;
    }
};

namespace detail {

inline FactorParts binsplit_range(const ProductSpec& spec, unsigned long lo, unsigned long hi) {
    if (lo == hi)
        return spec.factor_parts(lo);
    unsigned long mid = lo + (hi - lo) / 2;
    FactorParts a = binsplit_range(spec, lo, mid);
    FactorParts b = binsplit_range(spec, mid + 1, hi);
    return {a.num * b.num, a.den * b.den};
}

// Parallelize the top `depth` levels of the same fixed tree; merge order is
// the tree order, so the product is identical to the serial walk.
inline FactorParts binsplit_range_par(const ProductSpec& spec, unsigned long lo, unsigned long hi,
                                      unsigned depth) {
    if (depth == 0 || lo == hi)
        return binsplit_range(spec, lo, hi);
    unsigned long mid = lo + (hi - lo) / 2;
    auto right = std::async(std::launch::async, [&spec, mid, hi, depth] {
        return binsplit_range_par(spec, mid + 1, hi, depth - 1);
    });
    FactorParts a = binsplit_range_par(spec, lo, mid, depth - 1);
    FactorParts b = right.get();
    return {a.num * b.num, a.den * b.den};
}

inline unsigned parallel_depth(unsigned workers) {
    unsigned d = 0;
    while ((1u << d) < workers)
        ++d;
    return d;
}

}  // namespace detail

// Unreduced partial product over j in [lo, hi]; canonicalization is the
// caller's job (done once at top level).
inline FactorParts binsplit(const ProductSpec& spec, unsigned long lo, unsigned long hi) {
    if (lo < 1 || lo > hi)
        throw UsageError("binsplit: need 1 <= lo <= hi");
    return detail::binsplit_range(spec, lo, hi);
}

inline BigRational partial_product_exact(const ProductSpec& spec, unsigned long n,
                                         const EvalStrategy& strategy = {}) {
    if (n == 0)
        return BigRational(1L);  // empty product
    switch (strategy.kind) {
        case StrategyKind::naive_rational: {
            BigRational acc(1L);
            for (unsigned long j = 1; j <= n; ++j)
                acc *= spec.factor(j);
            return acc;
        }
        case StrategyKind::binsplit_rational: {
            FactorParts f = detail::binsplit_range(spec, 1, n);
            return BigRational(f.num, f.den);
        }
        case StrategyKind::binsplit_parallel: {
            FactorParts f = detail::binsplit_range_par(spec, 1, n,
                                                       detail::parallel_depth(strategy.workers));
            return BigRational(f.num, f.den);
        }
        default:
            throw UsageError("partial_product_exact: strategy is not exact");
    }
}

inline HPReal partial_product_float(const ProductSpec& spec, unsigned long n,
                                    const EvalStrategy& strategy, PrecisionSpec p) {
    PrecisionSpec w(p.bits + PrecisionSpec::default_guard(n == 0 ? 1 : n));
    if (n == 0)
        return HPReal::from_long(1, p);
    switch (strategy.kind) {
        case StrategyKind::naive_float: {
            HPReal acc = HPReal::from_long(1, w);
            for (unsigned long j = 1; j <= n; ++j)
                acc = hp_mul(acc, rat_to_hp(spec.factor(j), w), w);
            return acc.round_to(p);
        }
        case StrategyKind::pairwise_float: {
            std::function<HPReal(unsigned long, unsigned long)> go =
                [&](unsigned long lo, unsigned long hi) -> HPReal {
                if (lo == hi)
                    return rat_to_hp(spec.factor(lo), w);
                unsigned long mid = lo + (hi - lo) / 2;
                return hp_mul(go(lo, mid), go(mid + 1, hi), w);
            };
            return go(1, n).round_to(p);
        }
        default:
            throw UsageError("partial_product_float: strategy is not float");
    }
}

using ProductValue = std::variant<BigRational, HPReal>;

inline ProductValue partial_product(const ProductSpec& spec, unsigned long n,
                                    const EvalStrategy& strategy, PrecisionSpec p) {
    if (strategy.exact())
        return partial_product_exact(spec, n, strategy);
    return partial_product_float(spec, n, strategy, p);
}

// 2 * W_n rendered at p; approaches pi from below.
inline HPReal wallis_pi_estimate(unsigned long n, const EvalStrategy& strategy, PrecisionSpec p,
                                 const Perturbation& perturb = {}) {
    if (n < 1)
        throw UsageError("wallis_pi_estimate: n must be >= 1");
    ProductSpec spec{ProductId::wallis, perturb};
    if (strategy.exact()) {
        BigRational w = partial_product_exact(spec, n, strategy);
        return rat_to_hp(w + w, p);
    }
    return partial_product_float(spec, n, strategy, p).ldexp(1);
}

// Verdict for the exact product identities behind the gamma ratios.
struct IdentityVerdict {
    bool closed_form_matches = false;  // running product == factorial closed form
    bool gamma_ratio_matches = false;  // closed form == gamma-ratio coefficient
    bool pass() const { return closed_form_matches && gamma_ratio_matches; }
};

inline IdentityVerdict identity_product_minus(unsigned long n, const Perturbation& perturb = {}) {
    if (n < 1)
        throw UsageError("identity_product_minus: n must be >= 1");
    ProductSpec spec{ProductId::even_over_odd_minus, perturb};
    BigRational running = partial_product_exact(spec, n, {StrategyKind::naive_rational});
    BigRational closed = spec.closed_form(n);
    IdentityVerdict v;
    v.closed_form_matches = (running == closed);
    v.gamma_ratio_matches = (running == gamma_ratio_np1_over_nph(n).coeff);
    return v;
}

inline IdentityVerdict identity_product_plus(unsigned long n, const Perturbation& perturb = {}) {
    if (n < 1)
        throw UsageError("identity_product_plus: n must be >= 1");
    ProductSpec spec{ProductId::even_over_odd_plus, perturb};
    BigRational two(2L);
    BigRational running = two * partial_product_exact(spec, n, {StrategyKind::naive_rational});
    BigRational closed = two * spec.closed_form(n);
    IdentityVerdict v;
    v.closed_form_matches = (running == closed);
    v.gamma_ratio_matches = (running == gamma_ratio_np1_over_np3h(n).coeff);
    return v;
}

// FNV-1a over the canonical num/den string; stable across platforms.
inline std::uint64_t rational_digest(const BigRational& r) {
    std::string s = r.to_string();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct BenchRecord {
    ProductId spec_id;
    EvalStrategy strategy;
    unsigned long n = 0;
    double wall_time = 0.0;        // median seconds over repeats
    std::uint64_t peak_bytes = 0;  // best-effort
    std::uint64_t result_digest = 0;
    bool ok = true;
    std::string error;
};

std::uint64_t peak_rss_bytes();  // defined below

inline std::vector<BenchRecord> bench_product(const ProductSpec& spec,
                                              const std::vector<unsigned long>& n_list,
                                              const std::vector<EvalStrategy>& strategies,
                                              unsigned repeats, PrecisionSpec p = PrecisionSpec(128)) {
    if (repeats < 1)
        throw UsageError("bench_product: repeats must be >= 1");
    std::vector<BenchRecord> out;
    for (unsigned long n : n_list) {
        for (const EvalStrategy& st : strategies) {
            BenchRecord rec;
            rec.spec_id = spec.id;
            rec.strategy = st;
            rec.n = n;
            try {
                std::vector<double> times;
                for (unsigned r = 0; r < repeats; ++r) {
                    auto t0 = std::chrono::steady_clock::now();
                    ProductValue v = partial_product(spec, n, st, p);
                    auto t1 = std::chrono::steady_clock::now();
                    times.push_back(std::chrono::duration<double>(t1 - t0).count());
                    if (r == 0) {
                        if (std::holds_alternative<BigRational>(v))
                            rec.result_digest = rational_digest(std::get<BigRational>(v));
                        else
                            rec.result_digest = rational_digest(std::get<HPReal>(v).to_rational());
                    }
                }
                std::sort(times.begin(), times.end());
                rec.wall_time = times[times.size() / 2];
                rec.peak_bytes = peak_rss_bytes();
            } catch (const std::exception& e) {
                rec.ok = false;
                rec.error = e.what();
            }
            out.push_back(rec);
        }
    }
    return out;
}

}  // namespace e2pi

#include <sys/resource.h>

namespace e2pi {
inline std::uint64_t peak_rss_bytes() {
    struct rusage ru{};
    if (getrusage(RUSAGE_SELF, &ru) != 0)
        return 0;
    return static_cast<std::uint64_t>(ru.ru_maxrss) * 1024u;
}
}  // namespace e2pi

#endif  // E2PI_PRODUCTS_HPP
