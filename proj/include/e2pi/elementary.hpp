// e2pi -- elementary transcendental functions on HPReal.
//
// exp via ln2 reduction + halving + Taylor, ln via atanh series after
// normalizing into [sqrt(1/2), sqrt(2)). Both run at an internal working
// precision of bits + guard and round once at the end, which keeps the final
// result within the 4-ulp contract with a wide margin.

#ifndef E2PI_ELEMENTARY_HPP
#define E2PI_ELEMENTARY_HPP

#include <map>
#include <mutex>

#include "e2pi/hpreal.hpp"

namespace e2pi {

namespace detail {

inline unsigned working_bits(PrecisionSpec p) {
    return p.bits + std::max(p.guard_bits, 32u) + 32;
}

// atanh(1/q) = sum_{k>=0} (1/q)^(2k+1) / (2k+1) for integer q >= 2, summed
// exactly in scaled-integer arithmetic to `bits` fractional bits.
inline HPReal atanh_inv_int(unsigned long q, unsigned bits) {
    unsigned wb = bits + 32;
    mpz_class scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), wb);
    mpz_class q2 = mpz_class(q) * q;
    mpz_class term = scale / q;  // (1/q) * 2^wb, truncated
    mpz_class acc = term;
    unsigned long k = 1;
    while (term != 0) {
        term /= q2;
        acc += term / (2 * k + 1);
        ++k;
    }
    return HPReal::round_from(1, acc, -static_cast<long>(wb), true, PrecisionSpec(bits));
}

// ln 2 = 2 atanh(1/3), cached per precision.
inline HPReal ln2(unsigned bits) {
    static std::map<unsigned, HPReal> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(bits);
    if (it != cache.end())
        return it->second;
    HPReal v = atanh_inv_int(3, bits + 8).ldexp(1).round_to(PrecisionSpec(bits));
    cache.emplace(bits, v);
    return v;
}

}  // namespace detail

// exp(x), within 4 ulp at p.bits.
inline HPReal hp_exp(const HPReal& x, PrecisionSpec p) {
    PrecisionSpec w(detail::working_bits(p));
    if (x.is_zero())
        return HPReal::from_long(1, p);
    HPReal l2 = detail::ln2(w.bits);
    mpz_class m = hp_round_to_integer(hp_div(x, l2, w));
    if (!m.fits_slong_p())
        throw RangeError("hp_exp: exponent overflow");
    long mi = m.get_si();
    // r = x - m*ln2, |r| <= ln2/2 + eps
    HPReal r = hp_sub(x, hp_mul(HPReal::from_integer(m, w), l2, w), w);
    // halve until |r| < 2^-8 so the Taylor series gains >= 8 bits per term
    long halvings = 0;
    if (!r.is_zero()) {
        long mag = r.exponent() + static_cast<long>(bit_length(r.mantissa()));  // ~ceil(log2|r|)
        halvings = std::max(0L, mag + 8);
        r = r.ldexp(-halvings);
    }
    HPReal sum = HPReal::from_long(1, w);
    HPReal term = HPReal::from_long(1, w);
    long cutoff = -static_cast<long>(w.bits) - 8;
    for (unsigned long k = 1; !term.is_zero(); ++k) {
        term = hp_div(hp_mul(term, r, w), HPReal::from_integer(mpz_class(k), w), w);
        if (term.is_zero() || term.exponent() + static_cast<long>(w.bits) < cutoff)
            break;
        sum = hp_add(sum, term, w);
    }
    for (long i = 0; i < halvings; ++i)
        sum = hp_mul(sum, sum, w);
    return sum.ldexp(mi).round_to(p);
}

// ln(x), x > 0, within 4 ulp at p.bits.
inline HPReal hp_ln(const HPReal& x, PrecisionSpec p) {
    if (x.sign() <= 0)
        throw DomainError("hp_ln: argument must be positive");
    PrecisionSpec w(detail::working_bits(p));
    // x = f * 2^E with f in [1, 2)
    long L = static_cast<long>(bit_length(x.mantissa()));
    long E = x.exponent() + L - 1;
    HPReal f = HPReal::round_from(1, x.mantissa(), -(L - 1), false, w);
    // pull f into [sqrt(1/2), sqrt(2)) to keep |y| small
    static const double kSqrt2 = 1.4142135623730951;
    if (f.log2_abs() > 0.5) {
        f = f.ldexp(-1);
        ++E;
    }
    (void)kSqrt2;
    HPReal one = HPReal::from_long(1, w);
    HPReal y = hp_div(hp_sub(f, one, w), hp_add(f, one, w), w);
    // ln f = 2 atanh(y), |y| <= 0.172
    HPReal y2 = hp_mul(y, y, w);
    HPReal term = y;
    HPReal sum = y;
    long cutoff = -static_cast<long>(w.bits) - 8;
    for (unsigned long k = 1; !term.is_zero(); ++k) {
        term = hp_mul(term, y2, w);
        HPReal contrib = hp_div(term, HPReal::from_long(2 * static_cast<long>(k) + 1, w), w);
        if (contrib.is_zero() || contrib.exponent() + static_cast<long>(w.bits) < cutoff)
            break;
        sum = hp_add(sum, contrib, w);
    }
    HPReal lnf = sum.ldexp(1);
    HPReal result = hp_add(lnf, hp_mul(HPReal::from_long(E, w), detail::ln2(w.bits), w), w);
    return result.round_to(p);
}

// a^k for integer k by binary exponentiation, within 4 ulp at p.bits.
inline HPReal hp_pow(const HPReal& a, const mpz_class& k, PrecisionSpec p) {
    if (k == 0)
        return HPReal::from_long(1, p);
    if (k < 0) {
        HPReal inv = hp_pow(a, mpz_class(-k), PrecisionSpec(p.bits, p.guard_bits + 8));
        return hp_div(HPReal::from_long(1, inv.prec()), inv, p);
    }
    if (a.is_zero())
        return HPReal(p);
    unsigned long kb = bit_length(k);
    PrecisionSpec w(p.bits + std::max(p.guard_bits, 32u) + 2 * static_cast<unsigned>(kb) + 8);
    HPReal base = a.round_to(w);
    HPReal acc = HPReal::from_long(1, w);
    for (long i = static_cast<long>(kb) - 1; i >= 0; --i) {
        acc = hp_mul(acc, acc, w);
        if (mpz_tstbit(k.get_mpz_t(), static_cast<unsigned long>(i)))
            acc = hp_mul(acc, base, w);
    }
    return acc.round_to(p);
}

inline HPReal hp_pow(const HPReal& a, long k, PrecisionSpec p) { return hp_pow(a, mpz_class(k), p); }

// a^b for real b (a > 0), via exp(b ln a).
inline HPReal hp_pow(const HPReal& a, const HPReal& b, PrecisionSpec p) {
    if (a.sign() <= 0)
        throw DomainError("hp_pow: base must be positive for real exponents");
    PrecisionSpec w(detail::working_bits(p) + 32);
    return hp_exp(hp_mul(hp_ln(a, w), b, w), p);
}

enum class HpFn { sqrt, exp, ln };

inline HPReal hp_fn(const HPReal& a, HpFn fn) {
    switch (fn) {
        case HpFn::sqrt: return hp_sqrt(a, a.prec());
        case HpFn::exp: return hp_exp(a, a.prec());
        case HpFn::ln: return hp_ln(a, a.prec());
    }
    throw UsageError("hp_fn: bad fn");
}

}  // namespace e2pi

#endif  // E2PI_ELEMENTARY_HPP
