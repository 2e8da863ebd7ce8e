// e2pi -- precision-tracked binary floating point on GMP integers.
//
// An HPReal is sign * mantissa * 2^exponent with the mantissa normalized to
// exactly `precision.bits` bits. Every core operation (add/sub/mul/div/sqrt)
// is correctly rounded to nearest-even, which is stronger than the 1-ulp
// contract the rest of the library relies on. exp/ln/pow live in
// elementary.hpp and meet a 4-ulp contract via internal guard bits.

#ifndef E2PI_HPREAL_HPP
#define E2PI_HPREAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "e2pi/rational.hpp"

namespace e2pi {

struct PrecisionSpec {
    unsigned bits;
    unsigned guard_bits;

    explicit PrecisionSpec(unsigned b, unsigned g = 0) : bits(b), guard_bits(g) {
        if (b < 16)
            throw UsageError("PrecisionSpec: bits must be >= 16");
    }

    unsigned effective() const { return bits + guard_bits; }

    // Default guard policy for a computation combining up to `terms` rounded
    // operations: 32 bits plus one bit per doubling of the term count.
    static unsigned default_guard(unsigned long terms) {
        unsigned g = 32;
        unsigned long t = 1;
        while (t < terms) {
            t <<= 1;
            ++g;
        }
        return g;
    }

    PrecisionSpec working() const { return PrecisionSpec(bits + guard_bits, 0); }

    friend bool operator==(const PrecisionSpec& a, const PrecisionSpec& b) {
        return a.bits == b.bits && a.guard_bits == b.guard_bits;
    }
};

inline unsigned long bit_length(const mpz_class& m) {
    return m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2);
}

class HPReal {
public:
    explicit HPReal(PrecisionSpec p = PrecisionSpec(64)) : sign_(0), man_(0), exp_(0), prec_(p) {}

    // Exact small-integer constructor, rounded if the integer needs more bits.
    static HPReal from_integer(const mpz_class& n, PrecisionSpec p) {
        if (n == 0)
            return HPReal(p);
        return round_from(sgn(n), ::abs(n), 0, false, p);
    }
    static HPReal from_long(long n, PrecisionSpec p) { return from_integer(mpz_class(n), p); }

    int sign() const { return sign_; }
    const mpz_class& mantissa() const { return man_; }
    long exponent() const { return exp_; }
    const PrecisionSpec& prec() const { return prec_; }
    bool is_zero() const { return sign_ == 0; }

    // Exact conversion; an HPReal is always a dyadic rational.
    BigRational to_rational() const {
        if (sign_ == 0)
            return BigRational(0L);
        mpz_class n = man_ * sign_;
        if (exp_ >= 0) {
            mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(exp_));
            return BigRational(n);
        }
        mpz_class d(1);
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-exp_));
        return BigRational(n, d);
    }

    // One unit in the last place: 2^exponent (the weight of the mantissa lsb).
    BigRational ulp() const {
        if (sign_ == 0)
            return BigRational(0L);
        mpz_class one(1);
        if (exp_ >= 0) {
            mpz_class u;
            mpz_mul_2exp(u.get_mpz_t(), one.get_mpz_t(), static_cast<unsigned long>(exp_));
            return BigRational(u);
        }
        mpz_class d;
        mpz_mul_2exp(d.get_mpz_t(), one.get_mpz_t(), static_cast<unsigned long>(-exp_));
        return BigRational(one, d);
    }

    // Approximate base-2 log of |value|, good to ~1e-15; used for order fits
    // and digit estimates, never for the arithmetic contracts.
    double log2_abs() const {
        if (sign_ == 0)
            throw DomainError("log2_abs of zero");
        unsigned long L = bit_length(man_);
        mpz_class top = man_;
        if (L > 64)
            mpz_tdiv_q_2exp(top.get_mpz_t(), top.get_mpz_t(), L - 64);
        double frac = std::log2(top.get_d()) - static_cast<double>(L > 64 ? 64 : L);
        return static_cast<double>(exp_) + static_cast<double>(L) + frac;
    }

    double to_double() const {
        if (sign_ == 0)
            return 0.0;
        double l2 = log2_abs();
        return sign_ * std::exp2(l2);
    }

    friend bool operator==(const HPReal& a, const HPReal& b) {
        return a.sign_ == b.sign_ && a.exp_ == b.exp_ && a.man_ == b.man_;
    }
    friend bool operator!=(const HPReal& a, const HPReal& b) { return !(a == b); }

    // Exact value comparison (independent of precision).
    static int cmp(const HPReal& a, const HPReal& b) {
        if (a.sign_ != b.sign_)
            return a.sign_ < b.sign_ ? -1 : 1;
        if (a.sign_ == 0)
            return 0;
        int c = cmp_mag(a, b);
        return a.sign_ > 0 ? c : -c;
    }
    friend bool operator<(const HPReal& a, const HPReal& b) { return cmp(a, b) < 0; }
    friend bool operator>(const HPReal& a, const HPReal& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const HPReal& a, const HPReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const HPReal& a, const HPReal& b) { return cmp(a, b) >= 0; }

    HPReal negate() const {
        HPReal r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    HPReal abs() const {
        HPReal r = *this;
        if (r.sign_ < 0)
            r.sign_ = 1;
        return r;
    }

    // Exact scaling by 2^k.
    HPReal ldexp(long k) const {
        HPReal r = *this;
        if (r.sign_ != 0)
            r.exp_ += k;
        return r;
    }

    // Round-to-nearest-even of sign * mag * 2^exp2 at p.bits. `sticky` marks
    // nonzero discarded weight strictly below 2^exp2; when set, mag must carry
    // at least p.bits + 1 significant bits so the sticky sits below the round
    // bit.
    static HPReal round_from(int sign, mpz_class mag, long exp2, bool sticky, PrecisionSpec p) {
        HPReal r(p);
        if (mag == 0) {
            if (sticky)
                throw UsageError("round_from: sticky with zero magnitude");
            return r;
        }
        unsigned long L = bit_length(mag);
        long shift = static_cast<long>(L) - static_cast<long>(p.bits);
        if (shift <= 0) {
            mpz_mul_2exp(mag.get_mpz_t(), mag.get_mpz_t(), static_cast<unsigned long>(-shift));
            r.sign_ = sign;
            r.man_ = mag;
            r.exp_ = exp2 + shift;
            return r;
        }
        unsigned long s = static_cast<unsigned long>(shift);
        bool round_bit = mpz_tstbit(mag.get_mpz_t(), s - 1) != 0;
        bool low_sticky = sticky;
        if (!low_sticky && s >= 2) {
            mpz_class low;
            mpz_fdiv_r_2exp(low.get_mpz_t(), mag.get_mpz_t(), s - 1);
            low_sticky = (low != 0);
        }
        mpz_class q;
        mpz_fdiv_q_2exp(q.get_mpz_t(), mag.get_mpz_t(), s);
        if (round_bit && (low_sticky || mpz_odd_p(q.get_mpz_t())))
            q += 1;
        if (bit_length(q) > p.bits) {  // carry out of the top bit
            mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), 1);
            ++shift;
        }
        r.sign_ = sign;
        r.man_ = q;
        r.exp_ = exp2 + shift;
        return r;
    }

    // Re-round an existing value to a new precision.
    HPReal round_to(PrecisionSpec p) const {
        if (sign_ == 0)
            return HPReal(p);
        return round_from(sign_, man_, exp_, false, p);
    }

private:
    static int cmp_mag(const HPReal& a, const HPReal& b) {
        long ta = a.exp_ + static_cast<long>(bit_length(a.man_));
        long tb = b.exp_ + static_cast<long>(bit_length(b.man_));
        if (ta != tb)
            return ta < tb ? -1 : 1;
        // Same top-bit weight: align lsbs and compare.
        mpz_class ma = a.man_, mb = b.man_;
        if (a.exp_ > b.exp_)
            mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<unsigned long>(a.exp_ - b.exp_));
        else if (b.exp_ > a.exp_)
            mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<unsigned long>(b.exp_ - a.exp_));
        return ::cmp(ma, mb);
    }

    int sign_;
    mpz_class man_;
    long exp_;
    PrecisionSpec prec_;
};

namespace detail {
inline PrecisionSpec result_prec(const HPReal& a, const HPReal& b) {
    return PrecisionSpec(std::max(a.prec().bits, b.prec().bits),
                         std::max(a.prec().guard_bits, b.prec().guard_bits));
}
}  // namespace detail

// ---- core arithmetic, correctly rounded --------------------------------

inline HPReal hp_add(const HPReal& a, const HPReal& b, PrecisionSpec p) {
    if (a.is_zero())
        return b.round_to(p);
    if (b.is_zero())
        return a.round_to(p);
    const HPReal* hi = &a;
    const HPReal* lo = &b;
    if (hi->exponent() < lo->exponent())
        std::swap(hi, lo);
    unsigned long gap = static_cast<unsigned long>(hi->exponent() - lo->exponent());
    // Far below the rounding point the small operand cannot move the result.
    unsigned long cap = p.bits + std::max(hi->prec().bits, lo->prec().bits) + 64;
    if (gap > cap) {
        HPReal r = hi->round_to(p);
        return r;
    }
    mpz_class mh = hi->mantissa();
    mpz_mul_2exp(mh.get_mpz_t(), mh.get_mpz_t(), gap);
    mpz_class sum = mh * hi->sign() + lo->mantissa() * lo->sign();
    if (sum == 0)
        return HPReal(p);
    return HPReal::round_from(sgn(sum), ::abs(sum), lo->exponent(), false, p);
}

inline HPReal hp_sub(const HPReal& a, const HPReal& b, PrecisionSpec p) {
    return hp_add(a, b.negate(), p);
}

inline HPReal hp_mul(const HPReal& a, const HPReal& b, PrecisionSpec p) {
    if (a.is_zero() || b.is_zero())
        return HPReal(p);
    mpz_class m = a.mantissa() * b.mantissa();
    return HPReal::round_from(a.sign() * b.sign(), m, a.exponent() + b.exponent(), false, p);
}

inline HPReal hp_div(const HPReal& a, const HPReal& b, PrecisionSpec p) {
    if (b.is_zero())
        throw DomainError("hp_div: division by zero");
    if (a.is_zero())
        return HPReal(p);
    unsigned long extra = p.bits + 3;
    mpz_class num = a.mantissa();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), extra);
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
    long e = a.exponent() - b.exponent() - static_cast<long>(extra);
    return HPReal::round_from(a.sign() * b.sign(), q, e, rem != 0, p);
}

inline HPReal hp_sqrt(const HPReal& a, PrecisionSpec p) {
    if (a.sign() < 0)
        throw DomainError("hp_sqrt: negative argument");
    if (a.is_zero())
        return HPReal(p);
    unsigned long L = bit_length(a.mantissa());
    long target = 2L * (static_cast<long>(p.bits) + 2);
    long shift = std::max(0L, target - static_cast<long>(L));
    if ((a.exponent() - shift) % 2 != 0)
        ++shift;
    mpz_class m = a.mantissa();
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(shift));
    mpz_class root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
    long e = (a.exponent() - shift) / 2;
    return HPReal::round_from(1, root, e, rem != 0, p);
}

inline HPReal hp_add(const HPReal& a, const HPReal& b) { return hp_add(a, b, detail::result_prec(a, b)); }
inline HPReal hp_sub(const HPReal& a, const HPReal& b) { return hp_sub(a, b, detail::result_prec(a, b)); }
inline HPReal hp_mul(const HPReal& a, const HPReal& b) { return hp_mul(a, b, detail::result_prec(a, b)); }
inline HPReal hp_div(const HPReal& a, const HPReal& b) { return hp_div(a, b, detail::result_prec(a, b)); }
inline HPReal hp_sqrt(const HPReal& a) { return hp_sqrt(a, a.prec()); }

enum class HpOp { add, sub, mul, div };

inline HPReal hp_arith(const HPReal& a, const HPReal& b, HpOp op) {
    switch (op) {
        case HpOp::add: return hp_add(a, b);
        case HpOp::sub: return hp_sub(a, b);
        case HpOp::mul: return hp_mul(a, b);
        case HpOp::div: return hp_div(a, b);
    }
    throw UsageError("hp_arith: bad op");
}

// Correctly rounded conversion from an exact rational.
inline HPReal rat_to_hp(const BigRational& a, PrecisionSpec p) {
    if (a.is_zero())
        return HPReal(p);
    const mpz_class n = ::abs(a.num());
    const mpz_class& d = a.den();
    long bl_gap = static_cast<long>(bit_length(n)) - static_cast<long>(bit_length(d));
    long k = static_cast<long>(p.bits) + 3 - bl_gap;
    mpz_class num = n, den = d;
    if (k >= 0)
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k));
    else
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-k));
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return HPReal::round_from(a.sign(), q, -k, rem != 0, p);
}

// Nearest integer to an HPReal (ties to even).
inline mpz_class hp_round_to_integer(const HPReal& a) {
    if (a.is_zero())
        return mpz_class(0);
    mpz_class m = a.mantissa();
    long e = a.exponent();
    if (e >= 0) {
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(e));
        return m * a.sign();
    }
    unsigned long s = static_cast<unsigned long>(-e);
    if (s >= bit_length(m) + 1)
        return mpz_class(0);
    bool round_bit = mpz_tstbit(m.get_mpz_t(), s - 1) != 0;
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), m.get_mpz_t(), s - 1);
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), s);
    if (round_bit && (low != 0 || mpz_odd_p(q.get_mpz_t())))
        q += 1;
    return q * a.sign();
}

}  // namespace e2pi

#endif  // E2PI_HPREAL_HPP
